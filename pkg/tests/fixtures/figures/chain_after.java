public class ChainScene {
    static void compareClass(Object value, Object other) {
        Class value_class = value.getClass();
        value_class.equals(other);
    }
}
