public class ChainScene {
    static void compareClass(Object value, Object other) {
        value.getClass().equals(other);
    }
}
