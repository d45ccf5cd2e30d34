public class OrderScene {
    static void tidy() {
        funcA();
        int n = 0;
    }

    static void funcA() {
    }
}
