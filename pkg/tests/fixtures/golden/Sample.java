public class Sample {
    static int clampPositive(int value, int ceiling) {
        if (value < 0) {
            return 0;
        }
        int bounded = value;
        if (bounded > ceiling) {
            bounded = ceiling;
        }
        return bounded;
    }
}
