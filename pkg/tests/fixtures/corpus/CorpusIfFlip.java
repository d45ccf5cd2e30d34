public class CorpusIfFlip {
    static int absValue(int x) {
        if (x < 0) {
            return -x;
        } else {
            return x;
        }
    }

    static int signOf(int x) {
        int result = 0;
        if (x > 0) {
            result = 1;
        } else {
            result = -1;
        }
        return result;
    }

    static String describeFlag(boolean flag, String label) {
        String text = "";
        if (flag) {
            text = "on";
        } else {
            if (label == null) {
                text = "off";
            } else {
                text = label;
            }
        }
        return text;
    }

    static int nestedBranches(int a, int b) {
        int total = 0;
        if (a > b) {
            if (a > 0) {
                total = a;
            } else {
                total = b;
            }
        } else {
            total = b - a;
        }
        return total;
    }

    static int negatedGuard(int x) {
        int y = 0;
        if (!(x > 10)) {
            y = x + 1;
        } else {
            y = x - 1;
        }
        return y;
    }

    static String nullOrSelf(String s) {
        if (s == null) {
            return "";
        } else {
            return s;
        }
    }
}
