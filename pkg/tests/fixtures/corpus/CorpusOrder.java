public class CorpusOrder {
    static int observe(int value) {
        return value + 1;
    }

    static int swapCallAndDecl(int x) {
        observe(x);
        int n = 0;
        return n + x;
    }

    static int swapPureDecls(int a, int b) {
        int first = a + 1;
        int second = b + 2;
        return first * second;
    }

    static int blockedByDependency(int a) {
        int base = a + 1;
        int derived = base * 2;
        return derived;
    }

    static int blockedBothImpure(int a, int b) {
        int left = observe(a);
        int right = observe(b);
        return left + right;
    }

    static int guardedDivision(int a, int b) {
        int divisor = Math.max(Math.abs(b % 9), 1);
        int quotient = a / divisor;
        int offset = 3;
        return quotient + offset;
    }

    static int mixedPipeline(int a, int b, String s) {
        int scaled = 0;
        observe(a);
        int floor2 = Math.min(a, b);
        if (s != null) {
            scaled = s.length();
        } else {
            scaled = floor2;
        }
        for (int i = 0; i < Math.abs(a % 6); i = i + 1) {
            scaled = scaled + 1;
        }
        int flag2 = scaled > 10 ? 1 : 0;
        return flag2 + floor2;
    }
}
