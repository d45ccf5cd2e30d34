public class CorpusLoops {
    static int sumBelow(int n) {
        int limit = Math.min(Math.abs(n % 50), 40);
        int total = 0;
        for (int i = 0; i < limit; i = i + 1) {
            total = total + i;
        }
        return total;
    }

    static int countDown(int n) {
        int remaining = Math.abs(n % 30);
        int steps = 0;
        while (remaining > 0) {
            remaining = remaining - 1;
            steps = steps + 1;
        }
        return steps;
    }

    static int forWithoutInit(int n) {
        int i = 0;
        int acc = 0;
        int cap = Math.abs(n % 20);
        for (; i < cap; i = i + 1) {
            acc = acc + 2;
        }
        return acc;
    }

    static int forWithoutUpdate(int n) {
        int acc = 0;
        int cap = Math.abs(n % 16);
        for (int i = 0; i < cap; ) {
            i = i + 2;
            acc = acc + i;
        }
        return acc;
    }

    static int loopWithBreak(int n) {
        int i = 0;
        int cap = Math.abs(n % 25);
        while (true) {
            if (i >= cap) {
                break;
            }
            i = i + 1;
        }
        return i;
    }

    static int loopWithContinue(int n) {
        int total = 0;
        int cap = Math.abs(n % 20);
        for (int i = 0; i < cap; i = i + 1) {
            if (i % 2 == 0) {
                continue;
            }
            total = total + i;
        }
        return total;
    }

    static int nestedLoops(int a, int b) {
        int rows = Math.abs(a % 8);
        int cols = Math.abs(b % 8);
        int cells = 0;
        for (int r = 0; r < rows; r = r + 1) {
            for (int c = 0; c < cols; c = c + 1) {
                cells = cells + 1;
            }
        }
        return cells;
    }
}
