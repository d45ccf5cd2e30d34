public class CorpusCond {
    static int pickLarger(int a, int b) {
        int larger = a > b ? a : b;
        return larger;
    }

    static int ternaryReassign(int x) {
        int y = 0;
        y = x > 0 ? x : -x;
        return y;
    }

    static String bucketOf(int k) {
        String bucket = "";
        int key = Math.abs(k % 4);
        switch (key) {
            case 0:
                bucket = "zero";
                break;
            case 1:
            case 2:
                bucket = "small";
                break;
            default:
                bucket = "large";
        }
        return bucket;
    }

    static int chainDispatch(int code) {
        int weight = 0;
        if (code == 1) {
            weight = 10;
        } else if (code == 2) {
            weight = 20;
        } else {
            weight = 5;
        }
        return weight;
    }

    static String stringSwitch(String tag) {
        String kind = "";
        switch (tag) {
            case "a":
                kind = "alpha";
                break;
            case "b":
                kind = "beta";
                break;
            default:
                kind = "other";
        }
        return kind;
    }

    static int fallThroughCounter(int k) {
        int hits = 0;
        int key = Math.abs(k % 3);
        switch (key) {
            case 0:
                hits = hits + 1;
            case 1:
                hits = hits + 1;
                break;
            default:
                hits = 7;
        }
        return hits;
    }

    static int switchNoDefault(int k) {
        int key = Math.abs(k % 5);
        int out = -1;
        switch (key) {
            case 0:
                out = 100;
                break;
            case 3:
                out = 300;
                break;
        }
        return out;
    }
}
