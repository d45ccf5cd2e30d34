public class CorpusChains {
    static int paddedLength(String s) {
        if (s == null) {
            return -1;
        }
        int padded = s.concat("ab").length();
        return padded;
    }

    static boolean slashPrefix(String s) {
        if (s == null) {
            return false;
        }
        boolean hit = s.concat("/").startsWith("a");
        return hit;
    }

    static String doubleSuffix(String s) {
        if (s == null) {
            return "";
        }
        String doubled = s.concat("x").concat("y");
        return doubled;
    }

    static int headLength(String s) {
        if (s == null || s.length() < 2) {
            return 0;
        }
        int head = s.substring(0, 2).length();
        return head;
    }

    static String mergeCandidate(String s) {
        if (s == null) {
            return "";
        }
        String marked = s.concat("!");
        String result = marked.concat("?");
        return result;
    }

    static boolean chainedCompare(String left, String right) {
        if (left == null || right == null) {
            return false;
        }
        boolean same = left.concat(".").equals(right.concat("."));
        return same;
    }
}
