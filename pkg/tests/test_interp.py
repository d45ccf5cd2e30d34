import pytest

from vmorph.errors import UnsupportedForEvaluation
from vmorph.interp import (
    EQUIVALENT,
    DIVERGED,
    OutOfFuel,
    Returned,
    Threw,
    VOID,
    check_equivalence,
    ensure_supported,
    evaluate,
    generate_args,
    is_supported,
)
from vmorph.parser import parse


def method_named(src, name):
    ast = parse(src)
    for m in ast.types[0].methods:
        if m.name == name:
            return m, ast
    raise AssertionError(name)


SRC = """class Probe {
    static int absValue(int x) {
        if (x < 0) {
            return -x;
        }
        return x;
    }

    static int divide(int x) {
        return 1 / x;
    }

    static int modulo(int x) {
        return 7 % x;
    }

    static void spin() {
        while (true) {
        }
    }

    static int callHelper(int x) {
        return absValue(x) + 1;
    }

    static int lengthOf(String s) {
        return s.length();
    }

    static boolean sameText(String a, String b) {
        return a.equals(b);
    }

    static int wrapAround(int x) {
        return x + 1;
    }

    static String voidLike(int x) {
        return "" + x + true;
    }
}"""


def test_abs_example():
    m, ast = method_named(SRC, "absValue")
    assert evaluate(m, [-3]) == Returned(3)


def test_division_by_zero():
    m, ast = method_named(SRC, "divide")
    assert evaluate(m, [0]) == Threw("ArithmeticException")
    assert evaluate(m, [2]) == Returned(0)


def test_modulo_by_zero_and_sign():
    m, ast = method_named(SRC, "modulo")
    assert evaluate(m, [0]) == Threw("ArithmeticException")
    assert evaluate(m, [-2]) == Returned(1)  # Java: 7 % -2 == 1


def test_fuel_exhaustion():
    m, ast = method_named(SRC, "spin")
    assert evaluate(m, [], fuel=1000) == OutOfFuel()


def test_same_file_static_call():
    m, ast = method_named(SRC, "callHelper")
    assert evaluate(m, [-5], context=ast) == Returned(6)


def test_null_receiver_throws():
    m, ast = method_named(SRC, "lengthOf")
    assert evaluate(m, [None]) == Threw("NullPointerException")
    assert evaluate(m, ["abc"]) == Returned(3)


def test_string_equality_builtin():
    m, ast = method_named(SRC, "sameText")
    assert evaluate(m, ["a", "a"]) == Returned(True)
    assert evaluate(m, ["a", "b"]) == Returned(False)
    assert evaluate(m, ["a", None]) == Returned(False)


def test_int_wraps_at_32_bits():
    m, ast = method_named(SRC, "wrapAround")
    assert evaluate(m, [2**31 - 1]) == Returned(-(2**31))


def test_string_concatenation_conversions():
    m, ast = method_named(SRC, "voidLike")
    assert evaluate(m, [7]) == Returned("7true")


def test_void_return():
    m, ast = method_named("class A { static void noop(int x) { x = x + 1; } }", "noop")
    out = evaluate(m, [1])
    assert isinstance(out, Returned) and out.value is VOID


@pytest.mark.parametrize(
    "src, reason",
    [
        ("class A { static void f() { throw x; } }", "throw"),
        ("class A { static void f() { x = new Foo(); } }", "allocation"),
        ("class A { static int f(Path p) { return 1; } }", "parameter"),
        ("class A { static int f() { return other.thing; } }", "field"),
        ("class A { static int f() { return missing(); } }", "unresolved"),
        ("class A { static int f(String s) { return s.trim().length(); } }", "trim"),
    ],
)
def test_unsupported_methods_detected(src, reason):
    ast = parse(src)
    m = ast.types[0].methods[0]
    assert not is_supported(m, ast)
    with pytest.raises(UnsupportedForEvaluation) as exc:
        ensure_supported(m, ast)
    assert reason in str(exc.value)


def test_supported_methods_pass_scan(corpus_files):
    for name, ast in corpus_files.items():
        for m in ast.types[0].methods:
            ensure_supported(m, ast)


def test_switch_fall_through_execution():
    src = """class A {
        static int f(int k) {
            int hits = 0;
            switch (k) {
                case 0:
                    hits = hits + 1;
                case 1:
                    hits = hits + 10;
                    break;
                default:
                    hits = 100;
            }
            return hits;
        }
    }"""
    m, ast = method_named(src, "f")
    assert evaluate(m, [0]) == Returned(11)  # falls through into case 1
    assert evaluate(m, [1]) == Returned(10)
    assert evaluate(m, [5]) == Returned(100)


def test_check_equivalence_reflexive(corpus_files):
    ast = corpus_files["CorpusIfFlip.java"]
    for m in ast.types[0].methods:
        verdict = check_equivalence(m, m, trials=50, seed=9, context1=ast, context2=ast)
        assert verdict.verdict == EQUIVALENT


def test_check_equivalence_detects_divergence():
    src = """class A {
        static int f(int x) { int a = 1; int b = a + 1; return b; }
        static int g(int x) { int a = 1; int b = a + 2; return b; }
    }"""
    ast = parse(src)
    f, g = ast.types[0].methods
    verdict = check_equivalence(f, g, trials=20, seed=1, context1=ast, context2=ast)
    assert verdict.verdict == DIVERGED
    assert verdict.counterexample is not None
    # Soundness: the counterexample replays to unequal outcomes.
    args = list(verdict.counterexample.args)
    assert evaluate(f, args, context=ast) != evaluate(g, args, context=ast)


def test_check_equivalence_deterministic(corpus_files):
    ast = corpus_files["CorpusLoops.java"]
    m = ast.types[0].methods[0]
    a = check_equivalence(m, m, trials=40, seed=77, context1=ast, context2=ast)
    b = check_equivalence(m, m, trials=40, seed=77, context1=ast, context2=ast)
    assert a == b


def test_fuel_makes_trial_inconclusive():
    src = """class A {
        static int f(int x) {
            int i = 0;
            while (i < 1000000) { i = i + 1; }
            return i;
        }
    }"""
    ast = parse(src)
    m = ast.types[0].methods[0]
    verdict = check_equivalence(m, m, trials=3, seed=0, fuel=100, context1=ast, context2=ast)
    assert verdict.verdict == "inconclusive"


def test_generate_args_deterministic():
    src = "class A { static int f(int a, boolean b, String s) { return a; } }"
    m = parse(src).types[0].methods[0]
    assert generate_args(m.params, 5, 3) == generate_args(m.params, 5, 3)
    assert generate_args(m.params, 5, 3) != generate_args(m.params, 5, 4)


def test_arity_mismatch_rejected():
    src = "class A { static int f(int a) { return a; } static int g(int a, int b) { return a; } }"
    ast = parse(src)
    f, g = ast.types[0].methods
    with pytest.raises(UnsupportedForEvaluation):
        check_equivalence(f, g, trials=5, seed=0, context1=ast, context2=ast)
