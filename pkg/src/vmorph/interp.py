"""Deterministic interpreter and differential equivalence checker.

A desk-scale stand-in for running a project's test suite: evaluate a method
on concrete arguments under 32-bit Java integer semantics, then compare the
original and transformed methods over seeded random inputs.

Supported values are 32-bit ints, booleans, strings, and null. Calls are
limited to a small builtin set (string length/substring/startsWith/equals/
concat, Math.min/max/abs) plus static methods defined in the same file.
Anything else raises UnsupportedForEvaluation, as do runtime conditions the
outcome model cannot express (string index errors, type confusions). The
outcome model knows exactly ArithmeticException and NullPointerException.
"""

from __future__ import annotations

import random
import sys
from dataclasses import dataclass
from typing import Optional, Union

from .errors import UnsupportedForEvaluation
from .nodes import (
    Assign,
    Binary,
    Block,
    Break,
    Call,
    Continue,
    DEFAULT_LABEL,
    Expr,
    ExprStmt,
    FieldAccess,
    For,
    If,
    Literal,
    LocalVarDecl,
    MethodDecl,
    Name,
    New,
    Return,
    SourceFile,
    Stmt,
    Switch,
    Ternary,
    Throw,
    Unary,
    While,
    walk,
)

INT_MIN = -(2**31)
INT_MAX = 2**31 - 1

DEFAULT_FUEL = 10_000
MAX_CALL_DEPTH = 200

STRING_BUILTINS = frozenset({"length", "substring", "startsWith", "equals", "concat"})
MATH_BUILTINS = frozenset({"min", "max", "abs"})
SUPPORTED_PARAM_TYPES = frozenset({"int", "boolean", "String"})

ARITHMETIC = "ArithmeticException"
NULL_POINTER = "NullPointerException"


class _Void:
    def __repr__(self):
        return "void"


VOID = _Void()

Value = Union[int, bool, str, None]


@dataclass(frozen=True)
class Returned:
    value: object  # Value or VOID


@dataclass(frozen=True)
class Threw:
    kind: str  # ArithmeticException | NullPointerException


@dataclass(frozen=True)
class OutOfFuel:
    pass


Outcome = Union[Returned, Threw, OutOfFuel]


def outcome_to_json(outcome: Outcome) -> dict:
    if isinstance(outcome, Returned):
        value = "void" if outcome.value is VOID else outcome.value
        return {"returned": value}
    if isinstance(outcome, Threw):
        return {"threw": outcome.kind}
    return {"out_of_fuel": True}


@dataclass(frozen=True)
class Counterexample:
    args: tuple
    outcome1: Outcome
    outcome2: Outcome

    def to_json_dict(self) -> dict:
        return {
            "args": list(self.args),
            "outcome1": outcome_to_json(self.outcome1),
            "outcome2": outcome_to_json(self.outcome2),
        }


EQUIVALENT = "equivalent"
DIVERGED = "diverged"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class EquivalenceVerdict:
    verdict: str
    trials: int
    counterexample: Optional[Counterexample] = None

    def to_json_dict(self) -> dict:
        out: dict = {"verdict": self.verdict, "trials": self.trials}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample.to_json_dict()
        return out


# ---------------------------------------------------------------------------
# Static support scan
# ---------------------------------------------------------------------------


def ensure_supported(m: MethodDecl, context: SourceFile | None = None) -> None:
    """Raise UnsupportedForEvaluation unless the method is oracle-evaluable."""
    _ensure_supported(m, context, set())


def is_supported(m: MethodDecl, context: SourceFile | None = None) -> bool:
    try:
        ensure_supported(m, context)
        return True
    except UnsupportedForEvaluation:
        return False


def _file_methods(context: SourceFile | None) -> dict[str, MethodDecl]:
    methods: dict[str, MethodDecl] = {}
    if context is not None:
        for cls in context.types:
            for method in cls.methods:
                if not method.is_constructor():
                    methods.setdefault(method.name, method)
    return methods


def _class_names(context: SourceFile | None) -> set[str]:
    return {cls.name for cls in context.types} if context is not None else set()


def _ensure_supported(m: MethodDecl, context: SourceFile | None, seen: set[str]) -> None:
    if m.name in seen:
        return
    seen.add(m.name)
    for p in m.params:
        if p.type_name not in SUPPORTED_PARAM_TYPES:
            raise UnsupportedForEvaluation(p.span, f"parameter type {p.type_name!r}")

    local_names = {p.name for p in m.params}
    for node in walk(m.body):
        if isinstance(node, LocalVarDecl):
            for d in node.declarators:
                local_names.add(d.name)

    methods = _file_methods(context)
    classes = _class_names(context)
    for node in walk(m.body):
        if isinstance(node, Throw):
            raise UnsupportedForEvaluation(node.span, "throw statement")
        if isinstance(node, New):
            raise UnsupportedForEvaluation(node.span, "object allocation")
        if isinstance(node, FieldAccess):
            raise UnsupportedForEvaluation(node.span, "field access")
        if isinstance(node, Assign) and not isinstance(node.target, Name):
            raise UnsupportedForEvaluation(node.span, "compound assignment target")
        if isinstance(node, Call):
            _check_call(node, local_names, methods, classes, context, seen)


def _check_call(
    node: Call,
    local_names: set[str],
    methods: dict[str, MethodDecl],
    classes: set[str],
    context: SourceFile | None,
    seen: set[str],
) -> None:
    if node.receiver is None:
        target = methods.get(node.method)
        if target is None:
            raise UnsupportedForEvaluation(node.span, f"unresolved call {node.method!r}")
        _ensure_supported(target, context, seen)
        return
    recv = node.receiver
    if isinstance(recv, Name) and recv.id not in local_names:
        if recv.id == "Math":
            if node.method not in MATH_BUILTINS:
                raise UnsupportedForEvaluation(node.span, f"Math.{node.method}")
            return
        if recv.id in classes:
            target = methods.get(node.method)
            if target is None:
                raise UnsupportedForEvaluation(node.span, f"unresolved call {node.method!r}")
            _ensure_supported(target, context, seen)
            return
        raise UnsupportedForEvaluation(node.span, f"unknown receiver {recv.id!r}")
    if node.method not in STRING_BUILTINS:
        raise UnsupportedForEvaluation(node.span, f"method {node.method!r}")


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


class _BreakSignal(Exception):
    pass


class _ContinueSignal(Exception):
    pass


class _ReturnSignal(Exception):
    def __init__(self, value):
        self.value = value


class _ThrowSignal(Exception):
    def __init__(self, kind: str):
        self.kind = kind


class _FuelExhausted(Exception):
    pass


def _wrap32(v: int) -> int:
    return (v + 2**31) % 2**32 - 2**31


def _java_div(a: int, b: int) -> int:
    if b == 0:
        raise _ThrowSignal(ARITHMETIC)
    q = abs(a) // abs(b)
    if (a < 0) != (b < 0):
        q = -q
    return _wrap32(q)


def _java_mod(a: int, b: int) -> int:
    if b == 0:
        raise _ThrowSignal(ARITHMETIC)
    return _wrap32(a - _java_div(a, b) * b)


def _to_java_string(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "null"
    if isinstance(v, int):
        return str(v)
    return v


class _Interp:
    def __init__(self, context: SourceFile | None, fuel: int):
        self.context = context
        self.methods = _file_methods(context)
        self.classes = _class_names(context)
        self.fuel = fuel
        self.depth = 0

    def charge(self) -> None:
        self.fuel -= 1
        if self.fuel < 0:
            raise _FuelExhausted()

    def run_method(self, m: MethodDecl, args: list) -> object:
        if len(args) != len(m.params):
            raise UnsupportedForEvaluation(m.span, "argument arity mismatch")
        self.depth += 1
        if self.depth > MAX_CALL_DEPTH:
            # Deep recursion is reported as exhaustion, never a Python error.
            raise _FuelExhausted()
        env = [dict(zip((p.name for p in m.params), args))]
        try:
            self.exec_block(m.body, env)
        except _ReturnSignal as r:
            return r.value
        finally:
            self.depth -= 1
        return VOID

    # -- statements --

    def exec_block(self, block: Block, env: list[dict]) -> None:
        env.append({})
        try:
            for s in block.stmts:
                self.exec_stmt(s, env)
        finally:
            env.pop()

    def exec_stmt(self, stmt: Stmt, env: list[dict]) -> None:
        self.charge()
        if isinstance(stmt, Block):
            self.exec_block(stmt, env)
        elif isinstance(stmt, LocalVarDecl):
            for d in stmt.declarators:
                value = self.eval(d.init, env) if d.init is not None else None
                env[-1][d.name] = value
        elif isinstance(stmt, ExprStmt):
            self.eval(stmt.expr, env)
        elif isinstance(stmt, If):
            if self.truth(stmt.cond, env):
                self.exec_block(stmt.then, env)
            elif stmt.orelse is not None:
                self.exec_stmt(stmt.orelse, env)
        elif isinstance(stmt, While):
            while True:
                self.charge()
                if not self.truth(stmt.cond, env):
                    break
                try:
                    self.exec_block(stmt.body, env)
                except _BreakSignal:
                    break
                except _ContinueSignal:
                    continue
        elif isinstance(stmt, For):
            env.append({})
            try:
                if stmt.init is not None:
                    self.exec_stmt(stmt.init, env)
                while True:
                    self.charge()
                    if stmt.cond is not None and not self.truth(stmt.cond, env):
                        break
                    try:
                        self.exec_block(stmt.body, env)
                    except _BreakSignal:
                        break
                    except _ContinueSignal:
                        pass
                    if stmt.update is not None:
                        self.eval(stmt.update, env)
            finally:
                env.pop()
        elif isinstance(stmt, Switch):
            self.exec_switch(stmt, env)
        elif isinstance(stmt, Return):
            value = self.eval(stmt.value, env) if stmt.value is not None else VOID
            raise _ReturnSignal(value)
        elif isinstance(stmt, Break):
            raise _BreakSignal()
        elif isinstance(stmt, Continue):
            raise _ContinueSignal()
        elif isinstance(stmt, Throw):
            raise UnsupportedForEvaluation(stmt.span, "throw statement")
        else:
            raise UnsupportedForEvaluation(stmt.span, type(stmt).__name__)

    def exec_switch(self, stmt: Switch, env: list[dict]) -> None:
        scrutinee = self.eval(stmt.scrutinee, env)
        if scrutinee is None:
            raise _ThrowSignal(NULL_POINTER)
        if not isinstance(scrutinee, (int, str)) or isinstance(scrutinee, bool):
            raise UnsupportedForEvaluation(stmt.span, "switch scrutinee type")
        start = None
        default_index = None
        for i, case in enumerate(stmt.cases):
            for label in case.labels:
                if label == DEFAULT_LABEL:
                    default_index = i
                elif isinstance(label, Literal) and label.value == scrutinee \
                        and isinstance(label.value, type(scrutinee)):
                    start = i
                    break
            if start is not None:
                break
        if start is None:
            start = default_index
        if start is None:
            return
        env.append({})
        try:
            for case in stmt.cases[start:]:
                for s in case.body:
                    self.exec_stmt(s, env)
        except _BreakSignal:
            pass
        finally:
            env.pop()

    # -- expressions --

    def truth(self, expr: Expr, env: list[dict]) -> bool:
        v = self.eval(expr, env)
        if not isinstance(v, bool):
            raise UnsupportedForEvaluation(expr.span, "condition is not boolean")
        return v

    def eval(self, expr: Expr, env: list[dict]):
        if isinstance(expr, Literal):
            return expr.value
        if isinstance(expr, Name):
            for scope in reversed(env):
                if expr.id in scope:
                    return scope[expr.id]
            raise UnsupportedForEvaluation(expr.span, f"unbound name {expr.id!r}")
        if isinstance(expr, Unary):
            v = self.eval(expr.operand, env)
            if expr.op == "!":
                if not isinstance(v, bool):
                    raise UnsupportedForEvaluation(expr.span, "! on non-boolean")
                return not v
            if isinstance(v, bool) or not isinstance(v, int):
                raise UnsupportedForEvaluation(expr.span, "- on non-int")
            return _wrap32(-v)
        if isinstance(expr, Binary):
            return self.eval_binary(expr, env)
        if isinstance(expr, Ternary):
            if self.truth(expr.cond, env):
                return self.eval(expr.if_true, env)
            return self.eval(expr.if_false, env)
        if isinstance(expr, Assign):
            if not isinstance(expr.target, Name):
                raise UnsupportedForEvaluation(expr.span, "compound assignment target")
            value = self.eval(expr.value, env)
            for scope in reversed(env):
                if expr.target.id in scope:
                    scope[expr.target.id] = value
                    return value
            raise UnsupportedForEvaluation(expr.span, f"unbound name {expr.target.id!r}")
        if isinstance(expr, Call):
            return self.eval_call(expr, env)
        raise UnsupportedForEvaluation(expr.span, type(expr).__name__)

    def eval_binary(self, expr: Binary, env: list[dict]):
        op = expr.op
        if op == "&&":
            return self.truth(expr.left, env) and self.truth(expr.right, env)
        if op == "||":
            return self.truth(expr.left, env) or self.truth(expr.right, env)
        left = self.eval(expr.left, env)
        right = self.eval(expr.right, env)
        if op in ("==", "!="):
            eq = self.values_equal(left, right, expr)
            return eq if op == "==" else not eq
        if op == "+" and (isinstance(left, str) or isinstance(right, str)):
            return _to_java_string(left) + _to_java_string(right)
        if isinstance(left, bool) or isinstance(right, bool) \
                or not isinstance(left, int) or not isinstance(right, int):
            raise UnsupportedForEvaluation(expr.span, f"{op} on non-int operands")
        if op == "+":
            return _wrap32(left + right)
        if op == "-":
            return _wrap32(left - right)
        if op == "*":
            return _wrap32(left * right)
        if op == "/":
            return _java_div(left, right)
        if op == "%":
            return _java_mod(left, right)
        if op == "<":
            return left < right
        if op == "<=":
            return left <= right
        if op == ">":
            return left > right
        if op == ">=":
            return left >= right
        raise UnsupportedForEvaluation(expr.span, f"operator {op}")

    def values_equal(self, left, right, expr: Binary) -> bool:
        if left is None or right is None:
            if left is None and right is None:
                return True
            other = left if right is None else right
            if isinstance(other, str):
                return False
            raise UnsupportedForEvaluation(expr.span, "null compared to a primitive")
        if isinstance(left, bool) != isinstance(right, bool) \
                or isinstance(left, str) != isinstance(right, str):
            raise UnsupportedForEvaluation(expr.span, "comparison of unrelated types")
        # String == compares values here; the subset has no aliasing to observe.
        return left == right

    def eval_call(self, expr: Call, env: list[dict]):
        if expr.receiver is None:
            return self.call_static(expr, env)
        if isinstance(expr.receiver, Name):
            name = expr.receiver.id
            bound = any(name in scope for scope in reversed(env))
            if not bound:
                if name == "Math":
                    return self.call_math(expr, env)
                if name in self.classes:
                    return self.call_static(expr, env)
                raise UnsupportedForEvaluation(expr.span, f"unknown receiver {name!r}")
        receiver = self.eval(expr.receiver, env)
        if receiver is None:
            raise _ThrowSignal(NULL_POINTER)
        if isinstance(receiver, str):
            return self.call_string(receiver, expr, env)
        raise UnsupportedForEvaluation(expr.span, f"method call on {type(receiver).__name__}")

    def call_static(self, expr: Call, env: list[dict]):
        target = self.methods.get(expr.method)
        if target is None:
            raise UnsupportedForEvaluation(expr.span, f"unresolved call {expr.method!r}")
        args = [self.eval(a, env) for a in expr.args]
        return self.run_method(target, args)

    def call_math(self, expr: Call, env: list[dict]):
        args = [self.eval(a, env) for a in expr.args]
        if any(isinstance(a, bool) or not isinstance(a, int) for a in args):
            raise UnsupportedForEvaluation(expr.span, "Math builtin on non-int")
        if expr.method == "min" and len(args) == 2:
            return min(args)
        if expr.method == "max" and len(args) == 2:
            return max(args)
        if expr.method == "abs" and len(args) == 1:
            return _wrap32(abs(args[0]))
        raise UnsupportedForEvaluation(expr.span, f"Math.{expr.method}/{len(args)}")

    def call_string(self, receiver: str, expr: Call, env: list[dict]):
        args = [self.eval(a, env) for a in expr.args]
        method = expr.method
        if method == "length" and not args:
            return len(receiver)
        if method == "substring" and len(args) in (1, 2):
            bounds = args + [len(receiver)] if len(args) == 1 else args
            begin, end = bounds
            if not all(isinstance(b, int) and not isinstance(b, bool) for b in (begin, end)):
                raise UnsupportedForEvaluation(expr.span, "substring on non-int index")
            if not (0 <= begin <= end <= len(receiver)):
                raise UnsupportedForEvaluation(expr.span, "string index out of range")
            return receiver[begin:end]
        if method == "startsWith" and len(args) == 1:
            if not isinstance(args[0], str):
                if args[0] is None:
                    raise _ThrowSignal(NULL_POINTER)
                raise UnsupportedForEvaluation(expr.span, "startsWith on non-string")
            return receiver.startswith(args[0])
        if method == "equals" and len(args) == 1:
            return isinstance(args[0], str) and receiver == args[0]
        if method == "concat" and len(args) == 1:
            if not isinstance(args[0], str):
                if args[0] is None:
                    raise _ThrowSignal(NULL_POINTER)
                raise UnsupportedForEvaluation(expr.span, "concat on non-string")
            return receiver + args[0]
        raise UnsupportedForEvaluation(expr.span, f"String.{method}/{len(args)}")


def evaluate(
    m: MethodDecl,
    args: list,
    fuel: int = DEFAULT_FUEL,
    context: SourceFile | None = None,
) -> Outcome:
    """Run a method on concrete argument values; deterministic and total."""
    # Each interpreted frame costs several Python frames; the MAX_CALL_DEPTH
    # cap is the real bound, the recursion limit just needs to stay out of
    # its way.
    if sys.getrecursionlimit() < 10_000:
        sys.setrecursionlimit(10_000)
    interp = _Interp(context, fuel)
    try:
        value = interp.run_method(m, list(args))
        return Returned(value)
    except _ThrowSignal as t:
        return Threw(t.kind)
    except _FuelExhausted:
        return OutOfFuel()
    except (_BreakSignal, _ContinueSignal):
        raise UnsupportedForEvaluation(m.span, "break/continue escaped the method")


# ---------------------------------------------------------------------------
# Differential checking
# ---------------------------------------------------------------------------

_INT_POOL = (0, 1, -1, 2, -2, 3, 5, 7, 10, -10, 100, INT_MAX, INT_MIN)
_STRING_ALPHABET = "ab/."


def _gen_value(type_name: str, rng: random.Random):
    if type_name == "int":
        if rng.random() < 0.7:
            return rng.choice(_INT_POOL)
        return rng.randint(-20, 20)
    if type_name == "boolean":
        return rng.random() < 0.5
    if type_name == "String":
        if rng.random() < 0.125:
            return None
        n = rng.randint(0, 4)
        return "".join(rng.choice(_STRING_ALPHABET) for _ in range(n))
    raise ValueError(f"no argument generator for type {type_name!r}")


def generate_args(params, seed: int, trial: int) -> list:
    rng = random.Random(seed * 1_000_003 + trial)
    return [_gen_value(p.type_name, rng) for p in params]


def check_equivalence(
    m1: MethodDecl,
    m2: MethodDecl,
    trials: int = 100,
    seed: int = 0,
    fuel: int = DEFAULT_FUEL,
    context1: SourceFile | None = None,
    context2: SourceFile | None = None,
) -> EquivalenceVerdict:
    """Differentially test two methods over seeded random argument vectors.

    equivalent: all trials produced equal outcomes. diverged: first mismatch
    recorded as a counterexample. inconclusive: some trial ran out of fuel in
    either method and no mismatch was seen elsewhere.
    """
    if len(m1.params) != len(m2.params):
        raise UnsupportedForEvaluation(m1.span, "parameter arity mismatch")
    for p1, p2 in zip(m1.params, m2.params):
        if p1.type_name != p2.type_name:
            raise UnsupportedForEvaluation(p1.span, "parameter type mismatch")
    ensure_supported(m1, context1)
    ensure_supported(m2, context2)

    saw_fuel = False
    for trial in range(trials):
        args = generate_args(m1.params, seed, trial)
        o1 = evaluate(m1, args, fuel, context1)
        o2 = evaluate(m2, args, fuel, context2)
        if isinstance(o1, OutOfFuel) or isinstance(o2, OutOfFuel):
            saw_fuel = True
            continue
        if o1 != o2:
            return EquivalenceVerdict(DIVERGED, trials, Counterexample(tuple(args), o1, o2))
    return EquivalenceVerdict(INCONCLUSIVE if saw_fuel else EQUIVALENT, trials)
