"""The six semantics-preserving structural rewrites and their driver.

Rules: if-condition flipping, for/while conversion, conditional-statement
conversion (ternary/if-else and switch/if-chain), function-chain split/merge,
argument-pass extract/inline, and adjacent-statement reordering.

Every rule is total over its precondition and raises NotApplicable otherwise;
the driver turns per-site NotApplicable into skipped-report entries. All
applicability predicates are deliberately conservative: a rewrite fires only
when the reordering of observable effects (calls, writes, throw-capable
operators) provably cannot change the outcome.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from importlib import resources

from .errors import NotApplicable
from .identifiers import tokenize_identifier
from .nodes import (
    Assign,
    Binary,
    Block,
    Break,
    Call,
    Continue,
    Declarator,
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
    Span,
    Stmt,
    Switch,
    SwitchCase,
    Ternary,
    Throw,
    Unary,
    While,
    walk,
)

MERGE = "merge"
SPLIT = "split"
INLINE = "inline"
EXTRACT = "extract"


class TransformRule(enum.Enum):
    IF_FLIP = "IfFlip"
    LOOP_CONVERT = "LoopConvert"
    COND_CONVERT = "CondConvert"
    FUNCTION_CHAIN = "FunctionChain"
    ARGUMENT_PASS = "ArgumentPass"
    CODE_ORDER = "CodeOrder"


@dataclass
class TransformReport:
    applied: list[tuple[TransformRule, Span, str]] = field(default_factory=list)
    skipped: list[tuple[TransformRule, Span, str]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        def row(items):
            return [
                {
                    "rule": rule.value,
                    "span": {"file": s.file, "start_line": s.start_line,
                             "start_col": s.start_col, "end_line": s.end_line,
                             "end_col": s.end_col},
                    "detail": detail,
                }
                for rule, s, detail in items
            ]

        return {"applied": row(self.applied), "skipped": row(self.skipped),
                "notes": list(self.notes)}


# Return types of well-known library methods, used to type the locals that
# split/extract introduce; anything else gets an inferred `var`.
KNOWN_RETURN_TYPES = {
    "getClass": "Class",
    "substring": "String",
    "concat": "String",
    "trim": "String",
    "strip": "String",
    "toString": "String",
    "toLowerCase": "String",
    "toUpperCase": "String",
    "intern": "String",
    "valueOf": "String",
    "repeat": "String",
    "length": "int",
    "indexOf": "int",
    "lastIndexOf": "int",
    "hashCode": "int",
    "compareTo": "int",
    "startsWith": "boolean",
    "endsWith": "boolean",
    "equals": "boolean",
    "contains": "boolean",
    "isEmpty": "boolean",
    "isBlank": "boolean",
}

# Past participles for extract-variable naming (normalize -> normalizedFoo).
PARTICIPLES = {
    "normalize": "normalized",
    "trim": "trimmed",
    "strip": "stripped",
    "parse": "parsed",
    "validate": "validated",
    "verify": "verified",
    "sanitize": "sanitized",
    "escape": "escaped",
    "encode": "encoded",
    "decode": "decoded",
    "resolve": "resolved",
    "check": "checked",
    "compute": "computed",
    "filter": "filtered",
    "format": "formatted",
    "merge": "merged",
    "load": "loaded",
    "convert": "converted",
    "concat": "concatenated",
    "copy": "copied",
    "clean": "cleaned",
    "sort": "sorted",
    "transform": "transformed",
    "process": "processed",
}


def load_purity_whitelist(path: str | None = None) -> frozenset[str]:
    """Load pure-method names; entries are qualified, matching is by suffix."""
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = resources.files("vmorph.data").joinpath("purity_whitelist.txt").read_text("utf-8")
    names = set()
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            names.add(line.rsplit(".", 1)[-1])
    return frozenset(names)


_DEFAULT_WHITELIST = load_purity_whitelist()


# ---------------------------------------------------------------------------
# Rule 1: if-condition flipping
# ---------------------------------------------------------------------------


def negate(cond: Expr) -> Expr:
    """Logical negation with double-negation elimination; no De Morgan."""
    if isinstance(cond, Unary) and cond.op == "!":
        return cond.operand
    return Unary("!", cond, cond.span)


def flip_if(s: If) -> If:
    """Negate the condition and swap the branches. Needs a non-empty else block."""
    if s.orelse is None:
        raise NotApplicable("no-else")
    if isinstance(s.orelse, If):
        raise NotApplicable("else-if-chain")
    if not s.orelse.stmts:
        raise NotApplicable("no-else")
    return replace(s, cond=negate(s.cond), then=s.orelse, orelse=s.then)


# ---------------------------------------------------------------------------
# Rule 2: loop conversion
# ---------------------------------------------------------------------------


def convert_loop(s: Stmt) -> Stmt:
    """for -> { init; while (cond) { body; update; } } and while -> for (; c; )."""
    if isinstance(s, While):
        return For(None, s.cond, None, s.body, s.comments, s.span)
    if not isinstance(s, For):
        raise TypeError(f"convert_loop expects a loop, got {type(s).__name__}")
    if any(isinstance(n, Continue) for n in walk(s.body)):
        # A continue would skip the relocated update expression.
        raise NotApplicable("continue-in-body")
    if isinstance(s.init, LocalVarDecl) and len(s.init.declarators) > 1:
        raise NotApplicable("multi-declaration-init")
    cond = s.cond if s.cond is not None else Literal(True, "boolean", s.span)
    stmts = s.body.stmts
    if s.update is not None:
        stmts = stmts + (ExprStmt(s.update, (), s.update.span),)
    body = replace(s.body, stmts=stmts)
    if s.init is None:
        return While(cond, body, s.comments, s.span)
    init = replace(s.init, comments=s.comments)
    loop = While(cond, body, (), s.span)
    return Block((init, loop), (), s.span)


# ---------------------------------------------------------------------------
# Rule 3: conditional-statement conversion
# ---------------------------------------------------------------------------


def convert_conditional(stmt: Stmt) -> list[Stmt]:
    """Rewrite one conditional site; may return several statements.

    Handles: `v = c ? a : b;` and `T v = c ? a : b;` to if-else, switch to an
    if/else-if chain, and an equality-guarded if/else-if chain to a switch.
    """
    if isinstance(stmt, ExprStmt) and isinstance(stmt.expr, Assign) \
            and isinstance(stmt.expr.value, Ternary):
        t = stmt.expr.value
        target = stmt.expr.target
        then = Block((ExprStmt(Assign(target, t.if_true, t.span), (), t.if_true.span),),
                     (), t.if_true.span)
        orelse = Block((ExprStmt(Assign(target, t.if_false, t.span), (), t.if_false.span),),
                       (), t.if_false.span)
        return [If(t.cond, then, orelse, stmt.comments, stmt.span)]

    if isinstance(stmt, LocalVarDecl) and len(stmt.declarators) == 1 \
            and isinstance(stmt.declarators[0].init, Ternary):
        if stmt.type_name == "var":
            raise NotApplicable("var-requires-initializer")
        d = stmt.declarators[0]
        t = d.init
        assert isinstance(t, Ternary)
        decl = replace(stmt, declarators=(Declarator(d.name, None, d.span),))
        target = Name(d.name, d.span)
        then = Block((ExprStmt(Assign(target, t.if_true, t.span), (), t.if_true.span),),
                     (), t.if_true.span)
        orelse = Block((ExprStmt(Assign(target, t.if_false, t.span), (), t.if_false.span),),
                       (), t.if_false.span)
        return [decl, If(t.cond, then, orelse, (), stmt.span)]

    if isinstance(stmt, Switch):
        return [_switch_to_if_chain(stmt)]

    if isinstance(stmt, If):
        return [_if_chain_to_switch(stmt)]

    raise NotApplicable("not-a-conditional-site")


def _effect_free_scrutinee(expr: Expr) -> bool:
    if isinstance(expr, (Name, Literal)):
        return True
    if isinstance(expr, FieldAccess):
        return _effect_free_scrutinee(expr.receiver)
    return False


def _free_breaks(stmts: tuple[Stmt, ...]) -> list[Break]:
    """Breaks that would bind to the enclosing switch (not to a nested loop/switch)."""
    found: list[Break] = []

    def visit(s: Stmt) -> None:
        if isinstance(s, (While, For, Switch)):
            return
        if isinstance(s, Break):
            found.append(s)
            return
        if isinstance(s, Block):
            for inner in s.stmts:
                visit(inner)
        elif isinstance(s, If):
            visit(s.then)
            if s.orelse is not None:
                visit(s.orelse)

    for s in stmts:
        visit(s)
    return found


def _switch_to_if_chain(stmt: Switch) -> Stmt:
    if not stmt.cases:
        raise NotApplicable("empty-switch")
    if not _effect_free_scrutinee(stmt.scrutinee):
        raise NotApplicable("effectful-scrutinee")

    label_kinds: set[str] = set()
    default_case: SwitchCase | None = None
    value_cases: list[SwitchCase] = []
    for case in stmt.cases:
        has_default = any(l == DEFAULT_LABEL for l in case.labels)
        has_values = any(l != DEFAULT_LABEL for l in case.labels)
        if has_default and has_values:
            raise NotApplicable("mixed-default-labels")
        if has_default:
            default_case = case
        else:
            value_cases.append(case)
            for l in case.labels:
                assert isinstance(l, Literal)
                label_kinds.add(l.kind)
    if label_kinds - {"int", "string"}:
        raise NotApplicable("non-literal-guards")
    if len(label_kinds) > 1:
        raise NotApplicable("mixed-label-types")

    for i, case in enumerate(stmt.cases):
        is_last = i == len(stmt.cases) - 1
        if not is_last and not case.terminated:
            raise NotApplicable("fallthrough")
        body = case.body
        if body and isinstance(body[-1], Break):
            body = body[:-1]
        if _free_breaks(body):
            raise NotApplicable("inner-break")

    def case_block(case: SwitchCase) -> Block:
        body = case.body
        if body and isinstance(body[-1], Break):
            body = body[:-1]
        return Block(tuple(body), (), case.span)

    def case_cond(case: SwitchCase) -> Expr:
        conds: list[Expr] = []
        for label in case.labels:
            assert isinstance(label, Literal)
            if label.kind == "string":
                conds.append(Call(stmt.scrutinee, "equals", (label,), label.span))
            else:
                conds.append(Binary("==", stmt.scrutinee, label, label.span))
        out = conds[0]
        for c in conds[1:]:
            out = Binary("||", out, c, c.span)
        return out

    chain: Stmt | None = case_block(default_case) if default_case is not None else None
    if chain is not None and not chain.stmts:  # type: ignore[union-attr]
        chain = None
    for case in reversed(value_cases):
        chain = If(case_cond(case), case_block(case), chain, (), case.span)
    if not isinstance(chain, If):
        raise NotApplicable("no-value-cases")
    return replace(chain, comments=stmt.comments, span=stmt.span)


def _if_chain_to_switch(stmt: If) -> Stmt:
    """if (k == 1) ... else if (k == 2) ... else ...  ->  switch (k)."""
    links: list[tuple[list[Literal], Block]] = []
    scrutinee: Name | None = None
    node: Stmt | None = stmt
    final_else: Block | None = None
    while isinstance(node, If):
        labels: list[Literal] = []
        sc = _equality_labels(node.cond, labels)
        if sc is None:
            raise NotApplicable("non-literal-guards")
        if scrutinee is None:
            scrutinee = sc
        elif scrutinee.id != sc.id:
            raise NotApplicable("non-literal-guards")
        links.append((labels, node.then))
        node = node.orelse
    if node is not None:
        assert isinstance(node, Block)
        final_else = node
    if len(links) < 2:
        raise NotApplicable("no-chain")

    seen: set[object] = set()
    for labels, body in links:
        for l in labels:
            if l.value in seen:
                raise NotApplicable("duplicate-labels")
            seen.add(l.value)
        if _free_breaks(body.stmts):
            raise NotApplicable("inner-break")
    if final_else is not None and _free_breaks(final_else.stmts):
        raise NotApplicable("inner-break")

    cases: list[SwitchCase] = []
    for labels, body in links:
        stmts = body.stmts
        terminated = bool(stmts) and isinstance(stmts[-1], (Break, Return, Throw))
        if not terminated:
            stmts = stmts + (Break((), body.span),)
            terminated = True
        cases.append(SwitchCase(tuple(labels), stmts, terminated, body.span))
    if final_else is not None:
        stmts = final_else.stmts
        terminated = bool(stmts) and isinstance(stmts[-1], (Break, Return, Throw))
        cases.append(SwitchCase((DEFAULT_LABEL,), stmts, terminated, final_else.span))
    assert scrutinee is not None
    return Switch(scrutinee, tuple(cases), stmt.comments, stmt.span)


def _equality_labels(cond: Expr, out: list[Literal]) -> Name | None:
    """Match `name == literal` or an || chain of those; return the scrutinee."""
    if isinstance(cond, Binary) and cond.op == "||":
        left = _equality_labels(cond.left, out)
        right = _equality_labels(cond.right, out)
        if left is None or right is None or left.id != right.id:
            return None
        return left
    if isinstance(cond, Binary) and cond.op == "==":
        a, b = cond.left, cond.right
        if isinstance(a, Name) and isinstance(b, Literal) and b.kind == "int":
            out.append(b)
            return a
        if isinstance(b, Name) and isinstance(a, Literal) and a.kind == "int":
            out.append(a)
            return b
    return None


# ---------------------------------------------------------------------------
# Effect analysis shared by chaining / argument passing / reordering
# ---------------------------------------------------------------------------


def _effects_in_order(expr: Expr, conditional: bool = False):
    """Yield (node, conditional) for every effect, in evaluation order.

    Effects are calls, allocations, writes, and the throw-capable `/` and `%`.
    `conditional` marks positions that may not execute (ternary branches and
    the right side of a short-circuit operator).
    """
    if isinstance(expr, (Name, Literal)):
        return
    if isinstance(expr, FieldAccess):
        yield from _effects_in_order(expr.receiver, conditional)
    elif isinstance(expr, Unary):
        yield from _effects_in_order(expr.operand, conditional)
    elif isinstance(expr, Binary):
        if expr.op in ("&&", "||"):
            yield from _effects_in_order(expr.left, conditional)
            yield from _effects_in_order(expr.right, True)
        else:
            yield from _effects_in_order(expr.left, conditional)
            yield from _effects_in_order(expr.right, conditional)
            if expr.op in ("/", "%"):
                yield expr, conditional
    elif isinstance(expr, Ternary):
        yield from _effects_in_order(expr.cond, conditional)
        yield from _effects_in_order(expr.if_true, True)
        yield from _effects_in_order(expr.if_false, True)
    elif isinstance(expr, Call):
        if expr.receiver is not None:
            yield from _effects_in_order(expr.receiver, conditional)
        for a in expr.args:
            yield from _effects_in_order(a, conditional)
        yield expr, conditional
    elif isinstance(expr, New):
        for a in expr.args:
            yield from _effects_in_order(a, conditional)
        yield expr, conditional
    elif isinstance(expr, Assign):
        yield from _effects_in_order(expr.value, conditional)
        yield expr, conditional
    else:
        raise TypeError(f"unknown expression {type(expr).__name__}")


def _is_first_effect(stmt_expr: Expr, target: Expr) -> bool:
    """True when `target` is the first effect the statement would evaluate."""
    for node, conditional in _effects_in_order(stmt_expr):
        if node is target:
            return not conditional
        return False
    return False


class _FreshNames:
    def __init__(self, taken: set[str]):
        self.taken = set(taken)

    def claim(self, base: str) -> str:
        if base not in self.taken:
            self.taken.add(base)
            return base
        i = 2
        while f"{base}{i}" in self.taken:
            i += 1
        name = f"{base}{i}"
        self.taken.add(name)
        return name


def _names_in(node) -> set[str]:
    """Every identifier visible anywhere under `node` (fresh names must avoid all)."""
    from .nodes import ClassDecl, Param

    out: set[str] = set()
    for n in walk(node):
        if isinstance(n, Name):
            out.add(n.id)
        elif isinstance(n, Call):
            out.add(n.method)
        elif isinstance(n, FieldAccess):
            out.add(n.name)
        elif isinstance(n, Declarator):
            out.add(n.name)
        elif isinstance(n, (New, LocalVarDecl)):
            out.add(n.type_name.rsplit(".", 1)[-1])
        elif isinstance(n, Param):
            out.add(n.name)
        elif isinstance(n, MethodDecl):
            out.add(n.name)
        elif isinstance(n, ClassDecl):
            out.add(n.name)
    return out


def _decl_type_for(call_or_new: Expr) -> str:
    if isinstance(call_or_new, New):
        return call_or_new.type_name
    assert isinstance(call_or_new, Call)
    return KNOWN_RETURN_TYPES.get(call_or_new.method, "var")


def _split_base_name(inner: Call) -> str:
    recv_tokens: list[str] = []
    if isinstance(inner.receiver, Name):
        recv_tokens = tokenize_identifier(inner.receiver.id)
    elif isinstance(inner.receiver, FieldAccess):
        recv_tokens = tokenize_identifier(inner.receiver.name)
    meth_tokens = tokenize_identifier(inner.method)
    if len(meth_tokens) > 1 and meth_tokens[0] in ("get", "to"):
        meth_tokens = meth_tokens[1:]
    tokens = recv_tokens + meth_tokens
    return "_".join(tokens) if tokens else "tmp"


def _extract_base_name(arg: Expr) -> str | None:
    """Paper-style name for an extracted argument, or None to fall back to tmpN."""
    if isinstance(arg, New):
        tokens = tokenize_identifier(arg.type_name.rsplit(".", 1)[-1])
        return tokens[0] + "".join(t.capitalize() for t in tokens[1:])
    assert isinstance(arg, Call)
    meth_tokens = tokenize_identifier(arg.method)
    if meth_tokens[0] not in PARTICIPLES:
        return None
    tokens = [PARTICIPLES[meth_tokens[0]]] + meth_tokens[1:]
    if isinstance(arg.receiver, Name):
        tokens += tokenize_identifier(arg.receiver.id)
    elif isinstance(arg.receiver, FieldAccess):
        tokens += tokenize_identifier(arg.receiver.name)
    return tokens[0] + "".join(t.capitalize() for t in tokens[1:])


# ---------------------------------------------------------------------------
# Rule 4: function chaining
# ---------------------------------------------------------------------------


def chain_functions(block: Block, direction: str, taken: set[str] | None = None) -> Block:
    """Split one chain link per statement, or merge single-use receiver decls."""
    if direction == SPLIT:
        fresh = _FreshNames(taken if taken is not None else _names_in(block))
        new_stmts: list[Stmt] = []
        for stmt in block.stmts:
            new_stmts.extend(_split_stmt(stmt, fresh)[0])
        return replace(block, stmts=tuple(new_stmts))
    if direction == MERGE:
        return _merge_block(block)
    raise ValueError(f"unknown direction {direction!r}")


def _find_chain_link(expr: Expr) -> Call | None:
    """The call at the bottom of a chain: its receiver is a call, whose own
    receiver is not."""
    for node in walk(expr):
        if (
            isinstance(node, Call)
            and isinstance(node.receiver, Call)
            and not isinstance(node.receiver.receiver, Call)
        ):
            return node
    return None


def _split_stmt(stmt: Stmt, fresh: _FreshNames) -> tuple[list[Stmt], bool]:
    """Returns (replacement statements, whether a split happened)."""
    if isinstance(stmt, ExprStmt):
        holder = stmt.expr
    elif isinstance(stmt, LocalVarDecl) and len(stmt.declarators) == 1 \
            and stmt.declarators[0].init is not None:
        holder = stmt.declarators[0].init
    else:
        return [stmt], False

    link = _find_chain_link(holder)
    if link is None:
        return [stmt], False
    inner = link.receiver
    assert isinstance(inner, Call)
    if not _is_first_effect(holder, inner):
        raise NotApplicable("interference")

    var_name = fresh.claim(_split_base_name(inner))
    decl = LocalVarDecl(
        _decl_type_for(inner),
        (Declarator(var_name, inner, inner.span),),
        stmt.comments if hasattr(stmt, "comments") else (),
        inner.span,
    )
    rewritten = _replace_expr(stmt, inner, Name(var_name, inner.span))
    rewritten = replace(rewritten, comments=())
    return [decl, rewritten], True


def _replace_expr(node, old: Expr, new: Expr):
    """Rebuild `node` with the single (identity-matched) `old` replaced."""
    if node is old:
        return new
    if isinstance(node, (Name, Literal)) or node is None:
        return node
    if isinstance(node, ExprStmt):
        return replace(node, expr=_replace_expr(node.expr, old, new))
    if isinstance(node, LocalVarDecl):
        return replace(node, declarators=tuple(
            replace(d, init=_replace_expr(d.init, old, new) if d.init is not None else None)
            for d in node.declarators
        ))
    if isinstance(node, Return):
        return replace(node, value=_replace_expr(node.value, old, new))
    if isinstance(node, Throw):
        return replace(node, expr=_replace_expr(node.expr, old, new))
    if isinstance(node, Unary):
        return replace(node, operand=_replace_expr(node.operand, old, new))
    if isinstance(node, Binary):
        return replace(node, left=_replace_expr(node.left, old, new),
                       right=_replace_expr(node.right, old, new))
    if isinstance(node, Ternary):
        return replace(node, cond=_replace_expr(node.cond, old, new),
                       if_true=_replace_expr(node.if_true, old, new),
                       if_false=_replace_expr(node.if_false, old, new))
    if isinstance(node, Call):
        return replace(
            node,
            receiver=_replace_expr(node.receiver, old, new) if node.receiver else None,
            args=tuple(_replace_expr(a, old, new) for a in node.args),
        )
    if isinstance(node, FieldAccess):
        return replace(node, receiver=_replace_expr(node.receiver, old, new))
    if isinstance(node, Assign):
        return replace(node, target=_replace_expr(node.target, old, new),
                       value=_replace_expr(node.value, old, new))
    if isinstance(node, New):
        return replace(node, args=tuple(_replace_expr(a, old, new) for a in node.args))
    return node


def _count_name_uses(stmts, name: str) -> int:
    count = 0
    for s in stmts:
        for n in walk(s):
            if isinstance(n, Name) and n.id == name:
                count += 1
    return count


def _merge_block(block: Block) -> Block:
    stmts = list(block.stmts)
    i = 0
    while i + 1 < len(stmts):
        merged = _try_merge(stmts, i)
        if merged is not None:
            stmts[i : i + 2] = [merged]
        else:
            i += 1
    return replace(block, stmts=tuple(stmts))


def _try_merge(stmts: list[Stmt], i: int) -> Stmt | None:
    decl = stmts[i]
    if not (isinstance(decl, LocalVarDecl) and len(decl.declarators) == 1
            and isinstance(decl.declarators[0].init, Call)):
        return None
    name = decl.declarators[0].name
    if _count_name_uses(stmts[i + 1 :], name) != 1:
        return None
    use_stmt = stmts[i + 1]
    holder = _stmt_expr(use_stmt)
    if holder is None:
        return None
    target: Call | None = None
    for n in walk(holder):
        if isinstance(n, Call) and isinstance(n.receiver, Name) and n.receiver.id == name:
            target = n
            break
    if target is None:
        return None
    if _count_name_uses([use_stmt], name) != 1:
        return None
    if not _is_first_effect(holder, target):
        return None
    new_call = replace(target, receiver=decl.declarators[0].init)
    rewritten = _replace_expr(use_stmt, target, new_call)
    return replace(rewritten, comments=decl.comments + rewritten.comments)


def _stmt_expr(stmt: Stmt) -> Expr | None:
    if isinstance(stmt, ExprStmt):
        return stmt.expr
    if isinstance(stmt, LocalVarDecl) and len(stmt.declarators) == 1:
        return stmt.declarators[0].init
    if isinstance(stmt, Return):
        return stmt.value
    if isinstance(stmt, Throw):
        return stmt.expr
    return None


# ---------------------------------------------------------------------------
# Rule 5: argument passing
# ---------------------------------------------------------------------------


def argument_pass(block: Block, direction: str, taken: set[str] | None = None) -> Block:
    """Extract call/new arguments into locals, or inline single-use locals back."""
    if direction == EXTRACT:
        fresh = _FreshNames(taken if taken is not None else _names_in(block))
        new_stmts: list[Stmt] = []
        for stmt in block.stmts:
            decls, rewritten, _ = _extract_stmt(stmt, fresh)
            new_stmts.extend(decls)
            new_stmts.append(rewritten)
        return replace(block, stmts=tuple(new_stmts))
    if direction == INLINE:
        return _inline_block(block)
    raise ValueError(f"unknown direction {direction!r}")


def _extract_stmt(stmt: Stmt, fresh: _FreshNames):
    """Hoist every safely extractable argument of one statement.

    Returns (hoisted declarations, rewritten statement, skip reasons).
    Extraction preserves effect order: arguments are hoisted left to right
    and only while every preceding effect has itself been hoisted.
    """
    holder = _stmt_expr(stmt)
    skips: list[tuple[Span, str]] = []
    if holder is None or not isinstance(stmt, (ExprStmt, LocalVarDecl, Return, Throw)):
        return [], stmt, skips

    decls: list[Stmt] = []
    prefix_ok = True

    def process(e: Expr, in_arg: bool, conditional: bool) -> Expr:
        nonlocal prefix_ok
        if isinstance(e, (Name, Literal)):
            return e
        if isinstance(e, FieldAccess):
            return replace(e, receiver=process(e.receiver, False, conditional))
        if isinstance(e, Unary):
            return replace(e, operand=process(e.operand, in_arg=False, conditional=conditional))
        if isinstance(e, Binary):
            if e.op in ("&&", "||"):
                left = process(e.left, False, conditional)
                right = process(e.right, False, True)
            else:
                left = process(e.left, False, conditional)
                right = process(e.right, False, conditional)
                if e.op in ("/", "%"):
                    prefix_ok = False
            return replace(e, left=left, right=right)
        if isinstance(e, Ternary):
            cond = process(e.cond, False, conditional)
            if_true = process(e.if_true, False, True)
            if_false = process(e.if_false, False, True)
            return replace(e, cond=cond, if_true=if_true, if_false=if_false)
        if isinstance(e, Assign):
            value = process(e.value, False, conditional)
            prefix_ok = False
            return replace(e, value=value)
        if isinstance(e, (Call, New)):
            if isinstance(e, Call) and e.receiver is not None:
                receiver = process(e.receiver, False, conditional)
                e = replace(e, receiver=receiver)
            args = tuple(process(a, True, conditional) for a in e.args)
            e = replace(e, args=args)
            if in_arg:
                if conditional:
                    skips.append((e.span, "conditional-context"))
                    prefix_ok = False
                    return e
                if not prefix_ok:
                    skips.append((e.span, "interference"))
                    return e
                base = _extract_base_name(e)
                var_name = fresh.claim(base) if base else fresh.claim("tmp")
                decls.append(LocalVarDecl(_decl_type_for(e),
                                          (Declarator(var_name, e, e.span),),
                                          (), e.span))
                return Name(var_name, e.span)
            prefix_ok = False
            return e
        raise TypeError(f"unknown expression {type(e).__name__}")

    new_holder = process(holder, False, False)
    if not decls:
        return [], stmt, skips
    rewritten = _replace_holder(stmt, new_holder)
    if decls and getattr(stmt, "comments", ()):
        decls[0] = replace(decls[0], comments=stmt.comments)
        rewritten = replace(rewritten, comments=())
    return decls, rewritten, skips


def _replace_holder(stmt: Stmt, new_expr: Expr) -> Stmt:
    if isinstance(stmt, ExprStmt):
        return replace(stmt, expr=new_expr)
    if isinstance(stmt, LocalVarDecl):
        d = stmt.declarators[0]
        return replace(stmt, declarators=(replace(d, init=new_expr),))
    if isinstance(stmt, Return):
        return replace(stmt, value=new_expr)
    if isinstance(stmt, Throw):
        return replace(stmt, expr=new_expr)
    raise TypeError(f"cannot rebuild {type(stmt).__name__}")


_STRAIGHT_LINE = (LocalVarDecl, ExprStmt)


def _reads_of_expr(expr: Expr) -> set[str]:
    reads: set[str] = set()
    for n in walk(expr):
        if isinstance(n, Name):
            reads.add(n.id)
    return reads


def _writes_of_stmt(stmt: Stmt) -> set[str]:
    writes: set[str] = set()
    for n in walk(stmt):
        if isinstance(n, Assign):
            if isinstance(n.target, Name):
                writes.add(n.target.id)
            elif isinstance(n.target, FieldAccess):
                base = n.target
                while isinstance(base, FieldAccess):
                    base = base.receiver
                if isinstance(base, Name):
                    writes.add(base.id)
        elif isinstance(n, Declarator):
            writes.add(n.name)
    return writes


def _has_effects(expr: Expr) -> bool:
    return next(iter(_effects_in_order(expr)), None) is not None


def _stmt_has_effects(stmt: Stmt) -> bool:
    if isinstance(stmt, LocalVarDecl):
        return any(d.init is not None and _has_effects(d.init) for d in stmt.declarators)
    if isinstance(stmt, ExprStmt):
        return _has_effects(stmt.expr)
    return True


def _inline_block(block: Block) -> Block:
    stmts = list(block.stmts)
    i = 0
    while i < len(stmts):
        performed = _try_inline(stmts, i)
        if not performed:
            i += 1
    return replace(block, stmts=tuple(stmts))


def _try_inline(stmts: list[Stmt], i: int) -> bool:
    decl = stmts[i]
    if not (isinstance(decl, LocalVarDecl) and len(decl.declarators) == 1
            and decl.declarators[0].init is not None):
        return False
    name = decl.declarators[0].name
    init = decl.declarators[0].init
    total_uses = _count_name_uses(stmts[i + 1 :], name)
    if total_uses != 1:
        return False

    init_reads = _reads_of_expr(init)
    init_effectful = _has_effects(init)
    j = i + 1
    while j < len(stmts) and _count_name_uses([stmts[j]], name) == 0:
        s = stmts[j]
        if not isinstance(s, _STRAIGHT_LINE):
            return False
        if _writes_of_stmt(s) & init_reads:
            return False
        if init_effectful and _stmt_has_effects(s):
            return False
        j += 1
    if j >= len(stmts):
        return False
    use_stmt = stmts[j]
    holder = _stmt_expr(use_stmt)
    if holder is None:
        return False

    # The single use must sit in argument position, reachable before any
    # effect or conflicting write the statement would evaluate first.
    state = {"ok": True, "found": False, "arg": False}

    def scan(e: Expr, in_arg: bool, conditional: bool) -> None:
        if state["found"] and not state["ok"]:
            return
        if isinstance(e, Name):
            if e.id == name and not state["found"]:
                state["found"] = True
                state["arg"] = in_arg and not conditional and state["ok"]
            return
        if isinstance(e, Literal):
            return
        if isinstance(e, FieldAccess):
            scan(e.receiver, False, conditional)
            return
        if isinstance(e, Unary):
            scan(e.operand, False, conditional)
            return
        if isinstance(e, Binary):
            scan(e.left, False, conditional)
            scan(e.right, False, conditional or e.op in ("&&", "||"))
            if e.op in ("/", "%") and not state["found"] and init_effectful:
                state["ok"] = False
            return
        if isinstance(e, Ternary):
            scan(e.cond, False, conditional)
            scan(e.if_true, False, True)
            scan(e.if_false, False, True)
            return
        if isinstance(e, Assign):
            scan(e.value, False, conditional)
            if not state["found"]:
                target = e.target
                if isinstance(target, Name) and target.id in init_reads:
                    state["ok"] = False
                if init_effectful:
                    state["ok"] = False
            return
        if isinstance(e, (Call, New)):
            if isinstance(e, Call) and e.receiver is not None:
                scan(e.receiver, False, conditional)
            for a in e.args:
                scan(a, True, conditional)
            if not state["found"] and init_effectful:
                state["ok"] = False
            return
        raise TypeError(f"unknown expression {type(e).__name__}")

    scan(holder, False, False)
    if not (state["found"] and state["arg"]):
        return False

    use_node = None
    for n in walk(holder):
        if isinstance(n, Name) and n.id == name:
            use_node = n
            break
    assert use_node is not None
    rewritten = _replace_expr(use_stmt, use_node, init)
    if decl.comments:
        rewritten = replace(rewritten, comments=decl.comments + rewritten.comments)
    stmts[j] = rewritten
    del stmts[i]
    return True


# ---------------------------------------------------------------------------
# Rule 6: statement reordering
# ---------------------------------------------------------------------------

_CONTROL_FLOW = (Return, Break, Continue, Throw, If, While, For, Switch, Block)


def _reads_of_stmt(stmt: Stmt) -> set[str]:
    reads: set[str] = set()

    def visit_expr(e: Expr) -> None:
        if isinstance(e, Name):
            reads.add(e.id)
        elif isinstance(e, Literal):
            pass
        elif isinstance(e, Unary):
            visit_expr(e.operand)
        elif isinstance(e, Binary):
            visit_expr(e.left)
            visit_expr(e.right)
        elif isinstance(e, Ternary):
            visit_expr(e.cond)
            visit_expr(e.if_true)
            visit_expr(e.if_false)
        elif isinstance(e, Call):
            reads.add(e.method)
            if e.receiver is not None:
                visit_expr(e.receiver)
            for a in e.args:
                visit_expr(a)
        elif isinstance(e, FieldAccess):
            reads.add(e.name)
            visit_expr(e.receiver)
        elif isinstance(e, Assign):
            # A plain-name target is written, not read; compound targets read.
            if not isinstance(e.target, Name):
                visit_expr(e.target)
            visit_expr(e.value)
        elif isinstance(e, New):
            for a in e.args:
                visit_expr(a)

    if isinstance(stmt, LocalVarDecl):
        for d in stmt.declarators:
            if d.init is not None:
                visit_expr(d.init)
    elif isinstance(stmt, ExprStmt):
        visit_expr(stmt.expr)
    return reads


def _throw_capable(stmt: Stmt) -> bool:
    for n in walk(stmt):
        if isinstance(n, (Call, New)):
            return True
        if isinstance(n, Binary) and n.op in ("/", "%"):
            return True
    return False


def _impure(stmt: Stmt, whitelist: frozenset[str]) -> bool:
    for n in walk(stmt):
        if isinstance(n, New):
            return True
        if isinstance(n, Call) and n.method not in whitelist:
            return True
    return False


def reorder_statements(block: Block, whitelist: frozenset[str] | None = None) -> Block:
    """Swap independent adjacent statement pairs; identity when none qualify.

    A pair swaps only when read/write sets are disjoint in both directions, at
    most one side is impure, and at most one side can throw (calls, news,
    division); control flow never moves.
    """
    wl = whitelist if whitelist is not None else _DEFAULT_WHITELIST
    stmts = list(block.stmts)
    out: list[Stmt] = []
    i = 0
    while i < len(stmts):
        if i + 1 < len(stmts) and _swappable(stmts[i], stmts[i + 1], wl):
            out.append(stmts[i + 1])
            out.append(stmts[i])
            i += 2
        else:
            out.append(stmts[i])
            i += 1
    return replace(block, stmts=tuple(out))


def _swappable(s1: Stmt, s2: Stmt, whitelist: frozenset[str]) -> bool:
    if isinstance(s1, _CONTROL_FLOW) or isinstance(s2, _CONTROL_FLOW):
        return False
    w1, w2 = _writes_of_stmt(s1), _writes_of_stmt(s2)
    r1, r2 = _reads_of_stmt(s1), _reads_of_stmt(s2)
    if w1 & (r2 | w2):
        return False
    if w2 & r1:
        return False
    if _impure(s1, whitelist) and _impure(s2, whitelist):
        return False
    if _throw_capable(s1) and _throw_capable(s2):
        return False
    return True


# ---------------------------------------------------------------------------
# Driver
# ---------------------------------------------------------------------------


APPLY_ORDER = (
    TransformRule.IF_FLIP,
    TransformRule.LOOP_CONVERT,
    TransformRule.COND_CONVERT,
    TransformRule.FUNCTION_CHAIN,
    TransformRule.ARGUMENT_PASS,
    TransformRule.CODE_ORDER,
)


def apply_all(
    m: MethodDecl,
    context: SourceFile | None = None,
    whitelist: frozenset[str] | None = None,
) -> tuple[MethodDecl, TransformReport]:
    """Apply every applicable rule once, in the fixed order
    IfFlip, LoopConvert, CondConvert, FunctionChain(split),
    ArgumentPass(extract), CodeOrder.
    """
    report = TransformReport()
    body = m.body
    taken = _names_in(context) if context is not None else _names_in(m)
    fresh = _FreshNames(taken)
    for rule in APPLY_ORDER:
        body = _run_rule(body, rule, fresh, whitelist, report)
    return replace(m, body=body), report


def apply_rule(
    m: MethodDecl,
    rule: TransformRule,
    context: SourceFile | None = None,
    whitelist: frozenset[str] | None = None,
) -> tuple[MethodDecl, TransformReport]:
    """Apply a single rule across a whole method, as apply_all would."""
    report = TransformReport()
    taken = _names_in(context) if context is not None else _names_in(m)
    fresh = _FreshNames(taken)
    body = _run_rule(m.body, rule, fresh, whitelist, report)
    return replace(m, body=body), report


def _run_rule(
    body: Block,
    rule: TransformRule,
    fresh: _FreshNames,
    whitelist: frozenset[str] | None,
    report: TransformReport,
) -> Block:
    wl = whitelist if whitelist is not None else _DEFAULT_WHITELIST
    if rule is TransformRule.IF_FLIP:
        return _pass_if_flip(body, report)
    if rule is TransformRule.LOOP_CONVERT:
        return _pass_loop_convert(body, report)
    if rule is TransformRule.COND_CONVERT:
        return _pass_cond_convert(body, report)
    if rule is TransformRule.FUNCTION_CHAIN:
        return _pass_blockwise(body, lambda b: _pass_chain_split(b, fresh, report))
    if rule is TransformRule.ARGUMENT_PASS:
        return _pass_blockwise(body, lambda b: _pass_extract(b, fresh, report))
    if rule is TransformRule.CODE_ORDER:
        return _pass_reorder(body, wl, report)
    raise ValueError(f"unknown rule {rule!r}")


def _map_nested_blocks(stmt: Stmt, f) -> Stmt:
    """Apply `f` to every block directly nested in this statement."""
    if isinstance(stmt, Block):
        return f(stmt)
    if isinstance(stmt, If):
        orelse = stmt.orelse
        if orelse is not None:
            orelse = _map_nested_blocks(orelse, f)
        return replace(stmt, then=f(stmt.then), orelse=orelse)
    if isinstance(stmt, While):
        return replace(stmt, body=f(stmt.body))
    if isinstance(stmt, For):
        return replace(stmt, body=f(stmt.body))
    if isinstance(stmt, Switch):
        new_cases = []
        for c in stmt.cases:
            body = f(Block(c.body, (), c.span)).stmts
            terminated = bool(body) and isinstance(body[-1], (Break, Return, Throw))
            new_cases.append(replace(c, body=body, terminated=terminated))
        return replace(stmt, cases=tuple(new_cases))
    return stmt


def _pass_blockwise(block: Block, f) -> Block:
    """Outermost-first: transform this block, then recurse into nested blocks."""
    transformed = f(block)
    new_stmts = tuple(
        _map_nested_blocks(s, lambda b: _pass_blockwise(b, f)) for s in transformed.stmts
    )
    return replace(transformed, stmts=new_stmts)


def _pass_if_flip(block: Block, report: TransformReport) -> Block:
    def on_stmt(stmt: Stmt) -> Stmt:
        if isinstance(stmt, If):
            try:
                flipped = flip_if(stmt)
                report.applied.append((TransformRule.IF_FLIP, stmt.span, "condition negated, branches swapped"))
                stmt = flipped
            except NotApplicable as e:
                report.skipped.append((TransformRule.IF_FLIP, stmt.span, e.reason))
        return _map_nested_blocks(stmt, recurse)

    def recurse(block: Block) -> Block:
        return replace(block, stmts=tuple(on_stmt(s) for s in block.stmts))

    return recurse(block)


def _pass_loop_convert(block: Block, report: TransformReport) -> Block:
    def on_stmt(stmt: Stmt) -> Stmt:
        if isinstance(stmt, (For, While)):
            original_span = stmt.span
            direction = "for-to-while" if isinstance(stmt, For) else "while-to-for"
            inner = _map_nested_blocks(stmt, recurse)
            try:
                converted = convert_loop(inner)
                report.applied.append((TransformRule.LOOP_CONVERT, original_span, direction))
                return converted
            except NotApplicable as e:
                report.skipped.append((TransformRule.LOOP_CONVERT, original_span, e.reason))
                return inner
        return _map_nested_blocks(stmt, recurse)

    def recurse(block: Block) -> Block:
        return replace(block, stmts=tuple(on_stmt(s) for s in block.stmts))

    return recurse(block)


def _pass_cond_convert(block: Block, report: TransformReport) -> Block:
    def on_stmt(stmt: Stmt) -> list[Stmt]:
        stmt = _map_nested_blocks(stmt, recurse)
        converted: list[Stmt] | None = None
        is_site = (
            isinstance(stmt, Switch)
            or (isinstance(stmt, If) and _is_equality_chain(stmt))
            or (isinstance(stmt, ExprStmt) and isinstance(stmt.expr, Assign)
                and isinstance(stmt.expr.value, Ternary))
            or (isinstance(stmt, LocalVarDecl) and len(stmt.declarators) == 1
                and isinstance(stmt.declarators[0].init, Ternary))
        )
        if is_site:
            if isinstance(stmt, Switch):
                direction = "switch-to-if-chain"
            elif isinstance(stmt, If):
                direction = "if-chain-to-switch"
            else:
                direction = "ternary-to-if-else"
            try:
                converted = convert_conditional(stmt)
                report.applied.append((TransformRule.COND_CONVERT, stmt.span, direction))
            except NotApplicable as e:
                report.skipped.append((TransformRule.COND_CONVERT, stmt.span, e.reason))
        result = converted if converted is not None else [stmt]
        for out_stmt in result:
            _record_misplaced_ternaries(out_stmt, report)
        return result

    def recurse(block: Block) -> Block:
        new_stmts: list[Stmt] = []
        for s in block.stmts:
            new_stmts.extend(on_stmt(s))
        return replace(block, stmts=tuple(new_stmts))

    return recurse(block)


def _is_equality_chain(stmt: If) -> bool:
    """At least one else-if link and an equality-on-literal first condition."""
    if not isinstance(stmt.orelse, If):
        return False
    labels: list[Literal] = []
    return _equality_labels(stmt.cond, labels) is not None


def _record_misplaced_ternaries(stmt: Stmt, report: TransformReport) -> None:
    """Ternaries anywhere but as a whole assignment/initializer RHS are skipped."""
    holder_exempt: set[int] = set()
    if isinstance(stmt, ExprStmt) and isinstance(stmt.expr, Assign) \
            and isinstance(stmt.expr.value, Ternary):
        holder_exempt.add(id(stmt.expr.value))
    if isinstance(stmt, LocalVarDecl):
        for d in stmt.declarators:
            if isinstance(d.init, Ternary):
                holder_exempt.add(id(d.init))
    for n in walk(stmt):
        if isinstance(n, Ternary) and id(n) not in holder_exempt:
            report.skipped.append(
                (TransformRule.COND_CONVERT, n.span, "nested-ternary-position"))


def _pass_chain_split(block: Block, fresh: _FreshNames, report: TransformReport) -> Block:
    new_stmts: list[Stmt] = []
    for stmt in block.stmts:
        try:
            result, did = _split_stmt(stmt, fresh)
        except NotApplicable as e:
            report.skipped.append((TransformRule.FUNCTION_CHAIN, stmt.span, e.reason))
            result, did = [stmt], False
        if did:
            report.applied.append(
                (TransformRule.FUNCTION_CHAIN, stmt.span, "chain link hoisted into local"))
        new_stmts.extend(result)
    return replace(block, stmts=tuple(new_stmts))


def _pass_extract(block: Block, fresh: _FreshNames, report: TransformReport) -> Block:
    new_stmts: list[Stmt] = []
    for stmt in block.stmts:
        decls, rewritten, skips = _extract_stmt(stmt, fresh)
        for span, reason in skips:
            report.skipped.append((TransformRule.ARGUMENT_PASS, span, reason))
        if decls:
            report.applied.append(
                (TransformRule.ARGUMENT_PASS, stmt.span,
                 f"{len(decls)} argument(s) extracted into locals"))
        new_stmts.extend(decls)
        new_stmts.append(rewritten)
    return replace(block, stmts=tuple(new_stmts))


def _pass_reorder(block: Block, whitelist: frozenset[str], report: TransformReport) -> Block:
    def one_block(b: Block) -> Block:
        reordered = reorder_statements(b, whitelist)
        i = 0
        while i < len(b.stmts):
            if reordered.stmts[i] is not b.stmts[i]:
                report.applied.append(
                    (TransformRule.CODE_ORDER, b.stmts[i].span,
                     "independent adjacent statements swapped"))
                i += 2
            else:
                i += 1
        return reordered

    return _pass_blockwise(block, one_block)
