"""Project-wide synonym renaming and token-level patch recovery.

A rename plan maps every project-declared identifier to a synonym-assembled
replacement, recorded in a bidirectional dictionary that is persisted as JSON
so patches written against the renamed code can be translated back. External
(library) names are never touched.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from importlib import resources
from typing import Callable, Optional

from .errors import ExhaustedCandidates, StaleDictionary
from .identifiers import (
    EXTERNAL,
    IdentifierTable,
    PRIMITIVE_TYPES,
    convention,
    tokenize_identifier,
)
from .lexer import IDENT, tokenize
from .nodes import (
    Assign,
    Binary,
    Block,
    Call,
    ClassDecl,
    Declarator,
    Expr,
    ExprStmt,
    FieldAccess,
    FieldDecl,
    For,
    If,
    Import,
    LocalVarDecl,
    MethodDecl,
    Name,
    New,
    Param,
    Return,
    SourceFile,
    Stmt,
    Switch,
    SwitchCase,
    Ternary,
    Throw,
    Unary,
    While,
)

RESERVED_WORDS = frozenset(
    """abstract assert boolean break byte case catch char class const continue
    default do double else enum extends final finally float for goto if
    implements import instanceof int interface long native new package private
    protected public return short static strictfp super switch synchronized
    this throw throws transient try void volatile while true false null var
    record yield sealed permits""".split()
)

CAMEL = "camel"
SNAKE = "snake"
PASCAL = "pascal"


@dataclass(frozen=True)
class SynonymLexicon:
    """word -> ranked synonym candidates, all lowercase, best first."""

    words: dict[str, tuple[str, ...]]

    def __post_init__(self):
        for word, candidates in self.words.items():
            if word != word.lower():
                raise ValueError(f"lexicon word {word!r} is not lowercase")
            if not candidates:
                raise ValueError(f"lexicon word {word!r} has no candidates")
            if candidates[0] == word:
                raise ValueError(f"lexicon word {word!r} maps to itself first")
            for c in candidates:
                if c != c.lower():
                    raise ValueError(f"candidate {c!r} for {word!r} is not lowercase")

    @classmethod
    def load(cls, path: str | None = None) -> "SynonymLexicon":
        """Load a TSV lexicon (word<TAB>syn,syn,...); bundled file by default."""
        if path is not None:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        else:
            text = resources.files("vmorph.data").joinpath("synonyms.tsv").read_text("utf-8")
        words: dict[str, tuple[str, ...]] = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.rstrip()
            if not line or line.startswith("#"):
                continue
            if "\t" not in line:
                raise ValueError(f"lexicon line {lineno}: expected word<TAB>synonyms")
            word, _, raw = line.partition("\t")
            candidates = tuple(s.strip() for s in raw.split(",") if s.strip())
            words[word.strip()] = candidates
        return cls(words)


def propose_synonyms(tokens: list[str], lexicon: SynonymLexicon) -> list[list[str]]:
    """One ranked candidate list per token; unknown tokens pass through."""
    return [list(lexicon.words.get(tok, (tok,))) for tok in tokens]


def assemble_identifier(tokens: list[str], convention: str) -> str:
    if not tokens:
        raise ValueError("cannot assemble an identifier from no tokens")
    if convention == SNAKE:
        return "_".join(tokens)
    if convention == CAMEL:
        return tokens[0] + "".join(t.capitalize() for t in tokens[1:])
    if convention == PASCAL:
        return "".join(t.capitalize() for t in tokens)
    raise ValueError(f"unknown convention {convention!r}")


@dataclass(frozen=True)
class RenameDictionary:
    forward: dict[str, str]
    backward: dict[str, str]
    kinds: dict[str, str]

    @classmethod
    def build(cls, forward: dict[str, str], kinds: dict[str, str]) -> "RenameDictionary":
        backward: dict[str, str] = {}
        for orig, new in forward.items():
            if new in RESERVED_WORDS:
                raise ValueError(f"new identifier {new!r} is a reserved word")
            if new in backward:
                raise ValueError(f"forward map is not injective at {new!r}")
            backward[new] = orig
        return cls(dict(forward), backward, dict(kinds))

    def to_json_dict(self) -> dict:
        return {
            "forward": dict(sorted(self.forward.items())),
            "kinds": dict(sorted(self.kinds.items())),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def loads(cls, text: str) -> "RenameDictionary":
        data = json.loads(text)
        return cls.build(data["forward"], data.get("kinds", {}))

    def inverted(self) -> "RenameDictionary":
        kinds = {new: self.kinds.get(orig, "variable") for orig, new in self.forward.items()}
        return RenameDictionary(dict(self.backward), dict(self.forward), kinds)


ReviewHook = Callable[[str, str], Optional[str]]


def build_rename_plan(
    table: IdentifierTable,
    lexicon: SynonymLexicon,
    review: ReviewHook | None = None,
) -> RenameDictionary:
    """Assign a fresh synonym-derived name to every project-origin entry.

    Collisions (against every name in the table, reserved words, and names
    already assigned) are resolved by advancing to the next-ranked synonym of
    the last token, then by numeric suffixing. A review hook may accept, edit,
    or skip each proposal.
    """
    taken: set[str] = set(table.entries) | set(RESERVED_WORDS)
    forward: dict[str, str] = {}
    kinds: dict[str, str] = {}

    for name in table.project_names():
        entry = table.entries[name]
        tokens = tokenize_identifier(name)
        conv = convention(name)
        candidates = propose_synonyms(tokens, lexicon)

        attempts: list[list[str]] = []
        first_choice = [c[0] for c in candidates]
        attempts.append(first_choice)
        for alt in candidates[-1][1:]:
            attempts.append(first_choice[:-1] + [alt])

        chosen: str | None = None
        for words in attempts:
            candidate = assemble_identifier(words, conv)
            if candidate not in taken:
                chosen = candidate
                break
        if chosen is None:
            base = assemble_identifier(first_choice, conv)
            chosen = _suffixed(base, taken, name)

        if review is not None:
            decision = review(name, chosen)
            if decision is None:
                continue
            if decision != chosen:
                chosen = decision if decision not in taken else _suffixed(decision, taken, name)

        forward[name] = chosen
        kinds[name] = entry.kind
        taken.add(chosen)

    return RenameDictionary.build(forward, kinds)


def _suffixed(base: str, taken: set[str], original: str) -> str:
    for i in range(2, 10_000):
        candidate = f"{base}{i}"
        if candidate not in taken:
            return candidate
    raise ExhaustedCandidates(original)


# ---------------------------------------------------------------------------
# Applying a dictionary
# ---------------------------------------------------------------------------


def apply_rename(project: list[SourceFile], dct: RenameDictionary) -> list[SourceFile]:
    """Replace every occurrence of each forward-mapped identifier project-wide.

    The tree shape is untouched; only identifier payloads change. Raises
    StaleDictionary if a key occurs nowhere in the project.
    """
    if dct.forward:
        occurring: set[str] = set()
        for src in project:
            _occurring_names(src, occurring)
        for key in sorted(dct.forward):
            if key not in occurring:
                raise StaleDictionary(key)
    mapping = dct.forward
    return [_rename_file(src, mapping) for src in project]


def _map_name(name: str, mapping: dict[str, str]) -> str:
    return mapping.get(name, name)


def _map_type(type_name: str, mapping: dict[str, str]) -> str:
    """Rename the class position (last segment) of a possibly dotted type."""
    head, dot, tail = type_name.rpartition(".")
    if tail in PRIMITIVE_TYPES:
        return type_name
    return head + dot + mapping.get(tail, tail)


def _occurring_names(src: SourceFile, out: set[str]) -> None:
    from .nodes import walk

    for imp in src.imports:
        out.add(imp.name.rsplit(".", 1)[-1])
    for node in walk(src):
        if isinstance(node, ClassDecl):
            out.add(node.name)
        elif isinstance(node, MethodDecl):
            out.add(node.name)
            if node.return_type:
                out.add(node.return_type.rsplit(".", 1)[-1])
        elif isinstance(node, Param):
            out.add(node.name)
            out.add(node.type_name.rsplit(".", 1)[-1])
        elif isinstance(node, (FieldDecl, LocalVarDecl)):
            out.add(node.type_name.rsplit(".", 1)[-1])
        elif isinstance(node, Declarator):
            out.add(node.name)
        elif isinstance(node, Name):
            out.add(node.id)
        elif isinstance(node, Call):
            out.add(node.method)
        elif isinstance(node, FieldAccess):
            out.add(node.name)
        elif isinstance(node, New):
            out.add(node.type_name.rsplit(".", 1)[-1])


def _rename_file(src: SourceFile, mapping: dict[str, str]) -> SourceFile:
    imports = tuple(
        replace(
            imp,
            name=(lambda head, dot, tail: head + dot + _map_name(tail, mapping))(
                *imp.name.rpartition(".")
            ),
        )
        if not imp.wildcard
        else imp
        for imp in src.imports
    )
    types = tuple(_rename_class(cls, mapping) for cls in src.types)
    return replace(src, imports=imports, types=types)


def _rename_class(cls: ClassDecl, mapping: dict[str, str]) -> ClassDecl:
    members = []
    for member in cls.members:
        if isinstance(member, MethodDecl):
            members.append(_rename_method(member, mapping))
        else:
            members.append(_rename_field(member, mapping))
    return replace(cls, name=_map_name(cls.name, mapping), members=tuple(members))


def _rename_field(f: FieldDecl, mapping: dict[str, str]) -> FieldDecl:
    return replace(
        f,
        type_name=_map_type(f.type_name, mapping),
        declarators=tuple(_rename_declarator(d, mapping) for d in f.declarators),
    )


def _rename_declarator(d: Declarator, mapping: dict[str, str]) -> Declarator:
    return replace(
        d,
        name=_map_name(d.name, mapping),
        init=_rename_expr(d.init, mapping) if d.init is not None else None,
    )


def _rename_method(m: MethodDecl, mapping: dict[str, str]) -> MethodDecl:
    return replace(
        m,
        name=_map_name(m.name, mapping),
        params=tuple(
            replace(p, type_name=_map_type(p.type_name, mapping),
                    name=_map_name(p.name, mapping))
            for p in m.params
        ),
        return_type=_map_type(m.return_type, mapping) if m.return_type else m.return_type,
        body=_rename_block(m.body, mapping),
    )


def _rename_block(b: Block, mapping: dict[str, str]) -> Block:
    return replace(b, stmts=tuple(_rename_stmt(s, mapping) for s in b.stmts))


def _rename_stmt(stmt: Stmt, mapping: dict[str, str]) -> Stmt:
    if isinstance(stmt, Block):
        return _rename_block(stmt, mapping)
    if isinstance(stmt, If):
        orelse = stmt.orelse
        if orelse is not None:
            orelse = _rename_stmt(orelse, mapping)
        return replace(stmt, cond=_rename_expr(stmt.cond, mapping),
                       then=_rename_block(stmt.then, mapping), orelse=orelse)
    if isinstance(stmt, While):
        return replace(stmt, cond=_rename_expr(stmt.cond, mapping),
                       body=_rename_block(stmt.body, mapping))
    if isinstance(stmt, For):
        return replace(
            stmt,
            init=_rename_stmt(stmt.init, mapping) if stmt.init is not None else None,
            cond=_rename_expr(stmt.cond, mapping) if stmt.cond is not None else None,
            update=_rename_expr(stmt.update, mapping) if stmt.update is not None else None,
            body=_rename_block(stmt.body, mapping),
        )
    if isinstance(stmt, Switch):
        cases = tuple(
            replace(c, body=tuple(_rename_stmt(s, mapping) for s in c.body))
            for c in stmt.cases
        )
        return replace(stmt, scrutinee=_rename_expr(stmt.scrutinee, mapping), cases=cases)
    if isinstance(stmt, LocalVarDecl):
        return replace(
            stmt,
            type_name=_map_type(stmt.type_name, mapping),
            declarators=tuple(_rename_declarator(d, mapping) for d in stmt.declarators),
        )
    if isinstance(stmt, ExprStmt):
        return replace(stmt, expr=_rename_expr(stmt.expr, mapping))
    if isinstance(stmt, Return):
        if stmt.value is None:
            return stmt
        return replace(stmt, value=_rename_expr(stmt.value, mapping))
    if isinstance(stmt, Throw):
        return replace(stmt, expr=_rename_expr(stmt.expr, mapping))
    return stmt  # Break / Continue


def _rename_expr(expr: Expr, mapping: dict[str, str]) -> Expr:
    if isinstance(expr, Name):
        return replace(expr, id=_map_name(expr.id, mapping))
    if isinstance(expr, Unary):
        return replace(expr, operand=_rename_expr(expr.operand, mapping))
    if isinstance(expr, Binary):
        return replace(expr, left=_rename_expr(expr.left, mapping),
                       right=_rename_expr(expr.right, mapping))
    if isinstance(expr, Ternary):
        return replace(expr, cond=_rename_expr(expr.cond, mapping),
                       if_true=_rename_expr(expr.if_true, mapping),
                       if_false=_rename_expr(expr.if_false, mapping))
    if isinstance(expr, Call):
        return replace(
            expr,
            receiver=_rename_expr(expr.receiver, mapping) if expr.receiver else None,
            method=_map_name(expr.method, mapping),
            args=tuple(_rename_expr(a, mapping) for a in expr.args),
        )
    if isinstance(expr, FieldAccess):
        return replace(expr, receiver=_rename_expr(expr.receiver, mapping),
                       name=_map_name(expr.name, mapping))
    if isinstance(expr, Assign):
        return replace(expr, target=_rename_expr(expr.target, mapping),
                       value=_rename_expr(expr.value, mapping))
    if isinstance(expr, New):
        return replace(expr, type_name=_map_type(expr.type_name, mapping),
                       args=tuple(_rename_expr(a, mapping) for a in expr.args))
    return expr  # Literal


# ---------------------------------------------------------------------------
# Patch recovery
# ---------------------------------------------------------------------------


def recover_patch(patch_text: str, dct: RenameDictionary) -> str:
    """Translate a patch written against renamed code back to original names.

    Token-level: identifier tokens found in the backward map are substituted,
    everything else (keywords, literals, comments, layout) is preserved
    byte-for-byte. The text must lex as subset tokens but need not parse.
    """
    out: list[str] = []
    last = 0
    for tok in tokenize(patch_text, "<patch>"):
        if tok.kind == IDENT and tok.text in dct.backward:
            out.append(patch_text[last : tok.start_off])
            out.append(dct.backward[tok.text])
            last = tok.end_off
    out.append(patch_text[last:])
    return "".join(out)
