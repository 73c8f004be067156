"""Signatures, terms, parsing, substitution and evaluation on finite algebras.

Signature text grammar::

    signature := decl ("," decl)*          (newlines act like commas)
    decl      := NAME "/" ARITY ["const"]

Term text grammar::

    term := VAR | NAME | NAME "(" [term ("," term)*] ")"
    VAR  := "x" DIGITS

Variables are indexed (``x0, x1, ...``); symbol names may not look like
variables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

__all__ = [
    "ParseError", "Signature", "Var", "App", "Term", "Identity", "IdentityCheck",
    "parse_signature", "parse_term", "format_term", "term_arity", "variables",
    "substitute", "eval_term", "term_table", "check_identity", "assignment_at",
]

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_VAR = re.compile(r"x(\d+)\Z")


class ParseError(ValueError):
    """Malformed signature or term text.

    ``kind`` is one of ``syntax``, ``duplicate-name``, ``negative-arity``,
    ``unknown-symbol``, ``arity-mismatch``, ``unbound-token``.
    """

    def __init__(self, kind: str, message: str, line: int | None = None):
        self.kind = kind
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{kind}: {message}")


@dataclass(frozen=True)
class Signature:
    symbols: tuple[tuple[str, int], ...]
    constants: frozenset[str] = frozenset()

    def __post_init__(self):
        arities = {}
        for name, arity in self.symbols:
            if name in arities:
                raise ParseError("duplicate-name", f"symbol {name!r} declared twice")
            if arity < 0:
                raise ParseError("negative-arity", f"symbol {name!r} has arity {arity}")
            arities[name] = arity
        for c in self.constants:
            if arities.get(c) != 0:
                raise ValueError(f"constant {c!r} must be declared with arity 0")
        object.__setattr__(self, "_arities", arities)

    def arity(self, name: str) -> int:
        try:
            return self._arities[name]
        except KeyError:
            raise KeyError(f"unknown symbol {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._arities

    @property
    def names(self) -> list[str]:
        return [name for name, _ in self.symbols]

    @property
    def pointed(self) -> bool:
        return bool(self.constants)

    def default_constant(self) -> str:
        """First designated constant in declaration order."""
        for name, _ in self.symbols:
            if name in self.constants:
                return name
        raise ValueError("signature has no designated constant")

    def __str__(self):
        parts = []
        for name, arity in self.symbols:
            parts.append(f"{name}/{arity}" + (" const" if name in self.constants else ""))
        return ", ".join(parts)


@dataclass(frozen=True)
class Var:
    index: int

    def __str__(self):
        return f"x{self.index}"


@dataclass(frozen=True)
class App:
    symbol: str
    args: tuple = field(default=())

    def __post_init__(self):
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))

    def __str__(self):
        return format_term(self)


Term = Union[Var, App]


def parse_signature(text: str) -> Signature:
    symbols: list[tuple[str, int]] = []
    constants = set()
    seen: dict[str, int] = {}
    for lineno, line in enumerate(text.splitlines() or [""], start=1):
        line = line.split("#", 1)[0]
        for chunk in line.split(","):
            chunk = chunk.strip()
            if not chunk:
                continue
            m = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_]*)\s*/\s*(-?\d+)(\s+const)?", chunk)
            if m is None:
                raise ParseError("syntax", f"cannot read declaration {chunk!r}", lineno)
            name, arity, const = m.group(1), int(m.group(2)), m.group(3)
            if _VAR.match(name):
                raise ParseError("syntax", f"{name!r} is reserved for variables", lineno)
            if name in seen:
                raise ParseError("duplicate-name",
                                 f"{name!r} already declared on line {seen[name]}", lineno)
            if arity < 0:
                raise ParseError("negative-arity", f"{name!r} has arity {arity}", lineno)
            if const and arity != 0:
                raise ParseError("syntax", f"constant {name!r} must have arity 0", lineno)
            seen[name] = lineno
            symbols.append((name, arity))
            if const:
                constants.add(name)
    return Signature(tuple(symbols), frozenset(constants))


_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|(\()|(\))|(,)|(\S))")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        if m.group(5) is not None:
            raise ParseError("unbound-token", f"unexpected character {m.group(5)!r} at {m.start(5)}")
        tokens.append(m.group(m.lastindex))
        pos = m.end()
    return tokens


def parse_term(text: str, sig: Signature) -> Term:
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("syntax", "empty term")
    pos = 0

    def parse() -> Term:
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError("syntax", "unexpected end of term")
        tok = tokens[pos]
        pos += 1
        var = _VAR.match(tok)
        if var:
            return Var(int(var.group(1)))
        if not _NAME.match(tok):
            raise ParseError("unbound-token", f"unexpected {tok!r}")
        if tok not in sig:
            raise ParseError("unknown-symbol", f"{tok!r} is not in the signature")
        args = []
        if pos < len(tokens) and tokens[pos] == "(":
            pos += 1
            if pos < len(tokens) and tokens[pos] == ")":
                pos += 1
            else:
                while True:
                    args.append(parse())
                    if pos >= len(tokens):
                        raise ParseError("syntax", "missing ')'")
                    if tokens[pos] == ",":
                        pos += 1
                        continue
                    if tokens[pos] == ")":
                        pos += 1
                        break
                    raise ParseError("unbound-token", f"unexpected {tokens[pos]!r}")
        if len(args) != sig.arity(tok):
            raise ParseError("arity-mismatch",
                             f"{tok!r} takes {sig.arity(tok)} arguments, got {len(args)}")
        return App(tok, tuple(args))

    term = parse()
    if pos != len(tokens):
        raise ParseError("unbound-token", f"trailing input starting at {tokens[pos]!r}")
    return term


def format_term(t: Term) -> str:
    if isinstance(t, Var):
        return f"x{t.index}"
    if not t.args:
        return t.symbol
    return f"{t.symbol}({','.join(format_term(a) for a in t.args)})"


def variables(t: Term) -> set[int]:
    if isinstance(t, Var):
        return {t.index}
    out: set[int] = set()
    for a in t.args:
        out |= variables(a)
    return out


def term_arity(t: Term) -> int:
    """One more than the largest variable index (0 for ground terms)."""
    vs = variables(t)
    return max(vs) + 1 if vs else 0


def substitute(t: Term, args: Sequence[Term], arity: int | None = None) -> Term:
    """Simultaneously replace ``x_i`` by ``args[i]``.

    ``arity`` is the declared variable count of ``t``; it defaults to
    ``term_arity(t)`` and must equal ``len(args)``.
    """
    if arity is None:
        arity = term_arity(t)
    if len(args) != arity or term_arity(t) > arity:
        raise ValueError(f"substitution needs {arity} arguments, got {len(args)}")
    args = tuple(args)

    def go(s: Term) -> Term:
        if isinstance(s, Var):
            return args[s.index]
        return App(s.symbol, tuple(go(a) for a in s.args))

    return go(t)


def eval_term(t: Term, algebra, assignment: Sequence[int]) -> int:
    if isinstance(t, Var):
        return assignment[t.index]
    vals = [eval_term(a, algebra, assignment) for a in t.args]
    idx = 0
    for v in vals:
        idx = idx * algebra.size + v
    return int(algebra.tables[t.symbol][idx])


def _grid(size: int, k: int) -> list[np.ndarray]:
    if k == 0:
        return []
    return [g.ravel() for g in np.indices((size,) * k, dtype=np.int64)]


def term_table(t: Term, algebra, k: int) -> np.ndarray:
    """Values of ``t`` on all ``size**k`` assignments, row-major with x0 most significant."""
    if term_arity(t) > k:
        raise ValueError(f"term uses variables beyond x{k - 1}")
    n = algebra.size
    coords = _grid(n, k)
    length = n ** k
    cache: dict = {}

    def go(s: Term) -> np.ndarray:
        if isinstance(s, Var):
            return coords[s.index]
        if s in cache:
            return cache[s]
        table = algebra.tables[s.symbol]
        if not s.args:
            out = np.full(length, table[0], dtype=np.int64)
        else:
            idx = np.zeros(length, dtype=np.int64)
            for a in s.args:
                idx = idx * n + go(a)
            out = table[idx].astype(np.int64)
        cache[s] = out
        return out

    return go(t)


def assignment_at(index: int, size: int, k: int) -> tuple[int, ...]:
    out = []
    for _ in range(k):
        index, r = divmod(index, size)
        out.append(r)
    return tuple(reversed(out))


@dataclass(frozen=True)
class Identity:
    lhs: Term
    rhs: Term
    var_count: int
    name: str = ""

    def __post_init__(self):
        if max(term_arity(self.lhs), term_arity(self.rhs)) > self.var_count:
            raise ValueError("identity uses variables beyond its declared count")

    def __str__(self):
        return f"{format_term(self.lhs)} = {format_term(self.rhs)}"


@dataclass(frozen=True)
class IdentityCheck:
    holds: bool
    counterexample: tuple[int, ...] | None = None

    def __bool__(self):
        return self.holds


def check_identity(algebra, identity: Identity) -> IdentityCheck:
    """Exhaustive check; a failure carries the lexicographically least counterexample."""
    k = identity.var_count
    lhs = term_table(identity.lhs, algebra, k)
    rhs = term_table(identity.rhs, algebra, k)
    bad = np.flatnonzero(lhs != rhs)
    if bad.size == 0:
        return IdentityCheck(True)
    return IdentityCheck(False, assignment_at(int(bad[0]), algebra.size, k))
