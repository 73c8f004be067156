"""Finite algebras, builtin families, products, pullbacks, kernels, homomorphisms.

Products index pairs row-major: ``(a, b)`` lives at ``a * len(B) + b``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .terms import Signature

__all__ = [
    "AlgebraError", "FiniteAlgebra", "Homomorphism", "SubsetAlgebra", "PullbackFiber",
    "load_algebra", "dump_algebra", "algebra_from_dict", "algebra_to_dict", "builtin",
    "BUILTIN_FAMILIES", "MAX_BUILTIN_SIZE", "trivial_algebra", "product", "pullback_fiber",
    "kernel", "find_homomorphisms", "is_homomorphism", "identity_hom", "subalgebra_generated",
]

MAX_BUILTIN_SIZE = 12


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteAlgebra:
    name: str
    size: int
    sig: Signature
    tables: dict

    def __post_init__(self):
        if self.size < 1:
            raise AlgebraError(f"{self.name}: size must be positive")
        frozen = {}
        for sym, arity in self.sig.symbols:
            if sym not in self.tables:
                raise AlgebraError(f"{self.name}: missing table for {sym!r}")
            table = np.asarray(self.tables[sym], dtype=np.int64).ravel()
            if table.size != self.size ** arity:
                raise AlgebraError(
                    f"{self.name}: table {sym!r} has {table.size} entries, "
                    f"expected {self.size ** arity}")
            if table.size and (table.min() < 0 or table.max() >= self.size):
                raise AlgebraError(f"{self.name}: table {sym!r} has an out-of-range entry")
            table.setflags(write=False)
            frozen[sym] = table
        extra = set(self.tables) - set(self.sig.names)
        if extra:
            raise AlgebraError(f"{self.name}: tables for undeclared symbols {sorted(extra)}")
        object.__setattr__(self, "tables", frozen)

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"FiniteAlgebra({self.name!r}, size={self.size})"

    def apply(self, sym: str, *args: int) -> int:
        idx = 0
        for a in args:
            idx = idx * self.size + a
        return int(self.tables[sym][idx])

    def constant(self, sym: str | None = None) -> int:
        if sym is None:
            sym = self.sig.default_constant()
        if self.sig.arity(sym) != 0:
            raise AlgebraError(f"{sym!r} is not a constant symbol")
        return int(self.tables[sym][0])

    def same_signature(self, other: "FiniteAlgebra") -> bool:
        return self.sig == other.sig


def algebra_from_dict(doc: dict) -> FiniteAlgebra:
    try:
        decls = doc["signature"]
        symbols = tuple((d["name"], int(d["arity"])) for d in decls)
        constants = frozenset(d["name"] for d in decls if d.get("const", False))
        sig = Signature(symbols, constants)
        return FiniteAlgebra(str(doc["name"]), int(doc["size"]), sig, dict(doc["tables"]))
    except (KeyError, TypeError) as exc:
        raise AlgebraError(f"malformed algebra document: {exc!r}") from exc
    except ValueError as exc:
        if isinstance(exc, AlgebraError):
            raise
        raise AlgebraError(str(exc)) from exc


def algebra_to_dict(A: FiniteAlgebra) -> dict:
    return {
        "name": A.name,
        "size": A.size,
        "signature": [{"name": s, "arity": k, "const": s in A.sig.constants}
                      for s, k in A.sig.symbols],
        "tables": {s: [int(v) for v in A.tables[s]] for s, _ in A.sig.symbols},
    }


def load_algebra(path) -> FiniteAlgebra:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise AlgebraError(f"{path}: not JSON ({exc})") from exc
    return algebra_from_dict(doc)


def dump_algebra(A: FiniteAlgebra, path) -> None:
    Path(path).write_text(json.dumps(algebra_to_dict(A)) + "\n")


# builtin families ----------------------------------------------------------

def _binary(n, f):
    return [f(a, b) for a in range(n) for b in range(n)]


CYCLIC_SIG = Signature((("plus", 2), ("minus", 2), ("zero", 0)), frozenset({"zero"}))
CYCLIC_PLUS_SIG = Signature((("plus", 2), ("zero", 0)), frozenset({"zero"}))
POINTED_SIG = Signature((("zero", 0),), frozenset({"zero"}))
MEET_SIG = Signature((("meet", 2),))
POINTED_MEET_SIG = Signature((("meet", 2), ("zero", 0)), frozenset({"zero"}))
JOIN_SIG = Signature((("join", 2), ("zero", 0)), frozenset({"zero"}))
SUB_SIG = Signature((("sub", 2), ("zero", 0)), frozenset({"zero"}))


def _cyclic(n):
    return FiniteAlgebra(f"cyclic({n})", n, CYCLIC_SIG, {
        "plus": _binary(n, lambda a, b: (a + b) % n),
        "minus": _binary(n, lambda a, b: (a - b) % n),
        "zero": [0],
    })


def _cyclic_plus_only(n):
    return FiniteAlgebra(f"cyclic_plus_only({n})", n, CYCLIC_PLUS_SIG, {
        "plus": _binary(n, lambda a, b: (a + b) % n), "zero": [0]})


def _pointed_set(n):
    return FiniteAlgebra(f"pointed_set({n})", n, POINTED_SIG, {"zero": [0]})


def _chain_semilattice(n, pointed=False, join=False):
    if join:
        return FiniteAlgebra(f"chain_join({n})", n, JOIN_SIG,
                             {"join": _binary(n, max), "zero": [0]})
    if pointed:
        return FiniteAlgebra(f"chain_semilattice({n},pointed)", n, POINTED_MEET_SIG,
                             {"meet": _binary(n, min), "zero": [0]})
    return FiniteAlgebra(f"chain_semilattice({n})", n, MEET_SIG, {"meet": _binary(n, min)})


def _bool_subtraction(n=2):
    if n != 2:
        raise AlgebraError("bool_subtraction only exists at size 2")
    return FiniteAlgebra("bool_subtraction", 2, SUB_SIG,
                         {"sub": _binary(2, lambda a, b: a & (1 - b)), "zero": [0]})


BUILTIN_FAMILIES = {
    "cyclic": _cyclic,
    "cyclic_plus_only": _cyclic_plus_only,
    "pointed_set": _pointed_set,
    "chain_semilattice": _chain_semilattice,
    "chain_join": lambda n: _chain_semilattice(n, join=True),
    "bool_subtraction": _bool_subtraction,
}


def builtin(family: str, n: int = 2, **options) -> FiniteAlgebra:
    """Builtin algebra of the given family and size (1 <= n <= 12).

    ``cyclic``: Z_n with plus, minus, zero.  ``cyclic_plus_only``: Z_n with plus,
    zero.  ``pointed_set``: only the constant zero.  ``chain_semilattice``: the
    chain 0 < ... < n-1 under meet (min); ``pointed=True`` adds zero = 0.
    ``chain_join``: the chain under join (max) with zero = 0.
    ``bool_subtraction``: {0, 1} with sub(x, y) = x and not y, zero = 0.
    """
    try:
        make = BUILTIN_FAMILIES[family]
    except KeyError:
        raise AlgebraError(f"unknown family {family!r}") from None
    if not 1 <= n <= MAX_BUILTIN_SIZE:
        raise AlgebraError(f"size {n} outside 1..{MAX_BUILTIN_SIZE}")
    return make(n, **options)


def trivial_algebra(sig: Signature) -> FiniteAlgebra:
    return FiniteAlgebra("trivial", 1, sig, {s: [0] for s, _ in sig.symbols})


# morphisms and subsets -----------------------------------------------------

def is_homomorphism(dom: FiniteAlgebra, cod: FiniteAlgebra, mapping: Sequence[int]) -> bool:
    if dom.sig != cod.sig or len(mapping) != dom.size:
        return False
    if any(not 0 <= v < cod.size for v in mapping):
        return False
    m = np.asarray(mapping, dtype=np.int64)
    for sym, arity in dom.sig.symbols:
        coords = [g.ravel() for g in np.indices((dom.size,) * arity, dtype=np.int64)]
        idx = np.zeros(dom.size ** arity, dtype=np.int64)
        for c in coords:
            idx = idx * cod.size + m[c]
        if not np.array_equal(m[dom.tables[sym]], cod.tables[sym][idx]):
            return False
    return True


@dataclass(frozen=True, eq=False)
class Homomorphism:
    dom: FiniteAlgebra
    cod: FiniteAlgebra
    map: tuple

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(v) for v in self.map))
        if not is_homomorphism(self.dom, self.cod, self.map):
            raise AlgebraError(f"{self.map} is not a homomorphism "
                               f"{self.dom.name} -> {self.cod.name}")

    def __call__(self, a: int) -> int:
        return self.map[a]

    def __eq__(self, other):
        return (isinstance(other, Homomorphism) and self.dom is other.dom
                and self.cod is other.cod and self.map == other.map)

    def __hash__(self):
        return hash((id(self.dom), id(self.cod), self.map))

    def __repr__(self):
        return f"Homomorphism({self.dom.name} -> {self.cod.name}, {list(self.map)})"

    def compose(self, first: "Homomorphism") -> "Homomorphism":
        """``self`` after ``first``."""
        return Homomorphism(first.dom, self.cod, [self.map[v] for v in first.map])

    def image(self) -> set[int]:
        return set(self.map)

    def is_surjective(self) -> bool:
        return len(self.image()) == self.cod.size

    def is_injective(self) -> bool:
        return len(self.image()) == self.dom.size

    def fiber(self, b: int) -> list[int]:
        return [a for a, v in enumerate(self.map) if v == b]


def identity_hom(A: FiniteAlgebra) -> Homomorphism:
    return Homomorphism(A, A, range(A.size))


def _is_closed(A: FiniteAlgebra, elements: Iterable[int]) -> bool:
    members = np.zeros(A.size, dtype=bool)
    members[list(elements)] = True
    sub = np.flatnonzero(members)
    for sym, arity in A.sig.symbols:
        if arity == 0:
            if not members[A.tables[sym][0]]:
                return False
            continue
        for args in itertools.product(sub.tolist(), repeat=arity):
            if not members[A.apply(sym, *args)]:
                return False
    return True


@dataclass(frozen=True, eq=False)
class SubsetAlgebra:
    parent: FiniteAlgebra
    elements: tuple

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(sorted(set(int(e) for e in self.elements))))
        if not _is_closed(self.parent, self.elements):
            raise AlgebraError(f"subset {list(self.elements)} of {self.parent.name} "
                               "is not closed under the operations")

    def __len__(self):
        return len(self.elements)

    def __contains__(self, a):
        return a in self._positions

    def __iter__(self):
        return iter(self.elements)

    @property
    def _positions(self):
        pos = self.__dict__.get("_pos")
        if pos is None:
            pos = {e: i for i, e in enumerate(self.elements)}
            object.__setattr__(self, "_pos", pos)
        return pos

    def position(self, a: int) -> int:
        return self._positions[a]

    def compact(self, name: str | None = None) -> FiniteAlgebra:
        """The subalgebra renumbered 0..m-1 in increasing parent order."""
        A = self.parent
        pos = self._positions
        tables = {}
        for sym, arity in A.sig.symbols:
            tables[sym] = [pos[A.apply(sym, *args)]
                           for args in itertools.product(self.elements, repeat=arity)]
        return FiniteAlgebra(name or f"sub({A.name})", len(self.elements), A.sig, tables)

    @property
    def inclusion(self) -> Homomorphism:
        cached = self.__dict__.get("_incl")
        if cached is None:
            cached = Homomorphism(self.compact(), self.parent, self.elements)
            object.__setattr__(self, "_incl", cached)
        return cached


def subalgebra_generated(A: FiniteAlgebra, generators: Iterable[int]) -> SubsetAlgebra:
    current = set(generators)
    for sym, arity in A.sig.symbols:
        if arity == 0:
            current.add(A.apply(sym))
    while True:
        new = set()
        elems = sorted(current)
        for sym, arity in A.sig.symbols:
            if arity == 0:
                continue
            for args in itertools.product(elems, repeat=arity):
                v = A.apply(sym, *args)
                if v not in current:
                    new.add(v)
        if not new:
            return SubsetAlgebra(A, current)
        current |= new


# products and limits -------------------------------------------------------

def product(A: FiniteAlgebra, B: FiniteAlgebra):
    """Direct product with row-major carrier and its two projections."""
    if not A.same_signature(B):
        raise AlgebraError(f"signature mismatch: {A.name} vs {B.name}")
    n, m = A.size, B.size
    tables = {}
    for sym, arity in A.sig.symbols:
        coords = [g.ravel() for g in np.indices((n * m,) * arity, dtype=np.int64)]
        ia = np.zeros(len(coords[0]) if coords else 1, dtype=np.int64)
        ib = np.zeros_like(ia)
        for c in coords:
            ia = ia * n + c // m
            ib = ib * m + c % m
        tables[sym] = A.tables[sym][ia] * m + B.tables[sym][ib]
    P = FiniteAlgebra(f"{A.name}x{B.name}", n * m, A.sig, tables)
    pi1 = Homomorphism(P, A, [i // m for i in range(n * m)])
    pi2 = Homomorphism(P, B, [i % m for i in range(n * m)])
    return P, pi1, pi2


@dataclass(frozen=True, eq=False)
class PullbackFiber(SubsetAlgebra):
    """Pairs ``(a, e)`` with ``alpha(a) == f(e)``, kept inside ``A x E``."""

    left: FiniteAlgebra = field(default=None)
    right: FiniteAlgebra = field(default=None)

    def pair(self, idx: int) -> tuple[int, int]:
        return divmod(idx, self.right.size)

    def index(self, a: int, e: int) -> int:
        return a * self.right.size + e

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return [self.pair(i) for i in self.elements]

    def projections(self):
        """Restrictions of the product projections to the compacted fiber."""
        C = self.inclusion.dom
        pi1 = Homomorphism(C, self.left, [self.pair(i)[0] for i in self.elements])
        pi2 = Homomorphism(C, self.right, [self.pair(i)[1] for i in self.elements])
        return pi1, pi2


def pullback_fiber(alpha: Homomorphism, f: Homomorphism) -> PullbackFiber:
    if alpha.cod is not f.cod and not (alpha.cod.sig == f.cod.sig
                                       and alpha.cod.size == f.cod.size):
        raise AlgebraError("pullback needs a common codomain")
    A, E = alpha.dom, f.dom
    P, _, _ = product(A, E)
    elems = [a * E.size + e for a in range(A.size) for e in range(E.size)
             if alpha(a) == f(e)]
    return PullbackFiber(P, elems, left=A, right=E)


def kernel(alpha: Homomorphism, zero_B: int | None = None) -> SubsetAlgebra:
    """``alpha^-1(zero_B)``; ``zero_B`` defaults to the first constant's value in the codomain."""
    if not alpha.dom.sig.pointed:
        raise AlgebraError("kernel needs a pointed signature")
    if zero_B is None:
        zero_B = alpha.cod.constant()
    return SubsetAlgebra(alpha.dom, alpha.fiber(zero_B))


# homomorphism search -------------------------------------------------------

def find_homomorphisms(A: FiniteAlgebra, B: FiniteAlgebra, limit: int | None = None
                       ) -> list[Homomorphism]:
    """All homomorphisms A -> B in lexicographic order of the map array.

    Depth-first over elements 0..|A|-1.  After each assignment every table
    entry whose arguments are all assigned is propagated, which either
    forces an image or refutes the branch.
    """
    if not A.same_signature(B):
        raise AlgebraError(f"signature mismatch: {A.name} vs {B.name}")
    n = A.size
    # constraints: (result element, symbol, argument tuple) for every table entry
    entries = []
    for sym, arity in A.sig.symbols:
        for args in itertools.product(range(n), repeat=arity):
            entries.append((A.apply(sym, *args), sym, args))
    by_element: dict[int, list] = {a: [] for a in range(n)}
    for ent in entries:
        res, _, args = ent
        for a in set(args) | {res}:
            by_element[a].append(ent)
    ground = [ent for ent in entries if not ent[2]]

    def propagate(img: list, queue: list) -> bool:
        while queue:
            a = queue.pop()
            for res, sym, args in by_element[a]:
                if any(img[x] < 0 for x in args):
                    continue
                val = B.apply(sym, *(img[x] for x in args))
                if img[res] < 0:
                    img[res] = val
                    queue.append(res)
                elif img[res] != val:
                    return False
        return True

    start = [-1] * n
    for res, sym, _ in ground:
        val = B.apply(sym)
        if start[res] >= 0 and start[res] != val:
            return []
        start[res] = val
    if not propagate(start, [res for res, _, _ in ground]):
        return []

    found: list[Homomorphism] = []

    def search(img: list, pos: int) -> bool:
        while pos < n and img[pos] >= 0:
            pos += 1
        if pos == n:
            found.append(Homomorphism(A, B, img))
            return limit is not None and len(found) >= limit
        for v in range(B.size):
            trial = img.copy()
            trial[pos] = v
            if propagate(trial, [pos]) and search(trial, pos + 1):
                return True
        return False

    search(start, 0)
    return found
