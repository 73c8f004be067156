"""Term-operation clones of finite algebras and witness search over them.

A clone at arity k is computed as the subalgebra of A^(A^k) generated by
the k projections.  Every element keeps the first (shallowest) term that
produced it, so anything found by a search comes with a certificate that
can be re-checked by plain term evaluation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import ClassVar

import numpy as np

from . import identities as ids
from .terms import App, Term, Var, check_identity, format_term, term_table

__all__ = [
    "DEFAULT_CAP", "MAX_PROTOMODULAR_N", "CloneElement", "CloneSet", "generate_clone",
    "CloneCache", "SearchResult", "Witness", "Maltsev", "Biternary", "RightLoop", "Unital",
    "Subtraction", "RhoSigma", "Protomodular", "find_maltsev", "find_biternary",
    "find_right_loop", "find_unital", "find_subtraction", "find_rho_sigma",
    "find_protomodular",
]

DEFAULT_CAP = 200_000
MAX_PROTOMODULAR_N = 3


@dataclass(frozen=True, eq=False)
class CloneElement:
    arity: int
    table: np.ndarray
    witness: Term

    def __repr__(self):
        return f"CloneElement({format_term(self.witness)}, arity={self.arity})"


@dataclass(eq=False)
class CloneSet:
    algebra: object
    arity: int
    elements: list
    cap: int
    status: str  # "complete" | "truncated"

    def __len__(self):
        return len(self.elements)

    @property
    def complete(self) -> bool:
        return self.status == "complete"

    @property
    def matrix(self) -> np.ndarray:
        m = self.__dict__.get("_matrix")
        if m is None:
            length = self.algebra.size ** self.arity
            m = (np.stack([e.table for e in self.elements]) if self.elements
                 else np.zeros((0, length), dtype=np.int64))
            self.__dict__["_matrix"] = m
        return m

    def tables(self) -> set[tuple[int, ...]]:
        return {tuple(int(v) for v in e.table) for e in self.elements}


def _coords(size: int, k: int) -> list[np.ndarray]:
    return [g.ravel() for g in np.indices((size,) * k, dtype=np.int64)] if k else []


def generate_clone(A, k: int, cap: int = DEFAULT_CAP) -> CloneSet:
    """Breadth-first closure of the k projections under the basic operations.

    Each pass applies every operation to every tuple of elements known at the
    start of the pass that involves at least one element added by the
    previous pass.  Tuples are visited in lexicographic order so the result
    is deterministic.  ``k == 0`` gives the values of constant-only terms.
    """
    if k < 0:
        raise ValueError("arity must be non-negative")
    if cap < k:
        raise ValueError("cap must be at least the arity")
    n = A.size
    length = n ** k
    tables: list[np.ndarray] = []
    witnesses: list[Term] = []
    seen: dict[bytes, int] = {}

    def add(table: np.ndarray, witness: Term) -> bool:
        key = table.tobytes()
        if key in seen:
            return True
        if len(tables) >= cap:
            return False
        table = table.copy()
        table.setflags(write=False)
        seen[key] = len(tables)
        tables.append(table)
        witnesses.append(witness)
        return True

    for i, c in enumerate(_coords(n, k)):
        add(c.copy(), Var(i))

    status = "complete"
    frontier = 0
    first = True
    while True:
        snapshot = len(tables)
        T = np.stack(tables) if tables else np.zeros((0, length), dtype=np.int64)
        wit = list(witnesses)
        for sym, r in A.sig.symbols:
            op = A.tables[sym]
            if r == 0:
                if first and not add(np.full(length, op[0], dtype=np.int64), App(sym, ())):
                    status = "truncated"
                continue
            for prefix in itertools.product(range(snapshot), repeat=r - 1):
                lo = 0 if any(i >= frontier for i in prefix) else frontier
                if lo >= snapshot:
                    continue
                base = np.zeros(length, dtype=np.int64)
                for i in prefix:
                    base = base * n + T[i]
                rows = op[base[None, :] * n + T[lo:snapshot]]
                for j, row in enumerate(rows):
                    if row.tobytes() in seen:
                        continue
                    args = tuple(wit[i] for i in prefix) + (wit[lo + j],)
                    if not add(row, App(sym, args)):
                        status = "truncated"
                        break
                if status == "truncated":
                    break
            if status == "truncated":
                break
        first = False
        if status == "truncated" or len(tables) == snapshot:
            break
        frontier = snapshot

    elements = [CloneElement(k, t, w) for t, w in zip(tables, witnesses)]
    return CloneSet(A, k, elements, cap, status)


class CloneCache:
    """Clones of one algebra by arity, computed on first use."""

    def __init__(self, A, cap: int = DEFAULT_CAP):
        self.algebra = A
        self.cap = cap
        self._clones: dict[int, CloneSet] = {}

    def __getitem__(self, k: int) -> CloneSet:
        if k not in self._clones:
            self._clones[k] = generate_clone(self.algebra, k, self.cap)
        return self._clones[k]

    def summary(self) -> dict[int, dict]:
        return {k: {"size": len(c), "status": c.status} for k, c in sorted(self._clones.items())}


# witnesses -----------------------------------------------------------------

class Witness:
    kind: ClassVar[str]

    def identities(self) -> list:
        raise NotImplementedError

    def named_terms(self) -> list[tuple[str, Term, int]]:
        """(role, term, arity) triples."""
        raise NotImplementedError

    def terms(self) -> list[str]:
        return [format_term(t) for _, t, _ in self.named_terms()]

    def tables(self, A) -> list[list[int]]:
        return [term_table(t, A, k).tolist() for _, t, k in self.named_terms()]


@dataclass(frozen=True)
class Maltsev(Witness):
    p: Term
    kind: ClassVar[str] = "maltsev"

    def identities(self):
        return ids.maltsev(self.p)

    def named_terms(self):
        return [("p", self.p, 3)]


@dataclass(frozen=True)
class Biternary(Witness):
    p: Term
    q: Term
    kind: ClassVar[str] = "biternary"

    def identities(self):
        return ids.biternary(self.p, self.q)

    def named_terms(self):
        return [("p", self.p, 3), ("q", self.q, 3)]


@dataclass(frozen=True)
class RightLoop(Witness):
    plus: Term
    minus: Term
    zero: str
    kind: ClassVar[str] = "right_loop"

    def identities(self):
        return ids.right_loop(self.plus, self.minus, self.zero)

    def named_terms(self):
        return [("plus", self.plus, 2), ("minus", self.minus, 2)]


@dataclass(frozen=True)
class Unital(Witness):
    plus: Term
    zero: str
    kind: ClassVar[str] = "unital"

    def identities(self):
        return ids.unital(self.plus, self.zero)

    def named_terms(self):
        return [("plus", self.plus, 2)]


@dataclass(frozen=True)
class Subtraction(Witness):
    s: Term
    zero: str
    kind: ClassVar[str] = "subtraction"

    def identities(self):
        return ids.subtraction(self.s, self.zero)

    def named_terms(self):
        return [("s", self.s, 2)]


@dataclass(frozen=True)
class RhoSigma(Witness):
    rho: Term
    sigma: Term
    zero: str
    kind: ClassVar[str] = "rho_sigma"

    def identities(self):
        return ids.rho_sigma(self.rho, self.sigma, self.zero)

    def named_terms(self):
        return [("rho", self.rho, 2), ("sigma", self.sigma, 2)]


@dataclass(frozen=True)
class Protomodular(Witness):
    n: int
    e_list: tuple
    s_list: tuple
    p: Term
    bijective: bool = False
    kind: ClassVar[str] = "protomodular"

    def identities(self):
        return ids.protomodular(self.e_list, self.s_list, self.p, self.bijective)

    def named_terms(self):
        out = [(f"e{i + 1}", e, 0) for i, e in enumerate(self.e_list)]
        out += [(f"s{i + 1}", s, 2) for i, s in enumerate(self.s_list)]
        out.append(("p", self.p, self.n + 1))
        return out


@dataclass
class SearchResult:
    status: str  # "found" | "absent" | "unknown"
    witness: Witness | None = None
    clones: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.status == "found"


def _cache(A, cap, clones):
    if clones is None:
        return CloneCache(A, cap)
    if clones.algebra is not A:
        raise ValueError("clone cache belongs to another algebra")
    return clones


def _certify(A, witness: Witness) -> Witness:
    for ident in witness.identities():
        if not check_identity(A, ident).holds:
            raise AssertionError(f"witness failed {ident.name} on {A.name}: internal error")
    return witness


def _finish(A, cache, arities, witness):
    info = {k: {"size": len(cache[k]), "status": cache[k].status} for k in arities}
    if witness is not None:
        return SearchResult("found", _certify(A, witness), info)
    if all(cache[k].complete for k in arities):
        return SearchResult("absent", None, info)
    return SearchResult("unknown", None, info)


def _zero(A, zero: str | None) -> str:
    if not A.sig.pointed:
        raise ValueError(f"{A.name} has no designated constant")
    if zero is None:
        return A.sig.default_constant()
    if zero not in A.sig.constants:
        raise ValueError(f"{zero!r} is not a designated constant of {A.name}")
    return zero


def _first(mask: np.ndarray) -> int | None:
    hits = np.flatnonzero(mask)
    return int(hits[0]) if hits.size else None


def find_maltsev(A, cap: int = DEFAULT_CAP, clones: CloneCache | None = None) -> SearchResult:
    cache = _cache(A, cap, clones)
    C = cache[3]
    n = A.size
    X, Y = _coords(n, 2)
    T = C.matrix
    mask = ((T[:, (X * n + X) * n + Y] == Y).all(axis=1)
            & (T[:, (X * n + Y) * n + Y] == X).all(axis=1))
    i = _first(mask)
    witness = Maltsev(C.elements[i].witness) if i is not None else None
    return _finish(A, cache, [3], witness)


def find_biternary(A, cap: int = DEFAULT_CAP, clones: CloneCache | None = None
                   ) -> SearchResult:
    """First ordered pair (p, q) with p(x,x,y)=y and p, q mutually inverse.

    The implied law q(x,x,y)=y is re-checked on every hit.
    """
    cache = _cache(A, cap, clones)
    C = cache[3]
    n = A.size
    X2, Y2 = _coords(n, 2)
    X, Y, Z = _coords(n, 3)
    T = C.matrix
    zy = Z * n + Y
    p_ok = (T[:, (X2 * n + X2) * n + Y2] == Y2).all(axis=1)
    witness = None
    for pi in np.flatnonzero(p_ok):
        p = T[pi]
        inv1 = (p[T * n * n + zy[None, :]] == X).all(axis=1)
        inv2 = (T[:, p * n * n + zy] == X).all(axis=1)
        qi = _first(inv1 & inv2)
        if qi is not None:
            witness = Biternary(C.elements[pi].witness, C.elements[qi].witness)
            break
    if witness is not None:
        for ident in ids.biternary_implied(witness.q):
            if not check_identity(A, ident).holds:
                raise AssertionError("q(x,x,y)=y failed for a biternary witness")
    return _finish(A, cache, [3], witness)


def find_right_loop(A, cap: int = DEFAULT_CAP, zero: str | None = None,
                    clones: CloneCache | None = None) -> SearchResult:
    zero = _zero(A, zero)
    o = A.constant(zero)
    cache = _cache(A, cap, clones)
    C = cache[2]
    n = A.size
    X, Y = _coords(n, 2)
    x1 = np.arange(n)
    T = C.matrix
    plus_ok = (T[:, x1 * n + o] == x1).all(axis=1)
    minus_ok = (T[:, x1 * n + x1] == o).all(axis=1)
    minus_idx = np.flatnonzero(minus_ok)
    M = T[minus_idx]
    witness = None
    for pi in np.flatnonzero(plus_ok):
        plus = T[pi]
        cancel1 = (M[:, plus * n + Y] == X).all(axis=1)
        cancel2 = (plus[M * n + Y[None, :]] == X).all(axis=1)
        j = _first(cancel1 & cancel2)
        if j is not None:
            witness = RightLoop(C.elements[pi].witness, C.elements[minus_idx[j]].witness, zero)
            break
    return _finish(A, cache, [2], witness)


def find_unital(A, cap: int = DEFAULT_CAP, zero: str | None = None,
                clones: CloneCache | None = None) -> SearchResult:
    zero = _zero(A, zero)
    o = A.constant(zero)
    cache = _cache(A, cap, clones)
    C = cache[2]
    n = A.size
    x1 = np.arange(n)
    T = C.matrix
    mask = (T[:, x1 * n + o] == x1).all(axis=1) & (T[:, o * n + x1] == x1).all(axis=1)
    i = _first(mask)
    witness = Unital(C.elements[i].witness, zero) if i is not None else None
    return _finish(A, cache, [2], witness)


def find_subtraction(A, cap: int = DEFAULT_CAP, zero: str | None = None,
                     clones: CloneCache | None = None) -> SearchResult:
    zero = _zero(A, zero)
    o = A.constant(zero)
    cache = _cache(A, cap, clones)
    C = cache[2]
    n = A.size
    x1 = np.arange(n)
    T = C.matrix
    mask = (T[:, x1 * n + x1] == o).all(axis=1) & (T[:, x1 * n + o] == x1).all(axis=1)
    i = _first(mask)
    witness = Subtraction(C.elements[i].witness, zero) if i is not None else None
    return _finish(A, cache, [2], witness)


def find_rho_sigma(A, cap: int = DEFAULT_CAP, zero: str | None = None,
                   clones: CloneCache | None = None) -> SearchResult:
    zero = _zero(A, zero)
    o = A.constant(zero)
    cache = _cache(A, cap, clones)
    C = cache[2]
    n = A.size
    X, Y = _coords(n, 2)
    x1 = np.arange(n)
    T = C.matrix
    rho_ok = (T[:, o * n + x1] == x1).all(axis=1) & (T[:, x1 * n + o] == x1).all(axis=1)
    sigma_ok = (T[:, x1 * n + x1] == o).all(axis=1) & (T[:, x1 * n + o] == x1).all(axis=1)
    sigma_idx = np.flatnonzero(sigma_ok)
    S = T[sigma_idx]
    witness = None
    for ri in np.flatnonzero(rho_ok):
        rho = T[ri]
        back1 = (rho[S * n + Y[None, :]] == X).all(axis=1)
        back2 = (S[:, rho * n + Y] == X).all(axis=1)
        j = _first(back1 & back2)
        if j is not None:
            witness = RhoSigma(C.elements[ri].witness, C.elements[sigma_idx[j]].witness, zero)
            break
    return _finish(A, cache, [2], witness)


def find_protomodular(A, n: int = 1, cap: int = DEFAULT_CAP, bijective: bool = False,
                      clones: CloneCache | None = None) -> SearchResult:
    """Constants e_i, binary s_i and an (n+1)-ary p with s_i(x,x)=e_i and
    p(s_1(x,z),...,s_n(x,z),z)=x; with ``bijective`` also
    s_i(p(x_1,...,x_n,y),y)=x_i.

    Tuples (s_1..s_n) are scanned in lexicographic clone order; a tuple is
    skipped when x -> (s_1(x,z),...,s_n(x,z)) is not injective for some z,
    since no p can then recover x.
    """
    if not 1 <= n <= MAX_PROTOMODULAR_N:
        raise ValueError(f"protomodular type must be in 1..{MAX_PROTOMODULAR_N}")
    if not A.sig.constants:
        raise ValueError(f"{A.name} has no constants")
    cache = _cache(A, cap, clones)
    size = A.size
    consts = cache[0]
    const_terms = {int(e.table[0]): e.witness for e in consts.elements}
    C2 = cache[2]
    X, Z = _coords(size, 2)
    x1 = np.arange(size)
    T2 = C2.matrix
    diag = T2[:, x1 * size + x1]
    is_const = (diag == diag[:, :1]).all(axis=1) if size else np.zeros(0, bool)
    candidates = [i for i in np.flatnonzero(is_const) if int(diag[i, 0]) in const_terms]

    witness = None
    Cp = None
    for combo in itertools.product(candidates, repeat=n):
        col = np.zeros(size * size, dtype=np.int64)
        for i in combo:
            col = col * size + T2[i]
        col = col * size + Z
        if np.unique(col).size != size * size:
            continue
        if Cp is None:
            Cp = cache[n + 1]
            P = Cp.matrix
            coords = _coords(size, n + 1)
        mask = (P[:, col] == X).all(axis=1)
        if bijective and mask.any():
            for pos, i in enumerate(combo):
                back = T2[i][P * size + coords[n][None, :]]
                mask &= (back == coords[pos]).all(axis=1)
        j = _first(mask)
        if j is not None:
            s_list = tuple(C2.elements[i].witness for i in combo)
            e_list = tuple(const_terms[int(diag[i, 0])] for i in combo)
            witness = Protomodular(n, e_list, s_list, Cp.elements[j].witness, bijective)
            break
    # with no admissible s-tuple the (n+1)-ary clone is never needed
    arities = [0, 2] + ([n + 1] if Cp is not None else [])
    return _finish(A, cache, arities, witness)
