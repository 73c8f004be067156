"""Split epimorphisms, split extensions and their set-level decompositions.

The maps built here (phi, psi, lambda, fiber bijections, general tau/gamma
components) are plain functions between finite sets; they are not expected
to preserve any operation.  Every verification returns a
:class:`Certificate`: a list of named pointwise checks, each with the least
counterexample in the documented row-major order.

Index conventions: ``K x B`` is indexed ``position_in_K * |B| + b`` where
``K`` is sorted ascending; ``(A x_B E) x B`` is ``position_in_fiber * |B| + b``;
``E x A`` is ``e * |A| + a``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from . import identities as ids
from .algebra import (FiniteAlgebra, Homomorphism, SubsetAlgebra, find_homomorphisms,
                      kernel, pullback_fiber)
from .terms import Term, check_identity, term_table

__all__ = [
    "DecompositionError", "SetMap", "Check", "Certificate", "SplitEpi", "SplitExtension",
    "SplExtMorphism", "enumerate_split_epis", "split_extension", "phi_pointed",
    "psi_pointed", "verify_splext_morphism", "phi_general", "fiber_bijection",
    "general_component", "check_naturality", "splext_morphisms", "pointed_decomposition",
]


class DecompositionError(ValueError):
    """A witness produced a value outside the set it must land in."""

    def __init__(self, message: str, element=None):
        self.element = element
        super().__init__(message)


@dataclass(frozen=True)
class SetMap:
    values: tuple
    cod_size: int
    dom_labels: tuple | None = None
    cod_labels: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if any(not 0 <= v < self.cod_size for v in self.values):
            raise ValueError("SetMap value out of range")

    @property
    def dom_size(self) -> int:
        return len(self.values)

    def __call__(self, i: int) -> int:
        return self.values[i]

    def __len__(self):
        return len(self.values)

    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)

    def is_bijective(self) -> bool:
        return self.dom_size == self.cod_size and self.is_injective()

    def compose(self, first: "SetMap") -> "SetMap":
        """``self`` after ``first``."""
        if first.cod_size != self.dom_size:
            raise ValueError("maps do not compose")
        return SetMap([self.values[v] for v in first.values], self.cod_size,
                      first.dom_labels, self.cod_labels)

    def as_dict(self) -> dict:
        dom = self.dom_labels or range(self.dom_size)
        cod = self.cod_labels
        return {d: (cod[v] if cod else v) for d, v in zip(dom, self.values)}


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    counterexample: list | None = None

    def to_dict(self) -> dict:
        return {"name": self.name, "pass": bool(self.passed),
                "counterexample": None if self.counterexample is None
                else [int(v) for v in self.counterexample]}


@dataclass
class Certificate:
    name: str
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self):
        return self.passed

    def add(self, name: str, failures: Iterable) -> Check:
        """Record a check from an iterable of counterexamples (empty means pass)."""
        bad = next(iter(failures), None)
        check = Check(name, bad is None, None if bad is None else list(bad))
        self.checks.append(check)
        return check

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_list(self, prefix: bool = True) -> list[dict]:
        out = []
        for c in self.checks:
            d = c.to_dict()
            if prefix:
                d["name"] = f"{self.name}:{c.name}"
            out.append(d)
        return out


# split epimorphisms and extensions -----------------------------------------

@dataclass(frozen=True, eq=False)
class SplitEpi:
    A: FiniteAlgebra
    B: FiniteAlgebra
    alpha: Homomorphism
    beta: Homomorphism

    def __post_init__(self):
        if self.alpha.dom is not self.A or self.alpha.cod is not self.B:
            raise ValueError("alpha must go A -> B")
        if self.beta.dom is not self.B or self.beta.cod is not self.A:
            raise ValueError("beta must go B -> A")
        if any(self.alpha(self.beta(b)) != b for b in range(self.B.size)):
            raise ValueError("alpha beta is not the identity on B")

    def __repr__(self):
        return (f"SplitEpi({self.A.name} -> {self.B.name}, alpha={list(self.alpha.map)}, "
                f"beta={list(self.beta.map)})")


@dataclass(frozen=True, eq=False)
class SplitExtension:
    base: SplitEpi
    K: SubsetAlgebra

    @property
    def A(self):
        return self.base.A

    @property
    def B(self):
        return self.base.B

    @property
    def alpha(self):
        return self.base.alpha

    @property
    def beta(self):
        return self.base.beta

    @property
    def kappa(self) -> Homomorphism:
        return self.K.inclusion

    def kb_index(self, k: int, b: int) -> int:
        return self.K.position(k) * self.B.size + b

    def kb_pair(self, idx: int) -> tuple[int, int]:
        pos, b = divmod(idx, self.B.size)
        return self.K.elements[pos], b

    @property
    def kb_labels(self) -> tuple:
        return tuple((k, b) for k in self.K.elements for b in range(self.B.size))

    def __repr__(self):
        return f"SplitExtension({self.base!r}, K={list(self.K.elements)})"


def split_extension(s: SplitEpi) -> SplitExtension:
    return SplitExtension(s, kernel(s.alpha))


def enumerate_split_epis(A: FiniteAlgebra, B: FiniteAlgebra, limit: int | None = None
                         ) -> list[SplitEpi]:
    """All (alpha, beta) with alpha beta = 1_B, ordered by alpha then beta."""
    if B.size > A.size:
        return []
    sections = find_homomorphisms(B, A)
    out = []
    for alpha in find_homomorphisms(A, B):
        if not alpha.is_surjective():
            continue
        for beta in sections:
            if all(alpha(beta(b)) == b for b in range(B.size)):
                out.append(SplitEpi(A, B, alpha, beta))
                if limit is not None and len(out) >= limit:
                    return out
    return out


# pointed decomposition -----------------------------------------------------

def _binary_table(t: Term, A: FiniteAlgebra) -> np.ndarray:
    return term_table(t, A, 2)


def phi_pointed(ext: SplitExtension, plus: Term) -> SetMap:
    """phi(k, b) = kappa(k) + beta(b) on K x B."""
    A, B = ext.A, ext.B
    table = _binary_table(plus, A)
    values = [table[k * A.size + ext.beta(b)] for k in ext.K.elements for b in range(B.size)]
    return SetMap(values, A.size, ext.kb_labels, None)


def psi_pointed(ext: SplitExtension, minus: Term) -> tuple[SetMap, SetMap]:
    """psi(a) = (lambda(a), alpha(a)) with kappa lambda(a) = a - beta alpha(a).

    Raises :class:`DecompositionError` naming the first ``a`` whose
    ``lambda(a)`` falls outside the kernel.
    """
    A, B = ext.A, ext.B
    table = _binary_table(minus, A)
    lam = []
    for a in range(A.size):
        v = int(table[a * A.size + ext.beta(ext.alpha(a))])
        if v not in ext.K:
            raise DecompositionError(f"lambda({a}) = {v} is not in the kernel", a)
        lam.append(ext.K.position(v))
    lam_map = SetMap(lam, len(ext.K), None, ext.K.elements)
    psi = SetMap([lam[a] * B.size + ext.alpha(a) for a in range(A.size)],
                 len(ext.K) * B.size, None, ext.kb_labels)
    return psi, lam_map


def verify_splext_morphism(phi: SetMap, ext: SplitExtension) -> Certificate:
    """alpha phi = pi2, phi<0,1> = beta, phi<1,0> = kappa, and bijectivity."""
    A, B = ext.A, ext.B
    zero_a = A.constant()
    zero_b = B.constant()
    cert = Certificate("splext_morphism")
    cert.add("alpha.phi=pi2",
             ([k, b] for (k, b), v in zip(ext.kb_labels, phi.values) if ext.alpha(v) != b))
    cert.add("phi.<0,1>=beta",
             ([b] for b in range(B.size) if phi(ext.kb_index(zero_a, b)) != ext.beta(b))
             if zero_a in ext.K else [[-1]])
    cert.add("phi.<1,0>=kappa",
             ([k] for k in ext.K.elements if phi(ext.kb_index(k, zero_b)) != k))
    cert.add("bijective", _bijectivity_failures(phi, ext.kb_labels))
    return cert


def _bijectivity_failures(phi: SetMap, labels: Sequence) -> Iterable:
    if phi.dom_size != phi.cod_size:
        yield [phi.dom_size, phi.cod_size]
        return
    seen = set()
    for i, v in enumerate(phi.values):
        if v in seen:
            lab = labels[i] if labels else i
            yield list(lab) if isinstance(lab, tuple) else [lab]
            return
        seen.add(v)


def pointed_decomposition(ext: SplitExtension, plus: Term, minus: Term) -> Certificate:
    """phi and psi from a right-loop pair, checked to be inverse and a split-extension map."""
    phi = phi_pointed(ext, plus)
    cert = verify_splext_morphism(phi, ext)
    cert.name = "pointed_decomposition"
    try:
        psi, _ = psi_pointed(ext, minus)
    except DecompositionError as exc:
        cert.add("psi.lands_in_K", [[exc.element]])
        return cert
    cert.add("psi.lands_in_K", [])
    cert.add("psi.phi=1", ([k, b] for i, (k, b) in enumerate(ext.kb_labels)
                           if psi(phi(i)) != i))
    cert.add("phi.psi=1", ([a] for a in range(ext.A.size)
                           if phi.dom_size == psi.cod_size and phi(psi(a)) != a))
    cert.add("|A|=|K||B|", [] if ext.A.size == len(ext.K) * ext.B.size
             else [[ext.A.size, len(ext.K), ext.B.size]])
    return cert


# general decomposition -----------------------------------------------------

def phi_general(s: SplitEpi, f: Homomorphism, p: Term, q: Term):
    """phi((a,e),b) = (e, p(a, beta f(e), beta b)); psi(e,a) = ((q(a, beta alpha a, beta f e), e), alpha a).

    Returns ``(phi, psi, certificate)``; ``psi`` is ``None`` when some
    q-value leaves the pullback fiber (recorded in the certificate).
    """
    A, B, E = s.A, s.B, f.dom
    if f.cod is not B:
        raise ValueError("f must land in the base of the split epimorphism")
    fiber = pullback_fiber(s.alpha, f)
    pt = term_table(p, A, 3)
    qt = term_table(q, A, 3)
    nA = A.size

    def ev(table, a, b, c):
        return int(table[(a * nA + b) * nA + c])

    beta, alpha = s.beta, s.alpha
    dom_labels = tuple((a, e, b) for (a, e) in fiber.pairs for b in range(B.size))
    phi_vals = [e * nA + ev(pt, a, beta(f(e)), beta(b)) for (a, e, b) in dom_labels]
    phi = SetMap(phi_vals, E.size * nA, dom_labels,
                 tuple((e, a) for e in range(E.size) for a in range(nA)))

    cert = Certificate("phi_general")
    psi_vals = []
    bad = None
    for e in range(E.size):
        for a in range(nA):
            a2 = ev(qt, a, beta(alpha(a)), beta(f(e)))
            if alpha(a2) != f(e):
                bad = bad or [e, a]
                psi_vals.append(0)
                continue
            psi_vals.append(fiber.position(fiber.index(a2, e)) * B.size + alpha(a))
    cert.add("psi.lands_in_fiber", [bad] if bad else [])
    psi = SetMap(psi_vals, len(dom_labels), phi.cod_labels, dom_labels) if bad is None else None

    cert.add("(1xalpha).phi=(pi2x1)",
             (list(lab) for lab, val in zip(dom_labels, phi.values)
              if divmod(val, nA)[0] != lab[1] or alpha(divmod(val, nA)[1]) != lab[2]))
    cert.add("phi.(<beta f,1>x1)=1xbeta",
             ([e, b] for e in range(E.size) for b in range(B.size)
              if phi(fiber.position(fiber.index(beta(f(e)), e)) * B.size + b)
              != e * nA + beta(b)))
    if psi is None:
        for name in ("psi.phi=1", "phi.psi=1", "(pi2x1).psi=1xalpha",
                     "psi.(1xbeta)=<beta f,1>x1"):
            cert.add(name, [bad])
        return phi, psi, cert
    cert.add("psi.phi=1", (list(lab) for i, lab in enumerate(dom_labels) if psi(phi(i)) != i))
    cert.add("phi.psi=1", ([e, a] for e in range(E.size) for a in range(nA)
                           if phi(psi(e * nA + a)) != e * nA + a))
    cert.add("(pi2x1).psi=1xalpha",
             ([e, a] for e in range(E.size) for a in range(nA)
              if dom_labels[psi(e * nA + a)][1:] != (e, alpha(a))))
    cert.add("psi.(1xbeta)=<beta f,1>x1",
             ([e, b] for e in range(E.size) for b in range(B.size)
              if dom_labels[psi(e * nA + beta(b))] != (beta(f(e)), e, b)))
    return phi, psi, cert


def fiber_bijection(f: Homomorphism, p: Term, b: int, b2: int, e: int, e2: int):
    """x -> p(x, e, e2) from f^-1(b) to f^-1(b2).

    Returns ``(map, certificate)``; the map is ``None`` if some image leaves
    the target fiber.
    """
    if not f.is_surjective():
        raise ValueError("fiber_bijection needs a surjective homomorphism")
    if f(e) != b or f(e2) != b2:
        raise ValueError("e and e2 must lie over b and b2")
    E = f.dom
    src, tgt = f.fiber(b), f.fiber(b2)
    table = term_table(p, E, 3)
    images = [int(table[(x * E.size + e) * E.size + e2]) for x in src]
    cert = Certificate("fiber_bijection")
    cert.add("image_in_target", ([x] for x, v in zip(src, images) if f(v) != b2))
    if not cert.passed:
        cert.add("bijective", [[-1]])
        return None, cert
    pos = {v: i for i, v in enumerate(tgt)}
    m = SetMap([pos[v] for v in images], len(tgt), tuple(src), tuple(tgt))
    cert.add("bijective", _bijectivity_failures(m, src))
    return m, cert


def general_component(theta_list: Sequence[Term], rho: Term, sigma_list: Sequence[Term],
                      s: SplitEpi, m: int, composites: bool = True):
    """tau: V -> W from rho and gamma: W -> V from sigma, at one split epi.

    V = (A^n x_{alpha^n, theta_B} B^m) x B, listed lexicographically by
    (a_1..a_n, y_1..y_m, b); W = B^m x A, lexicographic in (y, a).
    tau(a, y, b) = (y, rho(a, beta y, beta b)) and
    gamma(y, a) = (sigma(beta y, a, beta alpha a), y, alpha a).
    Returns ``(tau, gamma, certificate)``; ``gamma`` is ``None`` when some
    sigma-value leaves V.
    """
    A, B, alpha, beta = s.A, s.B, s.alpha, s.beta
    n = len(sigma_list)
    if n == 0 or len(theta_list) != n:
        raise ValueError("need matching non-empty theta and sigma lists")
    nA, nB = A.size, B.size
    theta_B = [term_table(th, B, m) for th in theta_list]
    rho_t = term_table(rho, A, n + m + 1)
    sig_t = [term_table(sg, A, m + 2) for sg in sigma_list]

    def idx(vals, base):
        out = 0
        for v in vals:
            out = out * base + v
        return out

    pull = []
    for avec in itertools.product(range(nA), repeat=n):
        for yvec in itertools.product(range(nB), repeat=m):
            ty = idx(yvec, nB)
            if all(alpha(avec[i]) == int(theta_B[i][ty]) for i in range(n)):
                pull.append((avec, yvec))
    V = [(avec, yvec, b) for (avec, yvec) in pull for b in range(nB)]
    W = [(yvec, a) for yvec in itertools.product(range(nB), repeat=m) for a in range(nA)]
    v_pos = {v: i for i, v in enumerate(V)}
    w_pos = {w: i for i, w in enumerate(W)}

    cert = Certificate("general_component")
    cert.add("V_nonempty", [] if V else [[0]])
    forms = ids.generalized(rho, sigma_list, theta_list, m)
    for key in ("addition", "subtraction"):
        for ident in forms[key]:
            res = check_identity(A, ident)
            cert.add(f"{key}:{ident.name}", [] if res.holds else [res.counterexample])

    def tau_of(v):
        avec, yvec, b = v
        by = tuple(beta(yy) for yy in yvec)
        return (yvec, int(rho_t[idx(avec + by + (beta(b),), nA)]))

    tau = SetMap([w_pos[tau_of(v)] for v in V], len(W), tuple(V), tuple(W)) if V else None

    gamma_vals = []
    bad = None
    for yvec, a in W:
        by = tuple(beta(yy) for yy in yvec)
        ba = beta(alpha(a))
        avec = tuple(int(t[idx(by + (a, ba), nA)]) for t in sig_t)
        key = (avec, yvec, alpha(a))
        if key not in v_pos:
            bad = bad or [*yvec, a]
            gamma_vals.append(0)
        else:
            gamma_vals.append(v_pos[key])
    cert.add("gamma.lands_in_V", [bad] if bad else [])
    gamma = SetMap(gamma_vals, len(V), tuple(W), tuple(V)) if bad is None and V else None

    if tau is not None:
        cert.add("(1xalpha).tau=pi2x1",
                 ([*a_, *y_, b] for (a_, y_, b), i in zip(V, tau.values)
                  if W[i][0] != y_ or alpha(W[i][1]) != b))
        cert.add("tau.section=1xbeta",
                 ([*y_, b] for y_ in itertools.product(range(nB), repeat=m) for b in range(nB)
                  if tau(v_pos[(tuple(beta(int(t[idx(y_, nB)])) for t in theta_B), y_, b)])
                  != w_pos[(y_, beta(b))]))
    if gamma is not None:
        cert.add("(pi2x1).gamma=1xalpha",
                 ([*y_, a] for (y_, a), i in zip(W, gamma.values)
                  if V[i][1:] != (y_, alpha(a))))
        cert.add("gamma.(1xbeta)=section",
                 ([*y_, b] for y_ in itertools.product(range(nB), repeat=m) for b in range(nB)
                  if gamma(w_pos[(y_, beta(b))])
                  != v_pos[(tuple(beta(int(t[idx(y_, nB)])) for t in theta_B), y_, b)]))
    if composites:
        if tau is not None and gamma is not None:
            cert.add("tau.gamma=1_W", ([*y_, a] for i, (y_, a) in enumerate(W)
                                       if tau(gamma(i)) != i))
            cert.add("gamma.tau=1_V", ([*a_, *y_, b] for i, (a_, y_, b) in enumerate(V)
                                       if gamma(tau(i)) != i))
        else:
            cert.add("tau.gamma=1_W", [[-1]])
            cert.add("gamma.tau=1_V", [[-1]])
    return tau, gamma, cert


# naturality ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SplExtMorphism:
    """(u, v, w) with u given on kernel elements as a dict K -> K'."""

    u: dict
    v: Homomorphism
    w: Homomorphism


def splext_morphisms(ext1: SplitExtension, ext2: SplitExtension,
                     limit: int | None = None) -> list[SplExtMorphism]:
    """All morphisms of split extensions ext1 -> ext2.

    v ranges over homomorphisms A -> A', w over B -> B'; the pair must satisfy
    alpha' v = w alpha and v beta = beta' w, and u is v restricted to K.
    """
    out = []
    ws = find_homomorphisms(ext1.B, ext2.B)
    for v in find_homomorphisms(ext1.A, ext2.A):
        for w in ws:
            if any(ext2.alpha(v(a)) != w(ext1.alpha(a)) for a in range(ext1.A.size)):
                continue
            if any(v(ext1.beta(b)) != ext2.beta(w(b)) for b in range(ext1.B.size)):
                continue
            u = {k: v(k) for k in ext1.K.elements}
            out.append(SplExtMorphism(u, v, w))
            if limit is not None and len(out) >= limit:
                return out
    return out


def check_naturality(ext1: SplitExtension, ext2: SplitExtension, morphism: SplExtMorphism,
                     component_builder: Callable[[SplitExtension], SetMap]) -> Certificate:
    """phi' (u x w) = v phi on K x B, after validating the morphism equations."""
    u, v, w = morphism.u, morphism.v, morphism.w
    cert = Certificate("naturality")
    cert.add("v.kappa=kappa'.u",
             ([k] for k in ext1.K.elements if k not in u or u[k] not in ext2.K or v(k) != u[k]))
    cert.add("alpha'.v=w.alpha",
             ([a] for a in range(ext1.A.size) if ext2.alpha(v(a)) != w(ext1.alpha(a))))
    cert.add("v.beta=beta'.w",
             ([b] for b in range(ext1.B.size) if v(ext1.beta(b)) != ext2.beta(w(b))))
    if not cert.passed:
        return cert
    phi1 = component_builder(ext1)
    phi2 = component_builder(ext2)
    cert.add("phi'.(uxw)=v.phi",
             ([k, b] for k in ext1.K.elements for b in range(ext1.B.size)
              if phi2(ext2.kb_index(u[k], w(b))) != v(phi1(ext1.kb_index(k, b)))))
    return cert
