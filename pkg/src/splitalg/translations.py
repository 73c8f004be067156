"""Constructive term-to-term translations between witness systems.

Every translation is purely syntactic.  ``verify`` checks a named identity
set on a concrete algebra; truth is always relative to a model.

Input terms are expected to use their variables densely (a ternary term
mentions x2).  Pass ``strict=False`` to accept terms that ignore some of
their arguments, e.g. projections found by a clone search.
"""

from __future__ import annotations

from typing import Sequence

from . import identities as ids
from .terms import App, Identity, Signature, Term, Var, check_identity, substitute, term_arity

__all__ = [
    "ArityError", "tilde_from_pq", "u_from_tilde", "pq_from_u", "loop_from_tilde",
    "pq_from_loop", "loop_from_rho_sigma", "protomodular_from_rho_sigma",
    "check_gamma_tau_identity_set", "verify", "IDENTITY_SETS",
]

x, y, z = Var(0), Var(1), Var(2)


class ArityError(ValueError):
    pass


def _need(term: Term, arity: int, role: str, strict: bool) -> None:
    actual = term_arity(term)
    if actual > arity or (strict and actual != arity):
        raise ArityError(f"{role} must be {arity}-ary, got a term in {actual} variables")


def _s(t: Term, *args: Term) -> Term:
    return substitute(t, args, arity=len(args))


def _constant(sig: Signature, e: str) -> Term:
    if e not in sig.constants and not (e in sig and sig.arity(e) == 0):
        raise ValueError(f"{e!r} is not a constant of the signature")
    return App(e, ())


def tilde_from_pq(p: Term, q: Term, strict: bool = True) -> tuple[Term, Term]:
    """p~(x,y,z) = p(q(x,y,y),y,z) and q~(x,y,z) = p(q(x,y,z),z,z)."""
    _need(p, 3, "p", strict)
    _need(q, 3, "q", strict)
    pt = _s(p, _s(q, x, y, y), y, z)
    qt = _s(p, _s(q, x, y, z), z, z)
    return pt, qt


def u_from_tilde(pt: Term, qt: Term, strict: bool = True) -> Term:
    """u~(a,b,c,d) = p~(q~(a,b,c),d,b)."""
    _need(pt, 3, "p~", strict)
    _need(qt, 3, "q~", strict)
    a, b, c, d = Var(0), Var(1), Var(2), Var(3)
    return _s(pt, _s(qt, a, b, c), d, b)


def pq_from_u(u: Term, strict: bool = True) -> tuple[Term, Term]:
    """p(x,y,z) = u(x,z,z,y) and q(x,y,z) = u(x,y,z,y)."""
    _need(u, 4, "u", strict)
    return _s(u, x, z, z, y), _s(u, x, y, z, y)


def loop_from_tilde(pt: Term, qt: Term, e: str, sig: Signature,
                    strict: bool = True) -> tuple[Term, Term]:
    """x+y = p~(x,e,y) and x-y = q~(x,y,e)."""
    _need(pt, 3, "p~", strict)
    _need(qt, 3, "q~", strict)
    c = _constant(sig, e)
    return _s(pt, x, c, y), _s(qt, x, y, c)


def pq_from_loop(plus: Term, minus: Term, strict: bool = True) -> tuple[Term, Term]:
    """p(x,y,z) = q(x,y,z) = (x-y)+z."""
    _need(plus, 2, "plus", strict)
    _need(minus, 2, "minus", strict)
    p = _s(plus, _s(minus, x, y), z)
    return p, p


def loop_from_rho_sigma(rho: Term, sigma: Term, sig: Signature, zero: str | None = None,
                        strict: bool = True) -> tuple[Term, Term]:
    """x+y = rho(sigma(x,0),y) and x-y = rho(sigma(x,y),0)."""
    if not sig.pointed:
        raise ValueError("loop_from_rho_sigma needs a pointed signature")
    _need(rho, 2, "rho", strict)
    _need(sigma, 2, "sigma", strict)
    o = _constant(sig, zero or sig.default_constant())
    plus = _s(rho, _s(sigma, x, o), y)
    minus = _s(rho, _s(sigma, x, y), o)
    return plus, minus


def protomodular_from_rho_sigma(rho: Term, sigma_list: Sequence[Term],
                                theta_list: Sequence[Term], e: str, sig: Signature,
                                m: int, strict: bool = True):
    """Specialise (rho, sigma_i, theta_i) at a constant e.

    ``rho`` takes (x_1..x_n, y_1..y_m, z), ``sigma_i`` takes (y_1..y_m, x, z),
    ``theta_i`` takes (y_1..y_m).  Returns (e_list, s_list, p) with
    e_i = theta_i(e,...,e), s_i(x,z) = sigma_i(e,...,e,x,z) and
    p(x_1..x_n,z) = rho(x_1..x_n,e,...,e,z).
    """
    n = len(sigma_list)
    if n == 0 or len(theta_list) != n:
        raise ArityError("need matching non-empty sigma and theta lists")
    _need(rho, n + m + 1, "rho", strict)
    for i, sg in enumerate(sigma_list):
        _need(sg, m + 2, f"sigma{i + 1}", strict)
    for i, th in enumerate(theta_list):
        _need(th, m, f"theta{i + 1}", strict)
    c = _constant(sig, e)
    es = [c] * m
    e_list = [_s(th, *es) for th in theta_list]
    s_list = [_s(sg, *es, x, y) for sg in sigma_list]
    xs = [Var(i) for i in range(n)]
    p = _s(rho, *xs, *es, Var(n))
    return e_list, s_list, p


IDENTITY_SETS = {
    "biternary": ids.biternary,
    "tilde": ids.tilde_condition,
    "quaternary": ids.quaternary_condition,
    "quaternary_tilde": ids.quaternary_tilde_condition,
    "right_loop": ids.right_loop,
    "rho_sigma": ids.rho_sigma,
    "protomodular": ids.protomodular,
    "maltsev": ids.maltsev,
}


def verify(algebra, identities: Sequence[Identity]) -> list[dict]:
    """One entry per identity: name, holds, least counterexample."""
    out = []
    for ident in identities:
        res = check_identity(algebra, ident)
        out.append({"name": ident.name, "pass": res.holds,
                    "counterexample": list(res.counterexample) if res.counterexample else None})
    return out


def check_gamma_tau_identity_set(rho: Term, sigma_list: Sequence[Term],
                                 theta_list: Sequence[Term], algebra, m: int,
                                 strict: bool = True) -> list[dict]:
    n = len(sigma_list)
    if n == 0 or len(theta_list) != n:
        raise ArityError("need matching non-empty sigma and theta lists")
    _need(rho, n + m + 1, "rho", strict)
    for i, sg in enumerate(sigma_list):
        _need(sg, m + 2, f"sigma{i + 1}", strict)
    for i, th in enumerate(theta_list):
        _need(th, m, f"theta{i + 1}", strict)
    return verify(algebra, ids.gamma_tau(rho, sigma_list, theta_list, m))
