"""Named identity sets over witness terms.

Each builder returns a list of :class:`Identity` whose sides are obtained by
substituting into the given terms, so checking them exercises the term
evaluator rather than any table shortcut.
"""

from __future__ import annotations

from typing import Sequence

from .terms import App, Identity, Term, Var, check_identity, format_term, substitute

x, y, z, w = Var(0), Var(1), Var(2), Var(3)


def _s(t: Term, *args: Term) -> Term:
    return substitute(t, args, arity=len(args))


def _c(symbol: str) -> Term:
    return App(symbol, ())


def maltsev(p: Term) -> list[Identity]:
    return [
        Identity(_s(p, x, x, y), y, 2, "p(x,x,y)=y"),
        Identity(_s(p, x, y, y), x, 2, "p(x,y,y)=x"),
    ]


def biternary(p: Term, q: Term) -> list[Identity]:
    return [
        Identity(_s(p, x, x, y), y, 2, "p(x,x,y)=y"),
        Identity(_s(p, _s(q, x, y, z), z, y), x, 3, "p(q(x,y,z),z,y)=x"),
        Identity(_s(q, _s(p, x, y, z), z, y), x, 3, "q(p(x,y,z),z,y)=x"),
    ]


def biternary_implied(q: Term) -> list[Identity]:
    return [Identity(_s(q, x, x, y), y, 2, "q(x,x,y)=y")]


def tilde_condition(pt: Term, qt: Term) -> list[Identity]:
    """The symmetric ternary system: both Mal'tsev and mutually inverse."""
    return [
        Identity(_s(pt, x, x, y), y, 2, "p~(x,x,y)=y"),
        Identity(_s(qt, x, x, y), y, 2, "q~(x,x,y)=y"),
        Identity(_s(pt, x, y, y), x, 2, "p~(x,y,y)=x"),
        Identity(_s(qt, x, y, y), x, 2, "q~(x,y,y)=x"),
        Identity(_s(pt, _s(qt, x, y, z), z, y), x, 3, "p~(q~(x,y,z),z,y)=x"),
        Identity(_s(qt, _s(pt, x, y, z), z, y), x, 3, "q~(p~(x,y,z),z,y)=x"),
    ]


def quaternary_condition(u: Term) -> list[Identity]:
    return [
        Identity(_s(u, x, y, y, x), y, 2, "u(a,b,b,a)=b"),
        Identity(_s(u, _s(u, x, y, z, w), y, w, z), x, 4, "u(u(a,b,c,d),b,d,c)=a"),
    ]


def quaternary_tilde_condition(ut: Term) -> list[Identity]:
    return [
        Identity(_s(ut, x, y, y, x), y, 2, "u~(a,b,b,a)=b"),
        Identity(_s(ut, x, x, y, x), y, 2, "u~(a,a,b,a)=b"),
        Identity(_s(ut, x, y, z, z), x, 3, "u~(a,b,c,c)=a"),
        Identity(_s(ut, _s(ut, x, y, z, w), y, w, z), x, 4, "u~(u~(a,b,c,d),b,d,c)=a"),
    ]


def right_loop(plus: Term, minus: Term, zero: str) -> list[Identity]:
    o = _c(zero)
    return [
        Identity(_s(plus, x, o), x, 1, "x+0=x"),
        Identity(_s(minus, x, x), o, 1, "x-x=0"),
        Identity(_s(minus, _s(plus, x, y), y), x, 2, "(x+y)-y=x"),
        Identity(_s(plus, _s(minus, x, y), y), x, 2, "(x-y)+y=x"),
    ]


def unital(plus: Term, zero: str) -> list[Identity]:
    o = _c(zero)
    return [
        Identity(_s(plus, x, o), x, 1, "x+0=x"),
        Identity(_s(plus, o, x), x, 1, "0+x=x"),
    ]


def subtraction(s: Term, zero: str) -> list[Identity]:
    o = _c(zero)
    return [
        Identity(_s(s, x, x), o, 1, "s(x,x)=0"),
        Identity(_s(s, x, o), x, 1, "s(x,0)=x"),
    ]


def rho_sigma(rho: Term, sigma: Term, zero: str) -> list[Identity]:
    o = _c(zero)
    return [
        Identity(_s(sigma, x, x), o, 1, "sigma(x,x)=0"),
        Identity(_s(rho, _s(sigma, x, y), y), x, 2, "rho(sigma(x,y),y)=x"),
        Identity(_s(sigma, _s(rho, x, y), y), x, 2, "sigma(rho(x,y),y)=x"),
        Identity(_s(rho, o, x), x, 1, "rho(0,x)=x"),
        Identity(_s(rho, x, o), x, 1, "rho(x,0)=x"),
        Identity(_s(sigma, x, o), x, 1, "sigma(x,0)=x"),
    ]


def protomodular(e_list: Sequence[Term], s_list: Sequence[Term], p: Term,
                 bijective: bool = False) -> list[Identity]:
    n = len(s_list)
    ids = [Identity(_s(s, x, x), e, 1, f"s{i + 1}(x,x)=e{i + 1}")
           for i, (s, e) in enumerate(zip(s_list, e_list))]
    ids.append(Identity(_s(p, *[_s(s, x, y) for s in s_list], y), x, 2,
                        "p(s1(x,z),...,sn(x,z),z)=x"))
    if bijective:
        xs = [Var(i) for i in range(n)]
        top = Var(n)
        inner = _s(p, *xs, top)
        for i, s in enumerate(s_list):
            ids.append(Identity(_s(s, inner, top), xs[i], n + 1,
                                f"s{i + 1}(p(x1,...,xn,y),y)=x{i + 1}"))
    return ids


def gamma_tau(rho: Term, sigma_list: Sequence[Term], theta_list: Sequence[Term],
              m: int) -> list[Identity]:
    """Identities equivalent to a section gamma with gamma tau = 1 (no tau gamma = 1).

    ``rho`` takes (x_1..x_n, y_1..y_m, z); each ``sigma_i`` takes
    (y_1..y_m, x, z); each ``theta_i`` takes (y_1..y_m).
    """
    forms = generalized(rho, sigma_list, theta_list, m)
    return forms["subtraction"] + forms["addition"] + forms["strange"]


def generalized(rho: Term, sigma_list: Sequence[Term], theta_list: Sequence[Term],
                m: int) -> dict[str, list[Identity]]:
    """Identity forms of the four component diagrams for general (m, n).

    Keys: ``addition`` (unit law for rho), ``subtraction`` (sigma on the
    diagonal), ``protomodular`` (tau gamma = 1) and ``strange`` (gamma tau = 1).
    """
    n = len(sigma_list)
    ys = [Var(j) for j in range(m)]
    xv, zv = Var(m), Var(m + 1)
    addition = [Identity(_s(rho, *[_s(th, *ys) for th in theta_list], *ys, xv), xv, m + 1,
                         "rho(theta(y),y,x)=x")]
    subtraction_ = [Identity(_s(sg, *ys, xv, xv), _s(th, *ys), m + 1,
                             f"sigma{i + 1}(y,x,x)=theta{i + 1}(y)")
                    for i, (sg, th) in enumerate(zip(sigma_list, theta_list))]
    proto = [Identity(_s(rho, *[_s(sg, *ys, xv, zv) for sg in sigma_list], *ys, zv), xv,
                      m + 2, "rho(sigma(y,x,z),y,z)=x")]
    xs = [Var(m + i) for i in range(n)]
    zt = Var(m + n)
    inner = _s(rho, *xs, *ys, zt)
    strange = [Identity(_s(sg, *ys, inner, zt), xs[i], m + n + 1,
                        f"sigma{i + 1}(y,rho(x,y,z),z)=x{i + 1}")
               for i, sg in enumerate(sigma_list)]
    return {"addition": addition, "subtraction": subtraction_,
            "protomodular": proto, "strange": strange}


def check_all(algebra, identities: Sequence[Identity]) -> list[tuple[Identity, object]]:
    return [(ident, check_identity(algebra, ident)) for ident in identities]


def all_hold(algebra, identities: Sequence[Identity]) -> bool:
    return all(check_identity(algebra, ident).holds for ident in identities)


def describe(identities: Sequence[Identity]) -> list[str]:
    return [f"{i.name}: {format_term(i.lhs)} = {format_term(i.rhs)}" for i in identities]
