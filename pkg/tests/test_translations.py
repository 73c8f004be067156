import pytest

from splitalg import builtin
from splitalg import identities as ids
from splitalg.clone import find_biternary, find_right_loop, find_rho_sigma
from splitalg.corpus import default_corpus
from splitalg.terms import Var, parse_signature, parse_term, term_table
from splitalg.translations import (ArityError, check_gamma_tau_identity_set, loop_from_rho_sigma,
                                   loop_from_tilde, pq_from_loop, pq_from_u,
                                   protomodular_from_rho_sigma, tilde_from_pq, u_from_tilde,
                                   verify)

Z3 = builtin("cyclic", 3)
SIG = Z3.sig
SINGLETON = builtin("cyclic", 1)
GROUP_P = "plus(minus(x0,x1),x2)"


def t(text, sig=SIG):
    return parse_term(text, sig)


def table(term, A, k):
    return term_table(term, A, k).tolist()


def holds(A, identities):
    return all(r["pass"] for r in verify(A, identities))


def affine(A):
    n = A.size
    return [(a - b + c) % n for a in range(n) for b in range(n) for c in range(n)]


class TestTilde:
    def test_group(self):
        pt, qt = tilde_from_pq(t(GROUP_P), t(GROUP_P))
        assert table(pt, Z3, 3) == affine(Z3) == table(qt, Z3, 3)
        assert holds(Z3, ids.tilde_condition(pt, qt))

    def test_idempotent_on_tilde_input(self):
        pt, qt = tilde_from_pq(t(GROUP_P), t(GROUP_P))
        again = tilde_from_pq(pt, qt)
        assert holds(Z3, ids.tilde_condition(*again))

    def test_arity_error(self):
        with pytest.raises(ArityError):
            tilde_from_pq(t("plus(x0,x1)"), t(GROUP_P))


class TestQuaternary:
    def test_group_u(self):
        ut = u_from_tilde(t(GROUP_P), t(GROUP_P))
        expected = [(((a - b + c) - d) + b) % 3 for a in range(3) for b in range(3)
                    for c in range(3) for d in range(3)]
        assert table(ut, Z3, 4) == expected
        assert holds(Z3, ids.quaternary_tilde_condition(ut))
        assert holds(SINGLETON, ids.quaternary_tilde_condition(ut))

    def test_back_to_pq(self):
        p, q = pq_from_u(u_from_tilde(t(GROUP_P), t(GROUP_P)))
        assert holds(Z3, ids.biternary(p, q))
        assert holds(SINGLETON, ids.biternary(p, q))

    def test_arity_errors(self):
        with pytest.raises(ArityError):
            u_from_tilde(t(GROUP_P), t("minus(x0,x1)"))
        with pytest.raises(ArityError):
            pq_from_u(t(GROUP_P))


class TestLoops:
    def test_loop_from_tilde(self):
        plus, minus = loop_from_tilde(t(GROUP_P), t(GROUP_P), "zero", SIG)
        assert table(plus, Z3, 2) == [(a + b) % 3 for a in range(3) for b in range(3)]
        assert table(minus, Z3, 2) == [(a - b) % 3 for a in range(3) for b in range(3)]
        assert holds(SINGLETON, ids.right_loop(plus, minus, "zero"))

    def test_loop_from_tilde_needs_constant(self):
        with pytest.raises(ValueError):
            loop_from_tilde(t(GROUP_P), t(GROUP_P), "one", SIG)

    def test_pq_from_loop(self):
        Z6 = builtin("cyclic", 6)
        p, q = pq_from_loop(t("plus(x0,x1)"), t("minus(x0,x1)"))
        assert holds(Z6, ids.biternary(p, q)) and holds(SINGLETON, ids.biternary(p, q))
        with pytest.raises(ArityError):
            pq_from_loop(t(GROUP_P), t("minus(x0,x1)"))

    def test_loop_from_rho_sigma(self):
        Z4 = builtin("cyclic", 4)
        plus, minus = loop_from_rho_sigma(t("plus(x0,x1)"), t("minus(x0,x1)"), SIG)
        assert table(plus, Z4, 2) == [(a + b) % 4 for a in range(4) for b in range(4)]
        assert table(minus, Z4, 2) == [(a - b) % 4 for a in range(4) for b in range(4)]
        assert holds(SINGLETON, ids.right_loop(plus, minus, "zero"))

    def test_loop_from_rho_sigma_unpointed(self):
        sig = parse_signature("f/2")
        with pytest.raises(ValueError):
            loop_from_rho_sigma(t("f(x0,x1)", sig), t("f(x0,x1)", sig), sig)


class TestGeneralForms:
    Z2 = builtin("cyclic_plus_only", 2)
    PSIG = Z2.sig

    def test_protomodular_specialisation(self):
        rho, sigma = t("plus(x0,x1)", self.PSIG), t("plus(x0,x1)", self.PSIG)
        e_list, s_list, p = protomodular_from_rho_sigma(rho, [sigma], [t("zero", self.PSIG)],
                                                        "zero", self.PSIG, m=0)
        assert [table(e, self.Z2, 0) for e in e_list] == [[0]]
        assert table(s_list[0], self.Z2, 2) == [0, 1, 1, 0] == table(p, self.Z2, 2)
        assert holds(self.Z2, ids.protomodular(e_list, s_list, p))
        assert holds(builtin("cyclic_plus_only", 1), ids.protomodular(e_list, s_list, p))

    def test_protomodular_arity_inconsistency(self):
        with pytest.raises(ArityError):
            protomodular_from_rho_sigma(t(GROUP_P), [t("plus(x0,x1)")], [t("zero")],
                                        "zero", SIG, m=0)

    def test_gamma_tau_set(self):
        rho, sigma = t("plus(x0,x1)", self.PSIG), t("plus(x0,x1)", self.PSIG)
        res = check_gamma_tau_identity_set(rho, [sigma], [t("zero", self.PSIG)], self.Z2, 0)
        assert len(res) == 3 and all(r["pass"] for r in res)
        one = builtin("cyclic_plus_only", 1)
        assert all(r["pass"] for r in check_gamma_tau_identity_set(
            rho, [sigma], [t("zero", self.PSIG)], one, 0))

    def test_gamma_tau_fails_on_pointed_set(self):
        P2 = builtin("pointed_set", 2)
        x0, zero = Var(0), parse_term("zero", P2.sig)
        res = check_gamma_tau_identity_set(x0, [x0], [zero], P2, 0, strict=False)
        assert not all(r["pass"] for r in res)

    def test_gamma_tau_m1(self):
        # rho = p, sigma(y,x,z) = q(x,z,y) with p = q = x - y + z
        rho = t("plus(minus(x0,x1),x2)")
        sigma = t("plus(minus(x1,x2),x0)")
        res = check_gamma_tau_identity_set(rho, [sigma], [Var(0)], Z3, 1)
        assert all(r["pass"] for r in res)


def test_round_trip_can_change_tables():
    # p = q = 2x+y+z on Z3 satisfies the biternary identities but not p(x,y,y)=x
    A = builtin("cyclic_plus_only", 3)
    p = parse_term("plus(plus(x0,x0),plus(x1,x2))", A.sig)
    assert holds(A, ids.biternary(p, p))
    p2, _ = pq_from_u(u_from_tilde(*tilde_from_pq(p, p)))
    assert holds(A, ids.biternary(p2, p2))
    assert table(p2, A, 3) != table(p, A, 3)


CORPUS = default_corpus(max_size=6)


@pytest.mark.parametrize("A", CORPUS, ids=lambda A: A.name)
def test_round_trip_and_conditional_correctness(A):
    bit = find_biternary(A)
    if bit.witness is not None:
        p, q = bit.witness.p, bit.witness.q
        assert holds(A, ids.biternary(p, q))
        assert holds(A, ids.biternary_implied(q))
        pt, qt = tilde_from_pq(p, q, strict=False)
        assert holds(A, ids.tilde_condition(pt, qt))
        ut = u_from_tilde(pt, qt, strict=False)
        assert holds(A, ids.quaternary_tilde_condition(ut))
        assert holds(A, ids.quaternary_condition(ut))
        p2, q2 = pq_from_u(ut, strict=False)
        assert holds(A, ids.biternary(p2, q2))
        # p' = p(q(x,y,y),y,z) and q' = p(q(x,y,z),z,z): equal tables need x-recovery
        x, y = Var(0), Var(1)
        right_units = [ids.Identity(ids._s(f, x, y, y), x, 2) for f in (p, q)]
        if holds(A, right_units):
            assert table(p2, A, 3) == table(p, A, 3) and table(q2, A, 3) == table(q, A, 3)
        if A.sig.pointed:
            e = A.sig.default_constant()
            plus, minus = loop_from_tilde(pt, qt, e, A.sig, strict=False)
            assert holds(A, ids.right_loop(plus, minus, e))
    if A.sig.pointed:
        e = A.sig.default_constant()
        loop = find_right_loop(A)
        if loop.witness is not None:
            p, q = pq_from_loop(loop.witness.plus, loop.witness.minus, strict=False)
            assert holds(A, ids.biternary(p, q))
        rs = find_rho_sigma(A)
        if rs.witness is not None:
            plus, minus = loop_from_rho_sigma(rs.witness.rho, rs.witness.sigma, A.sig,
                                              strict=False)
            assert holds(A, ids.right_loop(plus, minus, e))
