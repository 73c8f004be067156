import itertools
import json

import numpy as np
import pytest

from splitalg.algebra import (AlgebraError, Homomorphism, algebra_from_dict, algebra_to_dict,
                              builtin, dump_algebra, find_homomorphisms, identity_hom,
                              is_homomorphism, kernel, load_algebra, product, pullback_fiber,
                              subalgebra_generated, trivial_algebra)


def brute_homs(A, B):
    """Every map A -> B that preserves every table, by direct enumeration."""
    out = []
    for mapping in itertools.product(range(B.size), repeat=A.size):
        ok = True
        for sym, arity in A.sig.symbols:
            for args in itertools.product(range(A.size), repeat=arity):
                if mapping[A.apply(sym, *args)] != B.apply(sym, *(mapping[a] for a in args)):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(list(mapping))
    return out


def z3_doc():
    return {"name": "Z3", "size": 3,
            "signature": [{"name": "plus", "arity": 2, "const": False},
                          {"name": "zero", "arity": 0, "const": True}],
            "tables": {"plus": [(a + b) % 3 for a in range(3) for b in range(3)], "zero": [0]}}


class TestLoad:
    def test_z3(self, tmp_path):
        path = tmp_path / "z3.json"
        path.write_text(json.dumps(z3_doc()))
        A = load_algebra(path)
        assert A.size == 3 and A.apply("plus", 2, 2) == 1 and A.constant() == 0

    def test_out_of_range(self):
        doc = z3_doc()
        doc["tables"]["plus"][4] = 7
        with pytest.raises(AlgebraError):
            algebra_from_dict(doc)

    def test_wrong_length(self):
        doc = z3_doc()
        doc["tables"]["plus"] = doc["tables"]["plus"][:-1]
        with pytest.raises(AlgebraError):
            algebra_from_dict(doc)

    def test_missing_table(self):
        doc = z3_doc()
        del doc["tables"]["zero"]
        with pytest.raises(AlgebraError):
            algebra_from_dict(doc)

    def test_xor(self):
        doc = {"name": "xor", "size": 2,
               "signature": [{"name": "xor", "arity": 2, "const": False}],
               "tables": {"xor": [0, 1, 1, 0]}}
        assert algebra_from_dict(doc).size == 2

    def test_round_trip(self, tmp_path):
        A = builtin("cyclic", 4)
        dump_algebra(A, tmp_path / "a.json")
        B = load_algebra(tmp_path / "a.json")
        assert algebra_to_dict(A) == algebra_to_dict(B)


class TestBuiltin:
    def test_cyclic(self):
        A = builtin("cyclic", 3)
        assert [A.apply("plus", 1, 2), A.apply("minus", 0, 1), A.constant()] == [0, 2, 0]

    def test_pointed_set(self):
        A = builtin("pointed_set", 3)
        assert A.size == 3 and A.sig.names == ["zero"]

    def test_chain(self):
        A = builtin("chain_semilattice", 2)
        assert A.tables["meet"].tolist() == [0, 0, 0, 1] and not A.sig.pointed

    def test_bool_subtraction(self):
        A = builtin("bool_subtraction", 2)
        assert A.tables["sub"].tolist() == [0, 0, 1, 0]

    @pytest.mark.parametrize("family,n", [("nope", 2), ("cyclic", 0), ("cyclic", 13),
                                          ("bool_subtraction", 3)])
    def test_rejects(self, family, n):
        with pytest.raises(AlgebraError):
            builtin(family, n)


class TestProduct:
    def test_indexing(self):
        P, p1, p2 = product(builtin("cyclic", 2), builtin("cyclic", 3))
        assert P.size == 6 and p1(5) == 1 and p2(5) == 2

    def test_componentwise(self):
        A, B = builtin("cyclic", 2), builtin("cyclic", 3)
        P, _, _ = product(A, B)
        for (a, b), (c, d) in itertools.product(itertools.product(range(2), range(3)), repeat=2):
            assert P.apply("plus", a * 3 + b, c * 3 + d) == (a + c) % 2 * 3 + (b + d) % 3

    def test_trivial_unit(self):
        A = builtin("cyclic", 4)
        P, p1, _ = product(A, trivial_algebra(A.sig))
        assert P.size == 4 and p1.is_injective() and p1.is_surjective()

    def test_associativity(self):
        A, B, C = builtin("cyclic", 2), builtin("cyclic", 3), builtin("cyclic", 2)
        left, _, _ = product(product(A, B)[0], C)
        right, _, _ = product(A, product(B, C)[0])
        # ((a,b),c) and (a,(b,c)) share the index a*6 + b*2 + c
        for sym in ("plus", "minus"):
            assert np.array_equal(left.tables[sym], right.tables[sym])

    def test_signature_mismatch(self):
        with pytest.raises(AlgebraError):
            product(builtin("cyclic", 2), builtin("pointed_set", 2))


class TestPullbackAndKernel:
    def reduction(self):
        Z6, Z3 = builtin("cyclic", 6), builtin("cyclic", 3)
        return Homomorphism(Z6, Z3, tuple(a % 3 for a in range(6)))

    def test_fiber_over_identity(self):
        alpha = self.reduction()
        F = pullback_fiber(alpha, identity_hom(alpha.cod))
        assert F.pairs == [(a, a % 3) for a in range(6)]
        pi1, _ = F.projections()
        assert pi1.is_injective() and len(F) == 6

    def test_fiber_disjoint_images(self):
        P3, P2 = builtin("pointed_set", 3), builtin("pointed_set", 2)
        alpha = Homomorphism(P3, P3, (0, 1, 1))
        f = Homomorphism(P2, P3, (0, 2))
        assert pullback_fiber(alpha, f).pairs == [(0, 0)]

    def test_diagonal(self):
        A = builtin("cyclic", 4)
        F = pullback_fiber(identity_hom(A), identity_hom(A))
        assert F.pairs == [(a, a) for a in range(4)]

    def test_kernels(self):
        alpha = self.reduction()
        assert list(kernel(alpha).elements) == [0, 3]
        assert list(kernel(identity_hom(alpha.dom)).elements) == [0]
        A = alpha.dom
        T = trivial_algebra(A.sig)
        assert list(kernel(Homomorphism(A, T, (0,) * 6)).elements) == list(range(6))

    @pytest.mark.parametrize("n,m", [(6, 3), (6, 2), (4, 2), (8, 4), (3, 1)])
    def test_kernel_is_pullback_with_trivial(self, n, m):
        A, B = builtin("cyclic", n), builtin("cyclic", m)
        T = trivial_algebra(A.sig)
        zero = Homomorphism(T, B, (B.constant(),))
        for alpha in find_homomorphisms(A, B):
            F = pullback_fiber(alpha, zero)
            assert {a for a, _ in F.pairs} == set(kernel(alpha).elements)

    def test_subalgebra_generated(self):
        A = builtin("cyclic", 6)
        assert list(subalgebra_generated(A, [2]).elements) == [0, 2, 4]


class TestHomomorphisms:
    def test_plus_only_examples(self):
        Z2, Z3 = builtin("cyclic_plus_only", 2), builtin("cyclic_plus_only", 3)
        assert [h.map for h in find_homomorphisms(Z2, Z3)] == [(0, 0)]
        assert [h.map for h in find_homomorphisms(Z2, Z2)] == [(0, 0), (0, 1)]

    CASES = [("cyclic", 4, "cyclic", 2), ("cyclic", 6, "cyclic", 3), ("cyclic", 3, "cyclic", 6),
             ("pointed_set", 3, "pointed_set", 2), ("chain_semilattice", 3, "chain_semilattice", 2),
             ("chain_join", 2, "chain_join", 3), ("cyclic_plus_only", 4, "cyclic_plus_only", 4)]

    @pytest.mark.parametrize("fa,na,fb,nb", CASES)
    def test_against_brute_force(self, fa, na, fb, nb):
        A, B = builtin(fa, na), builtin(fb, nb)
        found = find_homomorphisms(A, B)
        assert [list(h.map) for h in found] == brute_homs(A, B)
        for h in found:
            assert is_homomorphism(A, B, h.map)

    def test_identity_present(self):
        for A in (builtin("cyclic", 5), builtin("chain_join", 3), builtin("pointed_set", 2)):
            assert identity_hom(A) in find_homomorphisms(A, A)

    def test_limit(self):
        A = builtin("pointed_set", 3)
        assert len(find_homomorphisms(A, A, limit=2)) == 2

    def test_rejects_non_homomorphism(self):
        Z2, Z3 = builtin("cyclic", 2), builtin("cyclic", 3)
        with pytest.raises(AlgebraError):
            Homomorphism(Z2, Z3, (0, 1))
