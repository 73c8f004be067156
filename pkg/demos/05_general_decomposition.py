"""The non-pointed version: pullbacks along any f, fibers, and tau/gamma components."""

from splitalg import builtin, parse_term
from splitalg.algebra import Homomorphism, find_homomorphisms, identity_hom, pullback_fiber
from splitalg.split import enumerate_split_epis, fiber_bijection, general_component, phi_general
from splitalg.terms import Var

Z6, Z3 = builtin("cyclic", 6), builtin("cyclic", 3)
p = parse_term("plus(minus(x0,x1),x2)", Z6.sig)
s = enumerate_split_epis(Z6, Z3)[0]

phi, psi, cert = phi_general(s, identity_hom(Z3), p, p)
print("fiber:", pullback_fiber(s.alpha, identity_hom(Z3)).pairs)
print("phi((4,1),2) =", divmod(phi(phi.dom_labels.index((4, 1, 2))), 6))
print("certificate passed:", cert.passed)

# every f: E -> B works, not just the identity
for E in (builtin("cyclic", 1), builtin("cyclic", 3), builtin("cyclic", 6)):
    for f in find_homomorphisms(E, Z3):
        print(E.name, f.map, phi_general(s, f, p, p)[2].passed)

# fibers of a surjection are in bijection
f = Homomorphism(Z6, Z3, tuple(a % 3 for a in range(6)))
m, _ = fiber_bijection(f, p, 0, 1, 0, 1)
print("fiber map:", m.as_dict())

# m = n = 1, theta = identity, rho = p, sigma(y,x,z) = q(x,z,y)
sigma = parse_term("plus(minus(x1,x2),x0)", Z6.sig)
tau, gamma, cert = general_component([Var(0)], p, [sigma], s, 1)
print(len(tau.values), "points in V;", [c.name for c in cert.checks if c.passed])
