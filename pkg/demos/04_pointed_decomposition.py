"""A split extension of Z3 by Z2 inside Z6, decomposed as K x B."""

from splitalg import builtin, parse_term
from splitalg.split import (enumerate_split_epis, phi_pointed, pointed_decomposition,
                            psi_pointed, split_extension)

Z6, Z3 = builtin("cyclic", 6), builtin("cyclic", 3)
plus = parse_term("plus(x0,x1)", Z6.sig)
minus = parse_term("minus(x0,x1)", Z6.sig)

splits = enumerate_split_epis(Z6, Z3)
print(len(splits), "split epis")  # reduction mod 3, and reduction followed by negation
for s in splits:
    print(s)

ext = split_extension(splits[0])
print("kernel", ext.K.elements)
phi = phi_pointed(ext, plus)
for (k, b), a in zip(ext.kb_labels, phi.values):
    print(f"phi({k},{b}) = {a}")

psi, lam = psi_pointed(ext, minus)
print("psi:", [ext.kb_pair(v) for v in psi.values])

for check in pointed_decomposition(ext, plus, minus).checks:
    print(f"{check.name:22s} {'ok' if check.passed else check.counterexample}")

# pointed sets have split epis but no room for a bijection K x B -> A
P3, P2 = builtin("pointed_set", 3), builtin("pointed_set", 2)
for s in enumerate_split_epis(P3, P2):
    e = split_extension(s)
    print(s.alpha.map, "|A| =", P3.size, " |K||B| =", len(e.K) * P2.size)
