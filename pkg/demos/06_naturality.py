"""Components built from one term are natural: sweep every morphism of the corpus."""

import dataclasses

from splitalg import builtin, parse_term
from splitalg.algebra import product
from splitalg.corpus import default_corpus
from splitalg.reports import verify_naturality
from splitalg.split import (check_naturality, enumerate_split_epis, phi_pointed,
                            split_extension, splext_morphisms)

report = verify_naturality(default_corpus())
for g in report["groups"]:
    print(f"{g['signature']:32s} ext={g['extensions']:3d} morphisms={g['morphisms']:5d} "
          f"passed={g['passed']:5d} witness={g['witness']}")

# break one entry of the target component and the check notices
Z2, T = builtin("cyclic", 2), builtin("cyclic", 1)
plus = parse_term("plus(x0,x1)", Z2.sig)
P, _, _ = product(Z2, Z2)
source = split_extension(enumerate_split_epis(Z2, T)[0])
target = next(split_extension(s) for s in enumerate_split_epis(P, Z2)
              if s.alpha.map == (0, 1, 0, 1) and s.beta.map == (0, 1))
mor = next(m for m in splext_morphisms(source, target) if m.v.map == (0, 2))


def broken(ext):
    phi = phi_pointed(ext, plus)
    if ext is target:
        phi = dataclasses.replace(phi, values=[phi.values[0], phi.values[1],
                                               phi.values[3], phi.values[3]])
    return phi


print(check_naturality(source, target, mor, broken).to_list())
