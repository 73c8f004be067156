"""Which witness classes does each corpus algebra have?"""

from splitalg import builtin
from splitalg.corpus import default_corpus
from splitalg.reports import classify

rows = []
for A in default_corpus(max_size=6):
    report = classify(A)
    rows.append((A.name, {k: v["status"] for k, v in report["witnesses"].items()}))

classes = ["maltsev", "biternary", "right_loop", "unital", "subtraction", "rho_sigma",
           "protomodular_1"]
print(f"{'algebra':30s}" + "".join(f"{c[:11]:>12s}" for c in classes))
for name, status in rows:
    print(f"{name:30s}" + "".join(f"{status.get(c, '-'):>12s}" for c in classes))

# witnesses come with their terms
report = classify(builtin("cyclic", 6))
for kind, w in report["witnesses"].items():
    print(kind, w["terms"])

# chain_join has a unital term (join) but nothing stronger
print(classify(builtin("chain_join", 3))["witnesses"]["unital"])
