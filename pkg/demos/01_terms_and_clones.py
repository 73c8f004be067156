"""Terms, tables and clones on small cyclic groups."""

from splitalg import builtin, check_identity, format_term, generate_clone, parse_term, term_table
from splitalg.terms import Identity

Z5 = builtin("cyclic", 5)
print(Z5, "signature:", Z5.sig)

t = parse_term("plus(x0, minus(x2, x1))", Z5.sig)
print(format_term(t))
print(term_table(t, Z5, 3).reshape(5, 5, 5)[1])  # slice with x0 = 1

# x - y = y - x fails; the least counterexample comes first in row-major order
bad = Identity(parse_term("minus(x0,x1)", Z5.sig), parse_term("minus(x1,x0)", Z5.sig), 2)
print(check_identity(Z5, bad))

# binary clone of Z2 over {+,0}: 0, x0, x1, x0+x1
C = generate_clone(builtin("cyclic_plus_only", 2), 2)
for el in C.elements:
    print(el.table.tolist(), format_term(el.witness))

# clone sizes grow like n^k for a cyclic group
for n in range(2, 7):
    print(n, [len(generate_clone(builtin("cyclic", n), k)) for k in (1, 2, 3)])

chain = builtin("chain_semilattice", 2)
print("chain binary clone:", sorted(generate_clone(chain, 2).tables()))
