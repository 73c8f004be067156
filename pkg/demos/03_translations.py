"""Moving between the equivalent witness systems by substitution."""

from splitalg import builtin, format_term, parse_term, term_table
from splitalg import identities as ids
from splitalg.translations import (loop_from_tilde, pq_from_loop, pq_from_u, tilde_from_pq,
                                   u_from_tilde, verify)

Z4 = builtin("cyclic", 4)
sig = Z4.sig
plus, minus = parse_term("plus(x0,x1)", sig), parse_term("minus(x0,x1)", sig)

p, q = pq_from_loop(plus, minus)
pt, qt = tilde_from_pq(p, q)
ut = u_from_tilde(pt, qt)
p2, q2 = pq_from_u(ut)
for label, term in [("p", p), ("p~", pt), ("u~", ut), ("p'", p2)]:
    print(f"{label:3s} {format_term(term)}")

print("same table:", (term_table(p, Z4, 3) == term_table(p2, Z4, 3)).all())
for row in verify(Z4, ids.quaternary_tilde_condition(ut)):
    print(row)

# back down to a right loop at the constant
plus2, minus2 = loop_from_tilde(pt, qt, "zero", sig)
print(format_term(plus2), "|", format_term(minus2))

# a biternary pair that is not Mal'tsev does not survive the round trip as a table
Z3 = builtin("cyclic_plus_only", 3)
odd = parse_term("plus(plus(x0,x0),plus(x1,x2))", Z3.sig)
back, _ = pq_from_u(u_from_tilde(*tilde_from_pq(odd, odd)))
print(term_table(odd, Z3, 3)[:9], term_table(back, Z3, 3)[:9])
