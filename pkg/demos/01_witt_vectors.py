"""Big Witt vectors over F_p in two models.

The coordinate model computes through ghost components over Z.  The
decomposed model splits W_S(F_p) into cyclic factors Z/p^u, one for each
j in S prime to p.  Both give the same answers.
"""

import random

from wittkit.truncation import quotient_set, segment
from wittkit.witt import (
    WittVectorFp,
    WittVectorZ,
    decomposed_F,
    decomposed_V,
    eta_decompose,
    eta_recompose,
    fp_add,
    fp_frobenius,
    fp_restrict,
    fp_verschiebung,
    ghost_of,
)

S = segment(2)
one = WittVectorZ.one(S)
print("1 + 1 in W_{1,2}(Z):", (one + one).coords, "ghost", ghost_of(one + one).ghost)

p, S = 3, segment(12)
rng = random.Random(0)
x = WittVectorFp(p, S, tuple(rng.randrange(p) for _ in S))
y = WittVectorFp(p, S, tuple(rng.randrange(p) for _ in S))
print(f"\nx in W_{{1..12}}(F_{p}):", x.coords)

d = eta_decompose(x)
print("decomposition (j -> value mod p^u):")
for j, v in d.components.items():
    print(f"  j={j:2d}  Z/{p}^{d.exponents[j]}  {v}")
assert eta_recompose(d) == x

print("\nx + y agrees in both models:", eta_decompose(fp_add(x, y)).components == {
    j: (d.components[j] + eta_decompose(y).components[j]) % p ** d.exponents[j] for j in d.components
})

s = 6
print(f"F_{s} in both models:", eta_decompose(fp_frobenius(x, s)) == decomposed_F(d, s))
z = fp_restrict(x, quotient_set(S, s))
print(f"V_{s} in both models:", eta_decompose(fp_verschiebung(z, s, S)) == decomposed_V(eta_decompose(z), s, S))
