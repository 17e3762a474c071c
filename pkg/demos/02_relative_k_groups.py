"""Relative K-groups of F_p[x]/(x^m).

Odd groups K_{2i+1} are finite p-groups of length (m-1)(i+1).  Even and
non-positive degrees vanish.  In degree 1 the group is the unit group
1 + x F_p[x]/(x^m), which can be enumerated directly.
"""

from wittkit.kgroups import k1_units_oracle, relative_k, relative_k_snf

for p, m in [(2, 4), (3, 3), (2, 6)]:
    print(f"p={p}, m={m}")
    for q in range(0, 8):
        G = relative_k(p, m, q)
        print(f"  K_{q}: {G}   length {G.length}")

print("\nDegree 1 against brute-force unit groups:")
for p, n in [(2, 5), (2, 8), (3, 4), (5, 3)]:
    a, b = relative_k(p, n, 1), k1_units_oracle(p, n)
    print(f"  p={p} n={n}: {a}  vs  {b}  ->", "same" if a.isomorphic(b) else "DIFFERENT")

G = relative_k(3, 6, 5)
print("\nK_5 of F_3[x]/(x^6) per factor:", list(zip(G.labels, G.exponents)))
print("Smith form of the full presentation gives", relative_k_snf(3, 6, 5))
