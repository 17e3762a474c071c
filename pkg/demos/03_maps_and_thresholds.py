"""The map f_* induced by F_p[x]/(x^m) -> F_p[x]/(x^n).

Factor by factor it is reduction followed by multiplication by p^w, where
w is the order of the alpha divisor at j.  Once that divisor dominates
div W_{n(i+1)}(F_p), the map is zero.  This happens for all large degrees
(i0, q0) and for all large m (m0).
"""

from wittkit.divisor import alpha_divisor, div_witt, kills_module
from wittkit.kgroups import i0, is_zero_map, ker_coker, m0, milnor_intersection, q0, transfer_map, valuation_cross_check

p, m, n = 2, 4, 2
for q in (1, 3, 5, 7, 9):
    d = transfer_map(p, m, n, q)
    ker, coker = ker_coker(d)
    print(f"q={q}: factors (j,a,b,w) {list(d.factors)[:4]}...  ker {ker}  coker {coker}  zero={is_zero_map(p, m, n, q)}")

i = 3
print(f"\nalpha divisor ({p},{m},{n},i={i}):", alpha_divisor(p, m, n, i).orders)
print(f"div W_{n * (i + 1)}(F_{p}):          ", div_witt(n * (i + 1), p).orders)
print("kills module:", kills_module(p, m, n, i))

print("\nthree evaluations of the twist valuation at (2,3,1,i=2,j=1):", valuation_cross_check(2, 3, 1, 2, 1))

t = i0(p, m, n)
print(f"\ni0({p},{m},{n}) = {t.value}; per-j stabilisation {t.certificate['per_j']}")
print(f"q0({p},{m},{n}) = {q0(p, m, n).value}")
print(f"q0(2,3,2) = {q0(2, 3, 2).value} (m = n+1, flagged {q0(2, 3, 2).certificate['beyond_theorem']})")
for pp, nn in [(2, 2), (3, 2), (3, 3)]:
    print(f"m0({pp},{nn}) = {m0(pp, nn).value}")

mm = m0(3, 2).value + 2
for q in (1, 3, 5):
    r = milnor_intersection(3, 2, q, mm)
    print(f"intersection of images in K_{q}(F_3[x]/(x^2)) over m <= {mm}: {r.group}, settled at m={r.stabilized_at}")
