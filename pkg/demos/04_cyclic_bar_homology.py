"""Integral homology of the weight-i cyclic bar construction of
Π_m = {0, 1, x, ..., x^{m-1}}, compared with the closed form: Z in
degrees 2d, 2d+1 when m does not divide i, otherwise Z/m in degree 2d+1,
with d = floor((i-1)/m)."""

from wittkit.cyclicbar import build_complex, homology, induced_map, predicted_homology

for m in (2, 3, 4):
    for i in range(1, 9):
        cx = build_complex(m, i)
        h = homology(cx)
        sizes = [len(b) for b in cx.bases]
        mark = "ok" if h == predicted_homology(m, i) else "MISMATCH"
        print(f"m={m} i={i}: chain ranks {sizes}  ->  {h}  [{mark}]")

print("\nMaps induced by Π_m -> Π_n on homology (generators of the adapted bases):")
for m, n, i in [(3, 2, 2), (4, 2, 4), (4, 3, 5)]:
    f = induced_map(m, n, i)
    for k, M in sorted(f.homology_matrices.items()):
        if f.source_moduli[k] or f.target_moduli[k]:
            print(f"  ({m}->{n}, i={i}) H_{k}: {f.source_moduli[k]} -> {f.target_moduli[k]} by {M}")
