"""Blowing up a stratum replaces the dual complex by a star subdivision.

The homotopy type must not change.  Take a random model, subdivide it at
random cells, and compare homology before and after.
"""

import random

from snc_dual import (barycentric_subdivision, build_dual_complex, euler_characteristic, f_vector,
                      homology_groups, random_snc_model, star_subdivision)

model = random_snc_model(n_components=7, max_depth=2, density=0.7, seed=3, multi_piece=True)
dual = build_dual_complex(model)
print("before:", f_vector(dual), [str(h) for h in homology_groups(dual)])

current = dual if dual.is_simplicial() else barycentric_subdivision(dual)
rng = random.Random(0)
for step in range(10):
    keys = list(current.keys())
    key = keys[rng.randrange(len(keys))]
    name = current.cell(key).name
    current = star_subdivision(current, key)
    print(f"  star at {name:<40} -> f-vector {f_vector(current)}")

print("after: ", f_vector(current), [str(h) for h in homology_groups(current)])
assert homology_groups(current) == homology_groups(dual)
assert euler_characteristic(current) == euler_characteristic(dual)
