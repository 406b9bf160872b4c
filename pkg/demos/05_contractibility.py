"""Deciding contractibility of small dual complexes.

In dimension at most two, a simply connected complex with no second homology
is contractible.  Collapses give an independent certificate when they reach a
point; the dunce hat shows they sometimes cannot.
"""

from itertools import combinations

from snc_dual import (DualComplex, bundled_cdv_models, build_dual_complex, cone_family,
                      contractibility_verdict_dim2, f_vector, greedy_collapse)
from snc_dual.pi1 import replay_collapse

for m in bundled_cdv_models():
    print(f"{m.name:<14}", contractibility_verdict_dim2(build_dual_complex(m)).value)

sphere = DualComplex.from_simplices(combinations("ABCD", 3))
print("tetrahedron boundary:", contractibility_verdict_dim2(sphere).value)

cone = build_dual_complex(cone_family(sphere))
reduced, certificate = greedy_collapse(cone)
print(f"cone over it collapses to {f_vector(reduced)} in {len(certificate.moves)} moves;",
      "replay gives", f_vector(replay_collapse(cone, certificate)))

hat = [(1, 2, 4), (1, 2, 7), (1, 2, 8), (1, 3, 4), (1, 3, 5), (1, 3, 6), (1, 5, 6), (1, 7, 8), (2, 3, 5),
       (2, 3, 7), (2, 3, 8), (2, 4, 5), (3, 4, 8), (3, 6, 7), (4, 5, 6), (4, 6, 8), (6, 7, 8)]
dunce = DualComplex.from_simplices([[str(v) for v in t] for t in hat])
stuck, cert = greedy_collapse(dunce)
print("dunce hat:", contractibility_verdict_dim2(dunce).value, "but greedy collapse makes", len(cert.moves), "moves")
