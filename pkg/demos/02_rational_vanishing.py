"""Checking the top-degree vanishing that rationality forces.

A model flagged ``declared_rational`` promises that H^{n-1} of its dual
complex vanishes, n being the ambient dimension.  The checker computes that
group and compares.
"""

from pathlib import Path

from snc_dual import load_bundled, read_model, tree_family, verify_rational_vanishing

# A tree of rational curves on a surface: degree 1 must vanish.
tree = tree_family([0, 0, 1, 1, 2])
print(tree.name, verify_rational_vanishing(tree).status.value)

for name in ("odp", "cA3_chain", "cD4_triangle"):
    print(name, verify_rational_vanishing(load_bundled(name)).status.value)

# The boundary of a tetrahedron, falsely flagged rational in dimension 3.
fixture = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "sphere_counterexample.json"
result = verify_rational_vanishing(read_model(fixture))
print("counterexample:", result.status.value, f"(rank H^{result.degree} = {result.rank})")
