"""The nerve map of a triangulated cover.

Each vertex of the subdivided triangulation goes to the barycenter of the
deepest stratum containing it.  The resulting map onto the subdivided nerve
should be surjective with connected fibers.
"""

from pathlib import Path

from snc_dual import build_nerve_map, check_surjective, fiber_components, random_cover, validate_cover
from snc_dual.nerve import TriangulatedCover, read_cover, sample_points

fixtures = Path(__file__).resolve().parent.parent / "tests" / "fixtures"
cover, model = read_cover(fixtures / "cycle_cover.json")
psi = build_nerve_map(cover, model)
fibers = {fiber_components(psi, s, c) for s, c in sample_points(psi)}
print("hexagon over three arcs: surjective", check_surjective(psi), "fiber counts", fibers)

for seed in range(5):
    psi = build_nerve_map(random_cover(seed))
    fibers = {fiber_components(psi, s, c) for s, c in sample_points(psi, per_simplex=4)}
    print(f"random cover {seed}: {len(psi.source.simplices())} source simplices, fibers {fibers}")

# Connected pairwise intersections are not enough.  Hang two arcs off a
# circle: the circle minus the two attachment points falls apart, and so
# would the fiber over its barycenter.  The validator refuses the cover.
circle = [(f"c{i}", f"c{(i + 1) % 6}") for i in range(6)]
arcs = [("c0", "a1"), ("a1", "a2"), ("c3", "b1"), ("b1", "b2")]
bad = TriangulatedCover.from_labels(
    circle + arcs, {"1": [f"c{i}" for i in range(6)], "2": ["c0", "a1", "a2"], "3": ["c3", "b1", "b2"]})
for problem in validate_cover(bad):
    print("rejected:", problem)
