"""n hyperplanes in general position in projective (n-1)-space.

Every proper subset of the hyperplanes meets, so the dual complex is the
boundary of the (n-1)-simplex.  We watch the reduced Betti numbers pick out a
single sphere in degree n-2.
"""

from snc_dual import build_dual_complex, f_vector, gordon_family, reduced_betti_numbers

for n in range(2, 9):
    dual = build_dual_complex(gordon_family(n))
    print(f"n={n}  f-vector={f_vector(dual)}")
    print(f"     reduced Betti: {reduced_betti_numbers(dual)}")

# n=3 is a triangle of lines in the plane: a circle.
