"""Lines through a point of a projective variety.

At a smooth point x the equations are expanded in the affine chart around
x.  Their linear parts cut out the tangent space; the higher pieces,
restricted to it, cut out the cone over the lines through x.  Its
dimension a compares with n - 1 - d, where d = sum(d_i - 1), and equality
is what a complete intersection gives.
"""

from fanolines import catalog
from fanolines.field import GF
from fanolines.geometry import lines_through_point, pointed_chart, second_fundamental_form

for name in ["quadric4", "segre1_2", "veronese2", "g14"]:
    e = catalog.get(name)
    X = e.variety
    chart = pointed_chart(X, e.base_point)
    L = lines_through_point(chart)
    d = sum(di - 1 for di in X.degrees[: X.c])
    S = second_fundamental_form(chart)
    print(f"{name}: n={X.n} c={X.c} d={d}  a={L.a}  n-1-d={X.n - 1 - d}  dim|II|={S.dim}")
    for f in L.ideal.generators:
        print("    ", f)

# a random complete intersection of two quadrics in P^6 over GF(7)
e = catalog.random_ci((2, 2), 6, GF(7), seed=1)
L = lines_through_point(pointed_chart(e.variety, e.base_point))
print(f"random (2,2) in P^6: a={L.a}, expected {e.expected['a']}")
