"""The two quadratic manifolds with n = 2c that are not complete intersections.

For a quadratic manifold with n = 2c the lines through a general point
force (3n - 6)/4 <= a < (3n - 5)/4 unless X is a complete intersection.
Only n = 6, a = 3 and n = 10, a = 6 survive, realised by the Grassmannian
of lines in P^4 and the ten-dimensional spinor variety.
"""

from fanolines import catalog
from fanolines.criteria import Invariants, analyze, classify_hartshorne

for name in ["g14", "s10"]:
    e = catalog.get(name)
    report = analyze(e.variety, e.points(2), secant_points=e.points(4, seed=1), seed=0)
    print(report.to_text())
    print()

print("window scan over n = 2c:")
for c in range(2, 9):
    n = 2 * c
    named = [a for a in range(n) if classify_hartshorne(Invariants(n, c, (2,) * c, a)).startswith("case")]
    print(f"  n={n:2d}: named at a = {named}")
