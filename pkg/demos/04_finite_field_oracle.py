"""Checking the lines computation against brute force over a finite field.

Over GF(p) every tangent direction v at x can be tried directly: the line
x + t*v lies on X exactly when each generator vanishes at t = 1..deg (this
needs p > deg).  The directions found this way must coincide with the
GF(p)-points of the cone ideal computed symbolically.
"""

from fanolines import catalog
from fanolines.field import GF
from fanolines.geometry import brute_force_lines, line_components, lines_points, lines_through_point, pointed_chart

for name in ["quadric3", "segre1_2", "veronese2", "g14"]:
    e = catalog.get(name, GF(5))
    for pt in e.points(2, seed=4):
        brute = brute_force_lines(e.variety, pt)
        piped = lines_points(lines_through_point(pointed_chart(e.variety, pt)))
        # joining-line classes only count components of a union of linear spaces
        comps = line_components(brute, 5) if name.startswith("segre") else "-"
        print(f"{name:9s} {str(pt):40s} directions={len(brute):4d} agree={brute == piped} components={comps}")
