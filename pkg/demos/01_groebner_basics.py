"""Polynomials, Groebner bases and dimension on a small example.

The twisted cubic in P^3 is cut out by three quadrics.  Its reduced
grevlex basis has leading terms x1^2, x1*x2, x2^2, so the leading-term
ideal leaves two variables free and the affine cone has dimension 2.
"""

from fanolines.groebner import Ideal, buchberger, ideal_dimension, normal_form
from fanolines.poly import Ring

R = Ring.standard(4)
x0, x1, x2, x3 = R.gens()
I = Ideal(R, [x0 * x2 - x1**2, x1 * x3 - x2**2, x0 * x3 - x1 * x2])

G = buchberger(I)
print("reduced basis:")
for g in G.elements:
    print("  ", g)
print("cone dimension:", ideal_dimension(G))

# membership by normal form: x0*x2^2 - x1^2*x2 = x2 * (x0*x2 - x1^2)
f = x0 * x2**2 - x1**2 * x2
print("normal form of", f, "->", normal_form(f, G))
print("normal form of x0^2 ->", normal_form(x0**2, G))

# the basis does not depend on the order in which S-pairs are treated
print("same basis under shuffled pairs:", buchberger(I, seed=3).elements == G.elements)
