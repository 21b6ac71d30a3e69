"""
Plane curves with classical answers: arrangements and conic pairs
=================================================================

For curves built from lines and conics the node count and the Alexander
polynomial are classical, so they make honest end-to-end checks: L lines in
general position have C(L,2) nodes and Delta = (t-1)^(L-1); two smooth
conics meeting transversally have 4 nodes and Delta = (t-1).

Run:  python3 demos/demo_plane_curves.py
"""

from functools import reduce

from milnor import RunConfig, analyze, format_polynomial, parse_polynomial

CONFIG = RunConfig(seed=0)


def product(texts):
    factors = [parse_polynomial(t, num_vars=3) for t in texts]
    return reduce(lambda a, b: a * b, factors)


def show(name, f):
    rep = analyze(f, source=name, config=CONFIG)
    t = rep.thresholds
    print(f"{name}: {format_polynomial(f)}")
    print(f"  tau = {t.tau}, ct = {t.ct}, st = {t.st},"
          f" alexander = {rep.alexander.text()}")
    failed = [c.name for c in rep.checks if not c.ok]
    print(f"  failed checks: {failed or 'none'}")
    print()
    return rep


# Three concurrent-free lines: the coordinate triangle.  Nodes at the three
# vertices, Delta = (t-1)^2.
show("triangle", product(["x0", "x1", "x2"]))

# Four lines in general position: 6 nodes, Delta = (t-1)^3.  The relevant
# degree is nd/2 - n - 1 = 1, and six nodes can impose at most three
# conditions on the three-dimensional space of lines, so the defect is 3.
rep = show("four-lines", product(["x0", "x1", "x0 + x1 + x2", "x0 + 2*x1 - x2"]))
print("  defect table for the four-line arrangement:",
      dict(rep.defects.nonzero()))
print()

# Two smooth conics meeting in 4 distinct points: Delta = (t-1), the
# classical answer for a transversal conic pair.
conics = ["x0^2 + x1^2 - x2^2", "x0^2 + 4*x1^2 - 2*x2^2"]
show("conic-pair", product(conics))

# Adding a transversal line picks up 4 more nodes and one more factor.
show("conic-pair-plus-line", product(conics + ["x0 + 3*x1 + x2"]))

# A single node imposes independent conditions in every degree, so an
# irreducible one-node cubic has trivial Alexander polynomial.
show("nodal-cubic", parse_polynomial("x1^2*x2 - x0^3 - x0^2*x2", num_vars=3))
