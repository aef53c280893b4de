"""A five-conic configuration with a rich Alexander polynomial.

The union of the five conics y = x^2 + t*y^2 for t = 1..5 is a degree-10
curve whose components all touch the line y = 0 at the origin.  After the
contact substitution v -> v + u^2 the whole configuration becomes a
single germ with one non-degenerate Newton face of weight (1, 4), so
every level quotient is monomial and the cokernel weights can be read off
the staircases.

The assembled polynomial keeps every cyclotomic class alive: with r = 5
components the full polynomial carries (t-1)^4 in addition to the
(t+1)- and degree-4 classes.

Runs in under a second.
"""

from adjalex.alexander import analyze_curve
from adjalex.curves import five_conic_configuration
from adjalex.newton import newton_boundary


def main() -> None:
    curve = five_conic_configuration()
    an = curve.points[0].analyzer
    data, alex = analyze_curve(curve)
    boundary = newton_boundary(an.f)
    weights = ", ".join(str(w.as_pair()) for w in boundary.weights())
    print(f"degree {curve.d} union of {curve.r} conics")
    print(f"Newton boundary after v -> v + u^2: vertices "
          f"{list(boundary.vertices)}, face weights {weights}")
    ideals = [an.ideal(k) for k in range(1, curve.d)]
    print("  k     " + "".join(f"{k:>5}" for k in range(1, curve.d)))
    print("  rho   " + "".join(f"{i.rho:>5}" for i in ideals))
    print("  iota  " + "".join(f"{an.iota(i):>5}" for i in ideals))
    print("  ell   " + "".join(f"{e:>5}" for e in data.vector()))
    print()
    print(f"factored: {alex.factored_text()}")
    print(f"reduced:  {alex.reduced_text()}")
    print(f"full:     {alex.full_text()}")


if __name__ == "__main__":
    main()
