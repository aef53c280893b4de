"""Two one-point degree-10 curves with the same Alexander polynomial.

Each curve is irreducible of degree 10 and carries a single deep
singularity at the origin.  The two germs are topologically different --
their level ideals, quotient dimensions rho_k and contact numbers iota_k
all disagree -- yet every level weight ell_k comes out the same, so both
curves share the reduced Alexander polynomial t^4-t^3+t^2-t+1.

Because each curve is irreducible and its iota_k exceed d*(k-3) at every
level, the placement-free contact-order bound applies: the level weights
follow from the local data alone, with no need to position the point on
an explicit affine model.

Runs in a few seconds.
"""

from adjalex.adjunction import Analyzer
from adjalex.alexander import GlobalCurve, LocalPoint, analyze_curve
from adjalex.exactpoly import poly_parse

GERMS = (
    ("v^5+u^10*v^2+u^25", "a composite tower: a five-fold tangent pencil"
     " refined by a deeper cusp"),
    ("v^4+u^25", "a single four-fold cusp"),
)


def show(germ_text: str, note: str) -> None:
    germ = poly_parse(germ_text, names=("u", "v"))
    an = Analyzer(germ, 10)
    curve = GlobalCurve(
        d=10, points=(LocalPoint(an),), r=1, f=germ, irreducible=True
    )
    data, alex = analyze_curve(curve)
    ideals = [an.ideal(k) for k in range(1, 10)]
    print(f"germ {germ_text}  ({note})")
    print("  k     " + "".join(f"{k:>5}" for k in range(1, 10)))
    print("  rho   " + "".join(f"{i.rho:>5}" for i in ideals))
    print("  iota  " + "".join(f"{an.iota(i):>5}" for i in ideals))
    print("  ell   " + "".join(f"{e:>5}" for e in data.vector()))
    print("  path  " + "".join(f"{rec.path[:5]:>6}" for rec in data.records))
    print(f"  reduced Alexander polynomial: {alex.reduced_text()}")
    print()


def main() -> None:
    for germ_text, note in GERMS:
        show(germ_text, note)
    print("different local data, same global invariant")


if __name__ == "__main__":
    main()
