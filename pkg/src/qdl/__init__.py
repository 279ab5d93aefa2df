"""Local invariants of plane-curve singularities and asymptotics of degenerating
elliptic families: Milnor numbers, Newton polygons, monodromy, Weierstrass
discriminants, Quillen-norm slopes and Milnor-fiber integral exponents."""

__version__ = "0.1.0"
