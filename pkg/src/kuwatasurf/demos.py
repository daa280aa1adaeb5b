"""Fixed example surfaces used by the command line and the test-suite."""

from __future__ import annotations

from .exactmath.scalars import QQ, Field, QuadElt
from .exactmath.unipoly import UniPoly
from .mwlattice import SectionError, SectionPt, omega_twist, verify_section
from .weierstrass import WeierstrassSurface

TOP_B = (1296, -5184, 9072, -7992, 2916)  # 108 (27 t^4 - 74 t^3 + 84 t^2 - 48 t + 12)
TOP_X = ((0, 6), (-8, 6), (9, -12))  # 6t, 6t - 8, -12t + 9 (low degree first)


def top_surface(fld: Field = QQ) -> WeierstrassSurface:
    """y^2 = x^3 + 108 (27 t^4 - 74 t^3 + 84 t^2 - 48 t + 12)."""
    return WeierstrassSurface(UniPoly([]), UniPoly(list(TOP_B)), fld, 0, "top")


def section_from_x(S: WeierstrassSurface, x: UniPoly, label: str = "") -> SectionPt:
    """Section with the given x; y is the square root with positive leading coefficient."""
    y = S.rhs(x).sqrt(S.field)
    if y is None:
        raise SectionError(f"x = {x} gives no section over {S.field}")
    if y.coeffs and _negative(y.lc):
        y = -y
    return verify_section(S, x, y, label)


def _negative(c) -> bool:
    if isinstance(c, QuadElt):
        return c.a < 0 if c.a else c.b < 0
    return c < 0


def top_sigmas(fld: Field = QQ) -> list[SectionPt]:
    S = top_surface(fld)
    return [section_from_x(S, UniPoly(list(c)), f"sigma{i + 1}") for i, c in enumerate(TOP_X)]


def top_taus(sigmas: list[SectionPt]) -> list[SectionPt]:
    """tau_i = (omega x, y) over Q(sqrt(-3))."""
    omega = Field(-3).zeta3()
    return [omega_twist(P, omega).with_label(f"tau{i + 1}") for i, P in enumerate(sigmas)]
