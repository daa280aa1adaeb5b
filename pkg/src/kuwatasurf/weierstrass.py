"""Weierstrass models y^2 = x^3 + A(t) x + B(t) over Q(t) or Q(sqrt(D))(t):
normalization, discriminant, Kodaira fibers, Euler characteristic,
Shioda-Tate budgets, base change and quadratic twists at 0 and infinity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactmath.ratfunc import RatFunc
from .exactmath.roots import field_roots
from .exactmath.scalars import Field, QQ, QuadElt, common_field, format_scalar, parse_scalar
from .exactmath.unipoly import UniPoly

INF = float("inf")

COMPONENTS = {"II": 1, "III": 2, "IV": 3, "IV*": 7, "III*": 8, "II*": 9}

TWIST_INVOLUTION = {"II": "IV*", "IV*": "II", "III": "III*", "III*": "III", "IV": "II*", "II*": "IV"}


class SurfaceError(ValueError):
    """Invalid or degenerate Weierstrass data."""


def component_count(kind: str) -> int:
    """Number of irreducible components of a Kodaira fiber."""
    if kind == "smooth":
        return 1
    if kind in COMPONENTS:
        return COMPONENTS[kind]
    if kind.startswith("I") and kind.endswith("*"):
        return int(kind[1:-1]) + 5
    if kind.startswith("I"):
        nu = int(kind[1:])
        return nu if nu > 0 else 1
    raise ValueError(f"unknown Kodaira type {kind!r}")


def twist_type(kind: str) -> str:
    """Fiber type after a quadratic twist at the place."""
    if kind == "smooth":
        return "I0*"
    if kind in TWIST_INVOLUTION:
        return TWIST_INVOLUTION[kind]
    if kind.endswith("*"):
        nu = int(kind[1:-1])
        return f"I{nu}" if nu else "smooth"
    return f"I{int(kind[1:])}*"


def kodaira_from_valuations(vA, vB, vD) -> tuple[str, tuple]:
    """Kodaira type from (v(A), v(B), v(Delta)) in characteristic 0.

    The model is first made locally minimal; returns the type and the
    reduced valuations.  ``INF`` stands for the valuation of 0.
    """
    k = 0
    while vA >= 4 * (k + 1) and vB >= 6 * (k + 1):
        k += 1
    vA, vB, vD = vA - 4 * k, vB - 6 * k, vD - 12 * k
    red = (vA, vB, vD)
    if vD == 0:
        return "smooth", red
    if vA == 0 and vB == 0:
        return f"I{vD}", red
    if vA >= 1 and vB == 1:
        kind, expect = "II", 2
    elif vA == 1 and vB >= 2:
        kind, expect = "III", 3
    elif vA >= 2 and vB == 2:
        kind, expect = "IV", 4
    elif vA == 2 and vB == 3:
        kind = "I0*" if vD == 6 else f"I{vD - 6}*"
        expect = vD
    elif vA >= 3 and vB == 3:
        kind, expect = "I0*", 6
    elif vA == 2 and vB >= 4:
        kind, expect = "I0*", 6
    elif vA >= 3 and vB == 4:
        kind, expect = "IV*", 8
    elif vA == 3 and vB >= 5:
        kind, expect = "III*", 9
    elif vA >= 4 and vB == 5:
        kind, expect = "II*", 10
    else:
        raise SurfaceError(f"valuations {red} fit no Kodaira type")
    if vD != expect:
        raise SurfaceError(f"valuations {red} inconsistent with type {kind}")
    return kind, red


# -- places -------------------------------------------------------------------


@dataclass(frozen=True)
class Place:
    """A finite place (monic polynomial, possibly a bundle of conjugate points
    sharing the same local data) or infinity (``poly is None``)."""

    poly: UniPoly | None = None

    @staticmethod
    def at(a, var: str = "t") -> Place:
        return Place(UniPoly((-a, 1), var))

    @property
    def is_infinity(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree

    @property
    def point(self):
        """The coordinate value of a degree-1 finite place."""
        if self.poly is None or self.poly.degree != 1:
            raise ValueError("place is not a single finite point")
        return -self.poly[0]

    @property
    def label(self) -> str:
        if self.poly is None:
            return "inf"
        if self.poly.degree == 1:
            return format_scalar(self.point)
        return str(self.poly)

    def sort_key(self):
        if self.poly is None:
            return (2, 0, "")
        if self.poly.degree == 1:
            p = self.point
            if isinstance(p, QuadElt):
                return (0, 1, (p.a, p.b))
            return (0, 0, (Fraction(p), 0))
        return (1, self.poly.degree, str(self.poly))


@dataclass(frozen=True)
class FiberData:
    place: Place
    kind: str
    vDelta: int
    components: int
    vA: float = 0
    vB: float = 0

    @property
    def degree(self) -> int:
        return self.place.degree

    def to_json(self) -> dict:
        out = {
            "place": self.place.label,
            "type": self.kind,
            "vDelta": self.vDelta,
            "components": self.components,
        }
        if self.place.degree > 1:
            out["placeDegree"] = self.place.degree
        return out


def _val(p: UniPoly, place: UniPoly) -> float:
    return INF if p.is_zero() else p.valuation(place)


def _val_at_inf(p: UniPoly, weight: int) -> float:
    return INF if p.is_zero() else weight - p.degree


# -- surfaces ---------------------------------------------------------------------


@dataclass(frozen=True)
class WeierstrassSurface:
    A: UniPoly
    B: UniPoly
    field: Field = QQ
    shift: int = 0  # k of the clearing substitution (x, y) -> (t^{2k} x, t^{3k} y)
    name: str = ""

    def __post_init__(self):
        if (self.A * self.A * self.A * 4 + self.B * self.B * 27).is_zero():
            raise SurfaceError("discriminant vanishes identically")
        fld = common_field(*self.A.coeffs, *self.B.coeffs)
        if fld.D is not None and fld.D != self.field.D:
            raise SurfaceError("coefficients outside the surface's field")

    @property
    def var(self) -> str:
        return self.A.var if self.A.coeffs else self.B.var

    def rhs(self, x):
        """x^3 + A x + B for x a scalar, UniPoly or RatFunc."""
        return x * x * x + self.A * x + self.B

    def discriminant(self) -> UniPoly:
        return (self.A**3 * 4 + self.B**2 * 27) * (-16)

    def j_invariant(self) -> RatFunc:
        a3 = self.A**3 * 4
        return RatFunc(a3 * 1728, a3 + self.B**2 * 27)

    def weight(self) -> int:
        """Smallest N with deg A <= 4N and deg B <= 6N (the infinity chart)."""
        n = 0
        while self.A.degree > 4 * n or self.B.degree > 6 * n:
            n += 1
        return max(n, 1)

    def infinity_chart(self) -> tuple[UniPoly, UniPoly]:
        """(A*, B*) with A*(u) = u^{4N} A(1/u), B*(u) = u^{6N} B(1/u)."""
        n = self.weight()
        return self.A.reverse(4 * n) if self.A.coeffs else self.A, (
            self.B.reverse(6 * n) if self.B.coeffs else self.B
        )

    def with_coefficients(self, A: UniPoly, B: UniPoly, name: str = "") -> WeierstrassSurface:
        return WeierstrassSurface(A, B, self.field, 0, name or self.name)

    def over(self, fld: Field) -> WeierstrassSurface:
        return WeierstrassSurface(self.A, self.B, fld, self.shift, self.name)

    # -- fibers ----------------------------------------------------------
    def finite_places(self) -> list[Place]:
        """Places where the discriminant vanishes.

        Points defined over the surface's field become degree-1 places; the
        remaining zeros are grouped into bundles on which v(A), v(B), v(Delta)
        are constant.  Bundles are not certified irreducible; the local data
        (and so the fiber type) is the same at each of their geometric points.
        """
        disc = self.discriminant()
        t = UniPoly.gen(self.var)
        places = []
        cof = disc
        for r, m in field_roots(disc, self.field):
            places.append(Place(t - r))
            cof = cof.exquo((t - r) ** m)
        for g, _ in cof.squarefree_decomposition():
            for piece in _refine(g, [self.A, self.B]):
                places.append(Place(piece.monic()))
        return sorted(places, key=Place.sort_key)

    def local_valuations(self, place: Place) -> tuple:
        if place.is_infinity:
            n = self.weight()
            vD = 12 * n - self.discriminant().degree
            return _val_at_inf(self.A, 4 * n), _val_at_inf(self.B, 6 * n), vD
        return _val(self.A, place.poly), _val(self.B, place.poly), self.discriminant().valuation(place.poly)

    def classify(self, place: Place) -> FiberData:
        vA, vB, vD = self.local_valuations(place)
        kind, red = kodaira_from_valuations(vA, vB, vD)
        return FiberData(place, kind, int(red[2]), component_count(kind), red[0], red[1])

    def fibers(self, include_smooth_infinity: bool = True) -> list[FiberData]:
        out = [self.classify(p) for p in self.finite_places()]
        inf = self.classify(Place())
        if include_smooth_infinity or inf.kind != "smooth":
            out.append(inf)
        return out

    def singular_fibers(self) -> list[FiberData]:
        return [f for f in self.fibers() if f.kind != "smooth"]

    def euler_characteristic(self) -> int:
        total = sum(f.vDelta * f.degree for f in self.fibers())
        if total % 12:
            raise SurfaceError(f"total discriminant valuation {total} is not divisible by 12")
        return total // 12

    def shioda_tate(self, rho: int | None = None) -> dict:
        """Mordell-Weil rank budget over the algebraic closure."""
        fibers = self.fibers()
        trivial = sum((f.components - 1) * f.degree for f in fibers)
        chi = self.euler_characteristic()
        out = {"chi": chi, "sumComponents": trivial, "rank": None}
        if chi == 1:
            out["rank"] = 8 - trivial
            out["formula"] = f"8 - {trivial}"
        elif rho is not None:
            out["rank"] = rho - 2 - trivial
            out["formula"] = f"{rho} - 2 - {trivial}"
        else:
            out["formula"] = f"rho - 2 - {trivial}"
        return out

    def fiber_at(self, a) -> FiberData:
        if a is None or a == "inf":
            return self.classify(Place())
        return self.classify(Place.at(a, self.var))

    def __str__(self):
        return f"y^2 = x^3 + ({self.A})*x + ({self.B})"


def _refine(g: UniPoly, polys) -> list[UniPoly]:
    """Split squarefree g into pieces on which each poly's valuation is constant."""
    pieces = [g]
    for P in polys:
        if P.is_zero():
            continue
        nxt = []
        for piece in pieces:
            # G_k = gcd(piece, P, P', ..., P^(k-1)): roots where v(P) >= k
            current = piece
            deriv = P
            while current.degree > 0:
                h = current.gcd(deriv)
                rest = current.exquo(h) if h.degree > 0 else current
                if rest.degree > 0:
                    nxt.append(rest)
                if h.degree <= 0:
                    break
                current = h
                deriv = deriv.derivative()
                if deriv.is_zero():
                    nxt.append(current)
                    break
        pieces = nxt
    return pieces


# -- model changes ----------------------------------------------------------------


def _monomial_den(r: RatFunc) -> int:
    d = r.den
    if d.degree > 0 and any(c != 0 for c in d.coeffs[:-1]):
        raise SurfaceError("poles away from t = 0 and t = infinity; shift the parameter first")
    return d.degree


def normalize_model(A, B, fld: Field = QQ, name: str = "") -> WeierstrassSurface:
    """Clear poles at t = 0 by (x, y) -> (t^{2k} x, t^{3k} y) with minimal k."""
    A = A if isinstance(A, RatFunc) else RatFunc(A)
    B = B if isinstance(B, RatFunc) else RatFunc(B)
    pa, pb = _monomial_den(A), _monomial_den(B)
    k = 0
    while 4 * k < pa or 6 * k < pb:
        k += 1
    t = UniPoly.gen(A.var)
    An = (A * RatFunc(t ** (4 * k))).as_poly()
    Bn = (B * RatFunc(t ** (6 * k))).as_poly()
    return WeierstrassSurface(An, Bn, fld, k, name)


def minimalize_at_zero(A: UniPoly, B: UniPoly) -> tuple[UniPoly, UniPoly]:
    while (A.is_zero() or A.valuation() >= 4) and (B.is_zero() or B.valuation() >= 6):
        if A.is_zero() and B.is_zero():
            break
        A = UniPoly(A.coeffs[4:], A.var) if A.coeffs else A
        B = UniPoly(B.coeffs[6:], B.var) if B.coeffs else B
    return A, B


def base_change(S: WeierstrassSurface, n: int, name: str = "") -> WeierstrassSurface:
    """Pull back along t -> t^n and re-minimalize at 0 (infinity is automatic)."""
    if n < 1:
        raise ValueError("base change degree must be >= 1")
    if n == 1:
        return S
    A, B = minimalize_at_zero(S.A.subs_power(n), S.B.subs_power(n))
    return WeierstrassSurface(A, B, S.field, 0, name)


def predicted_ramified_type(kind: str, e: int = 2) -> str:
    """Fiber type above a place of ramification index e (from valuations)."""
    samples = {
        "smooth": (0, 0, 0), "II": (1, 1, 2), "III": (1, 2, 3), "IV": (2, 2, 4),
        "I0*": (2, 3, 6), "IV*": (3, 4, 8), "III*": (3, 5, 9), "II*": (4, 5, 10),
    }
    if kind in samples:
        vA, vB, vD = samples[kind]
    elif kind.endswith("*"):
        nu = int(kind[1:-1])
        vA, vB, vD = 2, 3, 6 + nu
    else:
        vA, vB, vD = 0, 0, int(kind[1:])
    return kodaira_from_valuations(e * vA, e * vB, e * vD)[0]


def quadratic_twist_0_infty(S: WeierstrassSurface, name: str = "") -> tuple[WeierstrassSurface, dict]:
    """Twist by t (ramified at 0 and infinity): A -> A t^2, B -> B t^3, then
    minimalize.  Returns the new surface and the fiber-change report."""
    t = UniPoly.gen(S.var)
    A, B = minimalize_at_zero(S.A * t**2, S.B * t**3)
    T = WeierstrassSurface(A, B, S.field, 0, name)
    report = {}
    for lab, place in (("0", Place.at(0, S.var)), ("inf", Place())):
        before = S.classify(place).kind
        after = T.classify(place).kind
        report[lab] = {"before": before, "after": after, "predicted": twist_type(before)}
    return T, report


def surface_from_json(data: dict) -> WeierstrassSurface:
    D = data.get("D")
    fld = Field(int(D)) if D is not None else QQ
    A = UniPoly([parse_scalar(c) for c in data.get("A", [])])
    B = UniPoly([parse_scalar(c) for c in data.get("B", [])])
    return WeierstrassSurface(A, B, fld, 0, data.get("name", ""))
