"""Sections of a Weierstrass surface as points over the function field:
verification, group law, intersection numbers, fiber components, height
contributions and the height-pairing Gram matrix.

Height pairing (standard normalization):
    <P, P> = 2 chi + 2 (P.Z) - sum contr_v(P)
    <P, Q> = chi + (P.Z) + (Q.Z) - (P.Q) - sum contr_v(P, Q)
(P.Q) is computed as ((P - Q).Z): translation by a section is an
automorphism of the minimal surface, so the two numbers agree, and the
right-hand side only needs pole orders.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exactmath.linalg import exact_rank_det
from .exactmath.ratfunc import RatFunc
from .exactmath.scalars import Field, QuadElt, format_scalar, height as scalar_height, short_scalar
from .exactmath.unipoly import UniPoly
from .weierstrass import FiberData, Place, WeierstrassSurface


class SectionError(ValueError):
    """Candidate is not a section, or sections live on different surfaces."""


class ComponentUnknown(Exception):
    """Component data needed for a contribution cannot be determined."""


def _rf(v) -> RatFunc:
    if isinstance(v, RatFunc):
        return v
    if isinstance(v, UniPoly):
        return RatFunc(v)
    return RatFunc(UniPoly.const(v))


@dataclass(frozen=True, eq=False)
class SectionPt:
    surface: WeierstrassSurface
    x: RatFunc | None  # None for the zero section
    y: RatFunc | None
    label: str = ""

    @property
    def is_zero(self) -> bool:
        return self.x is None

    def __eq__(self, other):
        if not isinstance(other, SectionPt):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.x, self.y))

    def __neg__(self):
        return negate(self)

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, negate(other))

    def __rmul__(self, n: int):
        return multiply(self, n)

    def with_label(self, label: str) -> SectionPt:
        return SectionPt(self.surface, self.x, self.y, label)

    def x_degree(self) -> int:
        if self.is_zero:
            return -1
        return max(self.x.num.degree, self.x.den.degree)

    def sort_key(self):
        if self.is_zero:
            return (-1, 0, "")
        h = max((scalar_height(c) for c in self.x.num.coeffs + self.x.den.coeffs), default=0)
        return (self.x_degree(), h, str(self.x), str(self.y))

    def to_json(self) -> dict:
        if self.is_zero:
            return {"zero": True}
        out = {"x": _rf_json(self.x), "y": _rf_json(self.y)}
        if self.label:
            out["label"] = self.label
        return out

    def __str__(self):
        if self.is_zero:
            return "O"
        return f"(x = {self.x}, y = {self.y})"


def _poly_json(p: UniPoly) -> list[str]:
    return [format_scalar(c) for c in p.coeffs]


def _rf_json(r: RatFunc) -> dict:
    out = {"num": _poly_json(r.num)}
    if not r.is_poly():
        out["den"] = _poly_json(r.den)
    return out


def zero_section(S: WeierstrassSurface) -> SectionPt:
    return SectionPt(S, None, None, "O")


def residual(S: WeierstrassSurface, x, y) -> RatFunc:
    x, y = _rf(x), _rf(y)
    return y * y - S.rhs(x)


def verify_section(S: WeierstrassSurface, x, y, label: str = "") -> SectionPt:
    """Build a section after checking y^2 = x^3 + A x + B exactly."""
    x, y = _rf(x), _rf(y)
    res = y * y - S.rhs(x)
    if not res.is_zero():
        raise SectionError(f"not a section: residual {res}")
    return SectionPt(S, x, y, label)


def _same_surface(P: SectionPt, Q: SectionPt):
    if P.surface is not Q.surface and (P.surface.A != Q.surface.A or P.surface.B != Q.surface.B):
        raise SectionError("sections live on different surfaces")


# -- group law ---------------------------------------------------------------------


def negate(P: SectionPt) -> SectionPt:
    if P.is_zero:
        return P
    return SectionPt(P.surface, P.x, -P.y, f"-{P.label}" if P.label else "")


def add(P: SectionPt, Q: SectionPt) -> SectionPt:
    _same_surface(P, Q)
    if P.is_zero:
        return Q
    if Q.is_zero:
        return P
    S = P.surface
    if P.x == Q.x:
        if (P.y + Q.y).is_zero():
            return zero_section(S)
        lam = (P.x * P.x * 3 + RatFunc(S.A)) / (P.y * 2)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    x3 = lam * lam - P.x - Q.x
    y3 = lam * (P.x - x3) - P.y
    return SectionPt(S, x3, y3)


def multiply(P: SectionPt, n: int) -> SectionPt:
    if n < 0:
        return multiply(negate(P), -n)
    result = zero_section(P.surface)
    base = P
    while n:
        if n & 1:
            result = add(result, base)
        n >>= 1
        if n:
            base = add(base, base)
    return result


# -- intersections -------------------------------------------------------------------


def pz_intersection(P: SectionPt) -> int:
    """(P.Z): half the total pole order of x, counting the infinity chart."""
    S = P.surface
    if P.is_zero:
        return -S.euler_characteristic()
    n = S.weight()
    fin = P.x.den.degree
    inf = max(0, P.x.num.degree - P.x.den.degree - 2 * n)
    for g, m in P.x.den.squarefree_decomposition():
        if m % 2:
            raise SectionError("odd pole order of x: model is not minimal")
    if inf % 2:
        raise SectionError("odd pole order of x at infinity: model is not minimal")
    return (fin + inf) // 2


def pq_intersection(P: SectionPt, Q: SectionPt) -> int:
    """(P.Q) for distinct sections, as ((P - Q).Z)."""
    _same_surface(P, Q)
    if P == Q:
        raise SectionError("(P.Q) needs distinct sections")
    return pz_intersection(add(P, negate(Q)))


def pq_intersection_local(P: SectionPt, Q: SectionPt) -> int:
    """(P.Q) by the fiber-coordinate rule at each meeting point.

    Where both sections are finite: v(x_P - x_Q) when y_P does not vanish,
    else v(y_P - y_Q).  Where both have poles of x the chart (x/y, 1/y) is
    used.  The infinity chart contributes only its point u = 0.  Valid where
    the sections meet at smooth points of the Weierstrass fibers; kept as an
    independent check of pq_intersection there.
    """
    _same_surface(P, Q)
    if P == Q:
        raise SectionError("(P.Q) needs distinct sections")
    if P.is_zero or Q.is_zero:
        return pz_intersection(Q if P.is_zero else P)
    n = P.surface.weight()
    finite = _chart_total(P.x, P.y, Q.x, Q.y, None)
    u = UniPoly.gen(P.x.var)
    at_inf = _chart_total(
        P.x.invert_variable(2 * n),
        P.y.invert_variable(3 * n),
        Q.x.invert_variable(2 * n),
        Q.y.invert_variable(3 * n),
        u,
    )
    return finite + at_inf


def _chart_total(xP, yP, xQ, yQ, only: UniPoly | None) -> int:
    total = 0
    dx, dy = xP - xQ, yP - yQ
    poles = xP.den * xQ.den
    meet = dy.num if dx.is_zero() else dx.num.gcd(dy.num) if not dy.is_zero() else dx.num
    meet = _squarefree(meet)
    if only is not None:
        meet = meet.gcd(only) if meet.degree > 0 else meet
    meet = _remove_factors(meet, poles)
    if meet.degree > 0:
        y_zero = meet.gcd(yP.num) if not yP.is_zero() else meet
        y_nonzero = meet.exquo(y_zero) if y_zero.degree > 0 else meet
        if y_nonzero.degree > 0:
            total += _total_multiplicity(y_nonzero, dx.num)
        if y_zero.degree > 0:
            total += _total_multiplicity(y_zero, dy.num)
    common = _squarefree(xP.den.gcd(xQ.den))
    if only is not None and common.degree > 0:
        common = common.gcd(only)
    if common.degree > 0:
        dz = xP / yP - xQ / yQ
        total += _total_multiplicity(common, dz.num)
    return total


def _squarefree(p: UniPoly) -> UniPoly:
    if p.degree <= 0:
        return p
    return p.exquo(p.gcd(p.derivative())).monic()


def _remove_factors(g: UniPoly, h: UniPoly) -> UniPoly:
    c = g.gcd(h)
    while c.degree > 0:
        g = g.exquo(c)
        c = g.gcd(h)
    return g


def _total_multiplicity(g: UniPoly, f: UniPoly) -> int:
    """Sum over roots r of the squarefree g of ord_r(f), counted with the
    degree of g: sum_k deg gcd(g, f, f', ..., f^(k-1))."""
    if f.is_zero():
        raise SectionError("sections coincide along a whole chart")
    total, cur, d = 0, g, f
    while True:
        cur = cur.gcd(d)
        if cur.degree <= 0:
            return total
        total += cur.degree
        d = d.derivative()


# -- fiber components ----------------------------------------------------------------


@dataclass(frozen=True)
class Component:
    """Fiber component met by a section: identity, or a labeled non-identity one."""

    identity: bool
    label: object = None  # exact value distinguishing non-identity components
    known: bool = True

    def __str__(self):
        if not self.known:
            return "component unknown"
        if self.identity:
            return "identity"
        return f"non-identity({short_scalar(self.label)})" if self.label is not None else "non-identity"


IDENTITY = Component(True)
UNKNOWN = Component(False, None, False)


def _local_data(S: WeierstrassSurface, place: Place, P: SectionPt):
    """(A, B, x, y) in a local coordinate s vanishing at a degree-1 place."""
    var = S.var
    if place.is_infinity:
        n = S.weight()
        A, B = S.infinity_chart()
        x = P.x.invert_variable(2 * n)
        y = P.y.invert_variable(3 * n)
        return A, B, x, y
    a = place.point
    s = UniPoly((a, 1), var)  # t = s + a
    return S.A(s), S.B(s), P.x(RatFunc(s)), P.y(RatFunc(s))


def _value_at_zero(r: RatFunc):
    return r.num[0] / r.den[0] if r.den[0] != 0 else None


def component_at(P: SectionPt, fiber: FiberData) -> Component:
    """Which component of the fiber the section meets."""
    if P.is_zero:
        return IDENTITY
    kind = fiber.kind
    if kind in ("smooth", "I1", "II"):
        return IDENTITY
    S = P.surface
    place = fiber.place
    if place.degree > 1:
        return _bundle_component(P, fiber)
    A, B, x, y = _local_data(S, place, P)
    if x.den[0] == 0:
        return IDENTITY  # x has a pole: the section meets the zero section's component
    x0 = _value_at_zero(x)
    if _multiplicative(kind):
        a0, b0 = A[0], B[0]
        if a0 == 0:
            return UNKNOWN
        node = Fraction(-3) * b0 / (2 * a0) if not isinstance(b0, QuadElt) and not isinstance(a0, QuadElt) else -3 * b0 / (2 * a0)
        y0 = _value_at_zero(y)
        if x0 != node or y0 != 0:
            return IDENTITY
        if kind == "I2":
            return Component(False, 1)
        return UNKNOWN
    # additive: singular point of the Weierstrass fiber is (0, 0)
    if x0 != 0:
        return IDENTITY
    if kind == "IV":
        ys = y.num.exquo(UniPoly.gen(y.var)) if y.num[0] == 0 else None
        if ys is None:
            return UNKNOWN
        return Component(False, ys[0] / y.den[0])
    if kind == "I0*":
        return Component(False, x.num[1] / x.den[0])
    return UNKNOWN


def _multiplicative(kind: str) -> bool:
    return kind[0] == "I" and kind[1:].isdigit()


def _bundle_component(P: SectionPt, fiber: FiberData) -> Component:
    """Bundles of conjugate points: decide only the 'misses the singular
    point everywhere' case (identity at every point)."""
    S = P.surface
    g = fiber.place.poly
    if P.x.den.gcd(g).degree > 0:
        return IDENTITY if P.x.den.gcd(g) == g else UNKNOWN
    if not _multiplicative(fiber.kind):
        through = P.x.num.gcd(g)
    else:
        node_x = RatFunc(S.B * (-3)) / RatFunc(S.A * 2)
        through = (P.x - node_x).num.gcd(g).gcd(P.y.num)
    if through.degree <= 0:
        return IDENTITY
    if fiber.kind == "I2" and through == g:
        return Component(False, "all")
    return UNKNOWN


def contribution(P: SectionPt, Q: SectionPt, fiber: FiberData) -> Fraction:
    """Local correction term contr_v(P, Q) (contr_v(P) when P == Q)."""
    cP, cQ = component_at(P, fiber), component_at(Q, fiber)
    if (cP.known and cP.identity) or (cQ.known and cQ.identity):
        return Fraction(0)
    if not cP.known or not cQ.known:
        raise ComponentUnknown(f"needs manual component data at {fiber.place.label} ({fiber.kind})")
    kind = fiber.kind
    same = P == Q or cP.label == cQ.label
    deg = fiber.degree
    if kind == "IV":
        if deg > 1 and P != Q:
            raise ComponentUnknown(f"needs manual component data at {fiber.place.label} ({kind})")
        return Fraction(2, 3) * deg if same else Fraction(1, 3) * deg
    if kind == "I0*":
        if deg > 1 and P != Q:
            raise ComponentUnknown(f"needs manual component data at {fiber.place.label} ({kind})")
        return Fraction(1) * deg if same else Fraction(1, 2) * deg
    if kind == "I2":
        return Fraction(1, 2) * deg
    if kind == "III":
        return Fraction(1, 2) * deg
    raise ComponentUnknown(f"unsupported fiber type {kind} at {fiber.place.label}")


# -- height pairing -----------------------------------------------------------------


@dataclass
class GramReport:
    sections: list
    matrix: list
    rank: int
    det: object
    contributions: list = field(default_factory=list)  # [(i, j, place, value)]
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "sections": [s.to_json() for s in self.sections],
            "matrix": [[format_scalar(v) for v in row] for row in self.matrix],
            "rank": self.rank,
            "det": format_scalar(self.det),
            "contributions": [
                {"i": i, "j": j, "place": pl, "value": format_scalar(v)} for i, j, pl, v in self.contributions
            ],
            "notes": list(self.notes),
        }

    def text(self) -> str:
        lines = [f"rank {self.rank}, det {short_scalar(self.det)}"]
        for row in self.matrix:
            lines.append("  [" + ", ".join(short_scalar(v) for v in row) + "]")
        lines.extend(self.notes)
        return "\n".join(lines)


def reducible_fibers(S: WeierstrassSurface) -> list[FiberData]:
    return [f for f in S.fibers() if f.components > 1]


def height_pairing(P: SectionPt, Q: SectionPt, fibers=None, ledger=None):
    _same_surface(P, Q)
    if P.is_zero or Q.is_zero:
        return Fraction(0)
    S = P.surface
    chi = S.euler_characteristic()
    fibers = reducible_fibers(S) if fibers is None else fibers
    contr = Fraction(0)
    for fib in fibers:
        c = contribution(P, Q, fib)
        if c and ledger is not None:
            ledger.append((fib.place.label, c))
        contr += c
    if P == Q:
        return 2 * chi + 2 * pz_intersection(P) - contr
    return chi + pz_intersection(P) + pz_intersection(Q) - pq_intersection(P, Q) - contr


def height(P: SectionPt) -> Fraction:
    return height_pairing(P, P)


def gram_matrix(sections: list[SectionPt]) -> GramReport:
    """Exact Gram matrix of the height pairing, with rank and determinant."""
    sections = [s for s in sections if not s.is_zero]
    if not sections:
        return GramReport([], [], 0, 1, notes=["no nonzero sections"])
    S = sections[0].surface
    fibers = reducible_fibers(S)
    n = len(sections)
    M = [[Fraction(0)] * n for _ in range(n)]
    contribs = []
    for i in range(n):
        for j in range(i, n):
            led: list = []
            v = height_pairing(sections[i], sections[j], fibers, led)
            M[i][j] = M[j][i] = v
            contribs.extend((i, j, pl, c) for pl, c in led)
    rank, det = exact_rank_det(M)
    return GramReport(list(sections), M, rank, det, contribs)


# -- symmetries ------------------------------------------------------------------------


def transport(P: SectionPt, target: WeierstrassSurface, x, y, label: str = "") -> SectionPt:
    """Image of P under a model map, verified on the target surface."""
    return verify_section(target, x, y, label or P.label)


def omega_twist(P: SectionPt, omega) -> SectionPt:
    """(x, y) -> (omega x, y) on a j = 0 surface (A = 0), omega^3 = 1."""
    S = P.surface
    if not S.A.is_zero():
        raise SectionError("x -> omega x preserves the equation only when A = 0")
    if omega * omega * omega != 1:
        raise SectionError("omega must be a cube root of unity")
    lab = f"omega*{P.label}" if P.label else ""
    D = omega.D if isinstance(omega, QuadElt) else None
    target = S if D is None or S.field.D == D else S.over(Field(D))
    return verify_section(target, P.x * omega, P.y, lab)


def invert_parameter(P: SectionPt, target: WeierstrassSurface | None = None) -> SectionPt:
    """t -> 1/t with the model transported by weight N = weight of the surface."""
    S = P.surface
    n = S.weight()
    A, B = S.infinity_chart()
    target = target or WeierstrassSurface(A, B, S.field, 0, S.name + "^inv" if S.name else "")
    if P.is_zero:
        return zero_section(target)
    return verify_section(target, P.x.invert_variable(2 * n), P.y.invert_variable(3 * n), P.label)


def substitute_parameter(P: SectionPt, target: WeierstrassSurface, t_image, x_scale=1, y_scale=1) -> SectionPt:
    """(x(t), y(t)) -> (x_scale * x(phi), y_scale * y(phi)) with phi = t_image,
    verified on target."""
    phi = _rf(t_image)
    return verify_section(target, _rf(x_scale) * P.x(phi), _rf(y_scale) * P.y(phi), P.label)
