"""Kuwata's family pi_i: y^2 = x^3 - 48ac x + B(t^i) with
B(t) = Delta(F) t + 864 bd + Delta(E)/t, built from two elliptic curves
E: y^2 = x^3 + ax + b and F: y^2 = x^3 + cx + d.

Besides the surfaces themselves this module carries the explicit catalogs:
deflation to rational quotients psi and pullback of their sections, the
points P_1..P_4, P_1'..P_4' on the twist pi_2', the nine coordinate-line
sections of pi_3', and the 27 lines on the associated cubic surface.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .exactmath.linalg import nullspace
from .exactmath.multipoly import MultiPoly
from .exactmath.ratfunc import RatFunc
from .exactmath.roots import field_roots
from .exactmath.scalars import QQ, Field, QuadElt, format_scalar, parse_scalar, perfect_power
from .exactmath.unipoly import UniPoly
from .mwlattice import SectionPt, invert_parameter, verify_section, zero_section
from .weierstrass import SurfaceError, WeierstrassSurface, normalize_model, quadratic_twist_0_infty


class FamilyError(ValueError):
    """Invalid curve data or a construction whose hypotheses fail."""


# -- curves ----------------------------------------------------------------------------


def legendre_to_depressed(lam, mu) -> tuple[Fraction, Fraction, Fraction]:
    """(a, b, Delta) of y^2 = x(x - lam)(x - mu) moved to y^2 = x^3 + ax + b."""
    lam, mu = Fraction(lam), Fraction(mu)
    if lam * mu * (lam - mu) == 0:
        raise FamilyError(f"degenerate roots 0, {lam}, {mu}")
    a = (lam * mu - lam * lam - mu * mu) / 3
    b = (3 * lam * mu * (lam + mu) - 2 * (lam**3 + mu**3)) / 27
    delta = -16 * (4 * a**3 + 27 * b**2)
    if delta != 16 * lam**2 * mu**2 * (lam - mu) ** 2:
        raise AssertionError("discriminant identity failed")
    return a, b, delta


@dataclass(frozen=True)
class CurveSpec:
    a: Fraction
    b: Fraction
    lam: Fraction | None = None
    mu: Fraction | None = None

    def __post_init__(self):
        if self.delta == 0:
            raise FamilyError("singular curve (Delta = 0)")
        if (self.lam is None) != (self.mu is None):
            raise FamilyError("Legendre data needs both roots")
        if self.lam is not None:
            a, b, _ = legendre_to_depressed(self.lam, self.mu)
            if (a, b) != (self.a, self.b):
                raise FamilyError("depressed and Legendre data disagree")

    @classmethod
    def depressed(cls, a, b) -> CurveSpec:
        return cls(Fraction(a), Fraction(b))

    @classmethod
    def legendre(cls, lam, mu) -> CurveSpec:
        a, b, _ = legendre_to_depressed(lam, mu)
        return cls(a, b, Fraction(lam), Fraction(mu))

    @property
    def delta(self) -> Fraction:
        return -16 * (4 * self.a**3 + 27 * self.b**2)

    @property
    def j(self) -> Fraction:
        return 1728 * 4 * self.a**3 / (4 * self.a**3 + 27 * self.b**2)

    @property
    def has_legendre(self) -> bool:
        return self.lam is not None

    def to_json(self) -> dict:
        out = {"a": format_scalar(self.a), "b": format_scalar(self.b), "Delta": format_scalar(self.delta),
               "j": format_scalar(self.j)}
        if self.has_legendre:
            out.update({"lambda": format_scalar(self.lam), "mu": format_scalar(self.mu)})
        return out


@dataclass(frozen=True)
class KuwataFamily:
    E: CurveSpec
    F: CurveSpec
    h: int = 0
    field: Field = QQ

    def __post_init__(self):
        if self.h not in (0, 1, 2):
            raise FamilyError("h must be 0, 1 or 2")
        if self.E.j == self.F.j:
            raise FamilyError("j(E) = j(F): the constructions assume distinct j-invariants")

    @classmethod
    def from_legendre(cls, lam, mu, nu, xi, h: int = 0, field: Field = QQ) -> KuwataFamily:
        return cls(CurveSpec.legendre(lam, mu), CurveSpec.legendre(nu, xi), h, field)

    @classmethod
    def from_depressed(cls, a, b, c, d, h: int = 0, field: Field = QQ) -> KuwataFamily:
        return cls(CurveSpec.depressed(a, b), CurveSpec.depressed(c, d), h, field)

    def over(self, fld: Field) -> KuwataFamily:
        return KuwataFamily(self.E, self.F, self.h, fld)

    def swapped(self) -> KuwataFamily:
        return KuwataFamily(self.F, self.E, self.h, self.field)

    @property
    def legendre(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        if not (self.E.has_legendre and self.F.has_legendre):
            raise FamilyError("construction needs Legendre data (lambda, mu, nu, xi)")
        return self.E.lam, self.E.mu, self.F.lam, self.F.mu

    @property
    def A0(self) -> Fraction:
        return -48 * self.E.a * self.F.a

    @property
    def bd864(self) -> Fraction:
        return 864 * self.E.b * self.F.b

    def B(self, i: int = 1) -> RatFunc:
        """B(t^i) as a Laurent polynomial."""
        t = RatFunc.gen()
        return self.F.delta * t**i + self.bd864 + self.E.delta / t**i

    def to_json(self) -> dict:
        return {"E": self.E.to_json(), "F": self.F.to_json(), "h": self.h,
                "field": str(self.field)}


def _curve_from_json(d: dict) -> CurveSpec:
    if "lambda" in d and "mu" in d:
        return CurveSpec.legendre(parse_scalar(d["lambda"]), parse_scalar(d["mu"]))
    return CurveSpec.depressed(parse_scalar(d["a"]), parse_scalar(d["b"]))


def family_from_json(data) -> KuwataFamily:
    """Family from {"a","b","c","d"}, {"lambda","mu","nu","xi"} or the
    {"E": ..., "F": ...} form written by KuwataFamily.to_json; optional h and D."""
    if isinstance(data, str):
        data = json.loads(data)
    h = int(data.get("h", 0))
    D = data.get("D")
    if D is None and str(data.get("field", "Q")).startswith("Q(sqrt("):
        D = data["field"][len("Q(sqrt("):-2]
    fld = Field(int(D)) if D is not None else QQ
    if isinstance(data.get("E"), dict) and isinstance(data.get("F"), dict):
        return KuwataFamily(_curve_from_json(data["E"]), _curve_from_json(data["F"]), h, fld)
    if all(k in data for k in ("lambda", "mu", "nu", "xi")):
        vals = [parse_scalar(data[k]) for k in ("lambda", "mu", "nu", "xi")]
        return KuwataFamily.from_legendre(*vals, h=h, field=fld)
    if all(k in data for k in ("a", "b", "c", "d")):
        vals = [parse_scalar(data[k]) for k in ("a", "b", "c", "d")]
        return KuwataFamily.from_depressed(*vals, h=h, field=fld)
    raise FamilyError('family JSON needs keys a, b, c, d or lambda, mu, nu, xi')


# -- surfaces --------------------------------------------------------------------------


def build_pi(fam: KuwataFamily, i: int) -> WeierstrassSurface:
    """Normalized model of pi_i (poles at t = 0 cleared)."""
    if i < 1:
        raise ValueError("i must be >= 1")
    A = RatFunc(UniPoly.const(fam.A0))
    S = normalize_model(A, fam.B(i), fam.field, f"pi_{i}")
    if i <= 6 and S.euler_characteristic() != 2:
        raise SurfaceError(f"pi_{i} should be a K3 surface, got chi = {S.euler_characteristic()}")
    return S


def build_twist(fam: KuwataFamily, i: int) -> WeierstrassSurface:
    """pi_i', the quadratic twist of pi_i ramified at 0 and infinity."""
    if i not in (1, 2, 3):
        raise ValueError("twists are built for i in {1, 2, 3}")
    T, _ = quadratic_twist_0_infty(build_pi(fam, i), f"pi_{i}'")
    return T


class RankExpectation(NamedTuple):
    rank: int
    exact: bool  # False: lower bound


_RANKS = {1: 0, 2: 4, 3: 8, 4: 12, 5: 16, 6: 16}
_Q_BOUNDS = {1: 1, 2: 5, 3: 7, 4: 9, 5: 5, 6: 11}


def expected_ranks(i: int, h: int = 0) -> RankExpectation:
    """Geometric Mordell-Weil rank of pi_i when j(E) != j(F)."""
    if i == 60:
        return RankExpectation(40 + h, False)
    if i not in _RANKS:
        raise ValueError("rank table covers i = 1..6 and the bound for i = 60")
    return RankExpectation(_RANKS[i] + h, True)


def q_rank_bound(i: int) -> int:
    """Upper bound for the rank over Q when E and F are defined over Q."""
    if i not in _Q_BOUNDS:
        raise ValueError("bounds exist for i = 1..6")
    return _Q_BOUNDS[i]


def rank_table(h: int = 0) -> list[dict]:
    rows = [{"i": i, "rank": expected_ranks(i, h).rank, "qBound": q_rank_bound(i)} for i in range(1, 7)]
    rows.append({"i": 60, "rankAtLeast": expected_ranks(60, h).rank})
    return rows


# -- deflation -------------------------------------------------------------------------


def dickson(i: int, alpha) -> UniPoly:
    """D_i(s, alpha) with D_i(t + alpha/t) = t^i + alpha^i/t^i."""
    s = UniPoly.gen("t")
    prev, cur = UniPoly.const(2), s
    if i == 0:
        return prev
    for _ in range(i - 1):
        prev, cur = cur, s * cur - prev * alpha
    return cur


def _roots_of_unity(i: int, fld: Field) -> list:
    out = [Fraction(1)]
    if i == 3 and fld.D == -3:
        z = fld.zeta3()
        out += [z, z * z]
    return out


@dataclass
class Deflation:
    i: int
    alpha: object
    sign: int  # s = sign * (t + alpha/t)
    psi: WeierstrassSurface
    pi: WeierstrassSurface
    witness: str = ""

    def to_json(self) -> dict:
        return {"i": self.i, "alpha": format_scalar(self.alpha), "sign": self.sign,
                "psi": {"A": [format_scalar(c) for c in self.psi.A.coeffs],
                        "B": [format_scalar(c) for c in self.psi.B.coeffs]},
                "witness": self.witness}


def deflate(fam: KuwataFamily, i: int, root_choice: int = 0) -> Deflation:
    """Quotient of pi_i by t -> alpha/t, alpha^i = Delta(E)/Delta(F).

    psi is written as y^2 = x^3 - 48ac x - Delta(F) D_i(s, alpha) + 864 bd
    and the sign in s = +-(t + alpha/t) is whichever makes the substitution
    reproduce pi_i's equation.  root_choice k picks alpha * zeta^k.
    """
    if i not in (3, 5):
        raise ValueError("deflation is defined for i in {3, 5}")
    ratio = fam.E.delta / fam.F.delta
    alpha = perfect_power(ratio, i)
    if alpha is None:
        raise FamilyError(f"Delta(E)/Delta(F) = {ratio} is not an {i}-th power in {fam.field}: needs extension")
    if root_choice:
        units = _roots_of_unity(i, fam.field)
        if root_choice >= len(units):
            raise FamilyError(f"the {i}-th roots of unity are not in {fam.field}")
        alpha = alpha * units[root_choice]
    Bpsi = dickson(i, alpha) * (-fam.F.delta) + fam.bd864
    psi = WeierstrassSurface(UniPoly.const(fam.A0), Bpsi, fam.field, 0, f"psi_{i}")
    target = fam.B(i)
    t = RatFunc.gen()
    for sign in (1, -1):
        s = (t + alpha / t) * sign
        if RatFunc(Bpsi)(s) == target:
            witness = f"B_psi({'' if sign == 1 else '-'}(t + alpha/t)) = B(t^{i})"
            return Deflation(i, alpha, sign, psi, build_pi(fam, i), witness)
    raise AssertionError("substitution identity failed for both signs")


def pullback_section(P: SectionPt, defl: Deflation) -> SectionPt:
    """Section of psi -> section of pi_i via s = sign (t + alpha/t)."""
    target = defl.pi
    if P.is_zero:
        return zero_section(target)
    t = RatFunc.gen()
    s = (t + defl.alpha / t) * defl.sign
    k = target.shift
    x = P.x(s) * t ** (2 * k)
    y = P.y(s) * t ** (3 * k)
    return verify_section(target, x, y, P.label)


def transport_psi(P: SectionPt, src: Deflation, dst: Deflation) -> SectionPt:
    """Move a section between deflations with alpha differing by a root of unity.

    psi_{alpha w^(i-2)}(s) = psi_alpha(w s) for w^i = 1, so P(s) -> P(w s)."""
    fld = dst.psi.field
    for w in _roots_of_unity(src.i, fld):
        if src.alpha * w ** (src.i - 2) == dst.alpha:
            if P.is_zero:
                return zero_section(dst.psi)
            s = RatFunc.gen() * w
            return verify_section(dst.psi, P.x(s), P.y(s), P.label)
    raise FamilyError("deflations are not related by a root of unity in the field")


# -- fiber audit -----------------------------------------------------------------------


def fiber_summary(S: WeierstrassSurface) -> dict:
    fibers = S.singular_fibers()
    out = {
        "surface": S.name,
        "A": [format_scalar(c) for c in S.A.coeffs],
        "B": [format_scalar(c) for c in S.B.coeffs],
        "fibers": [f.to_json() for f in fibers],
        "chi": S.euler_characteristic(),
        "shiodaTate": S.shioda_tate(),
    }
    return out


def fiber_audit(fam: KuwataFamily) -> dict:
    """Fiber types of pi_2, pi_3, pi_6, pi_2', pi_3' and psi (when defined)."""
    out = {}
    for i in (2, 3, 6):
        out[f"pi_{i}"] = fiber_summary(build_pi(fam, i))
    for i in (2, 3):
        out[f"pi_{i}'"] = fiber_summary(build_twist(fam, i))
    try:
        out["psi_3"] = fiber_summary(deflate(fam, 3).psi)
    except FamilyError as exc:
        out["psi_3"] = {"error": str(exc)}
    return out


# -- CorQ parametrization and the points on pi_2' --------------------------------------


@dataclass
class CorQParams:
    rho: Fraction
    tau: Fraction
    u: Fraction
    lam: Fraction
    mu: Fraction
    nu: Fraction
    xi: Fraction
    roots: dict  # l, m, n, k, l2, n2
    squares: dict  # quantity name -> (value, square root or None)
    legendre: tuple
    j_distinct: bool
    problems: list = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.problems

    def family(self, h: int = 0, fld: Field = QQ) -> KuwataFamily:
        if not self.valid:
            raise FamilyError("; ".join(self.problems))
        return KuwataFamily.from_legendre(self.lam, self.mu, self.nu, self.xi, h, fld)

    def to_json(self) -> dict:
        f = format_scalar
        return {
            "rho": f(self.rho), "tau": f(self.tau), "u": f(self.u),
            "lambda": f(self.lam), "mu": f(self.mu), "nu": f(self.nu), "xi": f(self.xi),
            "roots": {k: f(v) for k, v in self.roots.items()},
            "squares": {k: {"value": f(v), "sqrt": None if r is None else f(r)} for k, (v, r) in self.squares.items()},
            "legendreParameters": [f(v) for v in self.legendre],
            "jDistinct": self.j_distinct,
            "valid": self.valid,
            "problems": list(self.problems),
        }


def _legendre_j(p: Fraction) -> Fraction:
    return 256 * (p * p - p + 1) ** 3 / (p * p * (p - 1) ** 2)


def corq_params(rho, tau, u, l2=1) -> CorQParams:
    """(lambda, mu, nu, xi) = (l^2, m^2, n^2, k^2) from (rho, tau, u).

    Only the product l2 n2 is constrained; the split is l2 (default 1) and
    n2 = product / l2, which keeps every square condition intact.
    """
    rho, tau, u, l2 = Fraction(rho), Fraction(tau), Fraction(u), Fraction(l2)
    for name, v in (("rho", rho), ("tau", tau)):
        if v in (0, 1, -1):
            raise FamilyError(f"{name} must avoid 0 and +-1")
    if u == 0 or l2 == 0:
        raise FamilyError("u and l2 must be nonzero")
    prod = u * u * (rho - 1) * (tau**2 - 1) / (4 * (rho + 1) * tau**2)
    n2 = prod / l2
    k = n2 * (tau**2 + 1) / (tau**2 - 1)
    n = n2 * 2 * tau / (tau**2 - 1)
    m = l2 * (rho**2 + 1) / (rho**2 - 1)
    l = l2 * 2 * rho / (rho**2 - 1)
    lam, mu, nu, xi = l * l, m * m, n * n, k * k
    problems = []
    if rho == tau:
        problems.append("rho = tau gives isomorphic curves")
    squares = {}
    for name, v in (("2(k+n2)(m+l)", 2 * (k + n2) * (m + l)), ("2(k+n2)(m-l)", 2 * (k + n2) * (m - l)),
                    ("2(m+l2)(k+n)", 2 * (m + l2) * (k + n)), ("2(m+l2)(k-n)", 2 * (m + l2) * (k - n))):
        r = perfect_power(v, 2) if v > 0 else None
        squares[name] = (v, r)
        if r is None:
            problems.append(f"{name} = {v} is not a nonzero square")
    leg = ((2 * tau / (tau**2 + 1)) ** 2, (2 * rho / (rho**2 + 1)) ** 2)
    j_distinct = True
    try:
        jE = CurveSpec.legendre(lam, mu).j
        jF = CurveSpec.legendre(nu, xi).j
        j_distinct = jE != jF
    except FamilyError as exc:
        problems.append(str(exc))
    if _legendre_j(leg[0]) == _legendre_j(leg[1]):
        j_distinct = False
    if not j_distinct and "rho = tau gives isomorphic curves" not in problems:
        problems.append("j(E) = j(F)")
    roots = {"l": l, "m": m, "n": n, "k": k, "l2": l2, "n2": n2}
    return CorQParams(rho, tau, u, lam, mu, nu, xi, roots, squares, leg, j_distinct, problems)


def p1_x(lam, mu, nu, xi, sl, sm, sx, sxn) -> RatFunc:
    """x-coordinate of P_1 on y^2 = x^3 - 48ac x + B(t^2), given square roots
    sl, sm, sx, sxn of lam, mu, xi, xi - nu."""
    t = RatFunc.gen()
    c_inv = 2 * (sl + sm) * lam * mu / (sx + sxn)
    c_0 = Fraction(-4, 3) * (2 * xi - nu) * (lam + mu) + 4 * sl * sm * sx * sxn
    c_1 = 2 * (sx + sxn) * xi * (xi - nu) / (sl + sm)
    return c_inv / t + c_0 + c_1 * t


def _sqrt_in(fld: Field, v, what: str):
    r = fld.sqrt(v)
    if r is None:
        raise FamilyError(f"{what} = {v} is not a square in {fld}")
    return r


def _pi2prime_point(S: WeierstrassSurface, params, signs, label: str) -> SectionPt | None:
    """Point from the x-formula with the given signs on the roots of
    (lam, mu, xi, xi - nu); None when y is not in the surface's field."""
    lam, mu, nu, xi = params
    fld = S.field
    roots = [_sqrt_in(fld, v, name) for v, name in
             ((lam, "lambda"), (mu, "mu"), (xi, "xi"), (xi - nu, "xi - nu"))]
    sl, sm, sx, sxn = (r * e for r, e in zip(roots, signs))
    # the formula lives on the untwisted model; on pi_2' the coordinate is t * x
    X = p1_x(lam, mu, nu, xi, sl, sm, sx, sxn) * RatFunc.gen()
    Y = S.rhs(X).sqrt(fld)
    if Y is None:
        return None
    return verify_section(S, X, Y, label)


def _arrangements(fam: KuwataFamily, primed: bool):
    """(tag, parameters, uses sigma) for P_1, P_3 and, when primed, P_1', P_3'."""
    lam, mu, nu, xi = fam.legendre
    sets = [("", (lam, mu, nu, xi))]
    if primed:
        # tau': (xi, lam) <-> (nu, mu)
        sets.append(("'", (mu, lam, xi, nu)))
    for tag, (l_, m_, n_, x_) in sets:
        yield tag, (l_, m_, n_, x_), False
        # sigma: (t, lam, mu, nu, xi) -> (1/t, nu, xi, lam, mu)
        yield tag, (n_, x_, l_, m_), True


def _point_on(fam: KuwataFamily, params, via_sigma: bool, signs, label: str) -> SectionPt | None:
    S = build_twist(fam, 2)
    if not via_sigma:
        return _pi2prime_point(S, params, signs, label)
    Q = _pi2prime_point(build_twist(fam.swapped(), 2), params, signs, label)
    return None if Q is None else invert_parameter(Q, S)


# P_2 flips the first root: the rational choice for CorQ data (mu > lam > 0).
# Flipping sqrt(mu) instead gives x(t) of the rational choice at -t, a point
# of the twist by -1, defined over Q(i) only.
P2_FLIP = (-1, 1, 1, 1)


def pi2prime_points(fam: KuwataFamily, primed: bool = False, flip=P2_FLIP) -> list[SectionPt]:
    """P_1..P_4 on pi_2' (and P_1'..P_4' when primed, over Q(i))."""
    if primed and fam.field.D != -1:
        fam = fam.over(Field(-1))
    out = []
    for tag, params, via_sigma in _arrangements(fam, primed):
        names = ("P3", "P4") if via_sigma else ("P1", "P2")
        for signs, name in (((1, 1, 1, 1), names[0]), (flip, names[1])):
            P = _point_on(fam, params, via_sigma, signs, name + tag)
            if P is None:
                raise FamilyError(f"{name + tag}: right-hand side is not a square in {fam.field}(t)")
            out.append(P)
    return out


def pi2prime_sign_orbit(fam: KuwataFamily, primed: bool = False) -> list[SectionPt]:
    """Every point the x-formula yields over the family's field when the four
    square roots take all sign combinations (one y-sign per x)."""
    if primed and fam.field.D != -1:
        fam = fam.over(Field(-1))
    seen, out = set(), []
    for tag, params, via_sigma in _arrangements(fam, primed):
        for signs in itertools.product((1, -1), repeat=4):
            label = ("s" if via_sigma else "") + "".join("+" if e > 0 else "-" for e in signs) + tag
            P = _point_on(fam, params, via_sigma, signs, label)
            if P is None or P.x in seen:
                continue
            seen.add(P.x)
            out.append(P)
    return sorted(out, key=SectionPt.sort_key)


# -- nine lines and the cubic surface --------------------------------------------------


def nine_lines_matrix(fam: KuwataFamily) -> list[list[Fraction]]:
    lam, mu, nu, xi = fam.legendre
    return [
        [nu - xi, xi - nu, nu],
        [-xi, -nu, xi],
        [-mu, -lam, lam],
        [lam - mu, mu - lam, mu],
    ]


def nine_lines_sections(fam: KuwataFamily) -> list[SectionPt]:
    """The 9 sections of pi_3' attached to the coordinate lines of the cubic."""
    S = build_twist(fam, 3)
    A = nine_lines_matrix(fam)
    t = UniPoly.gen()
    out = []
    for i in range(3):
        a1, a2 = A[0][i], A[1][i]
        for j in range(3):
            a3, a4 = A[2][j], A[3][j]
            # the t-coefficient is a product of the two pair sums; the printed
            # sum a1 + a2 + a3 + a4 does not give sections
            x = t * t * (4 * a1 * a2) + t * (Fraction(4, 3) * (a1 + a2) * (a3 + a4)) + 4 * a3 * a4
            y = (t**3 * (4 * a1 * a2 * (a1 + a2)) + t * t * (8 * a1 * a2 * (a3 + a4))
                 + t * (8 * a3 * a4 * (a1 + a2)) + 4 * a3 * a4 * (a3 + a4))
            out.append(verify_section(S, x, y, f"L{i + 1}{j + 1}"))
    return out


CUBIC_VARS = ("X", "Y", "Z", "W")
_PERMS = [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]


def cubic_surface(fam: KuwataFamily) -> MultiPoly:
    """Z(Z - nu Y)(Z - xi Y) - X(X - lam W)(X - mu W)."""
    lam, mu, nu, xi = fam.legendre
    X, Y, Z, W = MultiPoly.gens(*CUBIC_VARS)
    return Z * (Z - Y * nu) * (Z - Y * xi) - X * (X - W * lam) * (X - W * mu)


@dataclass
class LineOnCubic:
    H: tuple  # coefficients of X, Y, Z, W
    H2: tuple
    kind: str  # "coordinate", "cube-root", "cube-root+zeta3"
    sigma: tuple | None = None
    k: int | None = None
    gamma: object = None

    def forms(self) -> tuple[MultiPoly, MultiPoly]:
        gens = MultiPoly.gens(*CUBIC_VARS)
        return tuple(sum((g * c for g, c in zip(gens, h) if c != 0), MultiPoly({}, CUBIC_VARS)) for h in (self.H, self.H2))

    def to_json(self) -> dict:
        out = {"H": [format_scalar(c) for c in self.H], "H2": [format_scalar(c) for c in self.H2], "kind": self.kind}
        if self.sigma is not None:
            out["sigma"] = list(self.sigma)
            out["k"] = self.k
            out["gamma"] = format_scalar(self.gamma)
        return out


def line_on_surface(cubic: MultiPoly, H, H2) -> bool:
    """Reduce the cubic modulo the two linear forms; True when it vanishes."""
    M = [list(H), list(H2)]
    pivots = None
    for p in range(4):
        for q in range(p + 1, 4):
            if M[0][p] * M[1][q] - M[0][q] * M[1][p] != 0:
                pivots = (p, q)
                break
        if pivots:
            break
    if pivots is None:
        raise FamilyError("linear forms do not cut out a line")
    p, q = pivots
    det = M[0][p] * M[1][q] - M[0][q] * M[1][p]
    gens = MultiPoly.gens(*CUBIC_VARS)
    free = [v for v in range(4) if v not in pivots]
    # solve M[:, (p, q)] (v_p, v_q)^T = -M[:, free] v_free
    rhs = [sum((gens[f] * (-M[r][f]) for f in free), MultiPoly({}, CUBIC_VARS)) for r in range(2)]
    vp = (rhs[0] * M[1][q] - rhs[1] * M[0][q]) / det
    vq = (rhs[1] * M[0][p] - rhs[0] * M[1][p]) / det
    reduced = cubic.subs({CUBIC_VARS[p]: vp, CUBIC_VARS[q]: vq})
    return reduced.is_zero()


def bilinear_form(fam: KuwataFamily, sigma) -> tuple:
    """Coefficients (c_XZ, c_XY, c_WZ, c_WY) of the (1,1)-form through (P_i, Q_sigma(i))."""
    lam, mu, nu, xi = fam.legendre
    P = [(Fraction(0), Fraction(1)), (lam, Fraction(1)), (mu, Fraction(1))]
    Q = [(Fraction(0), Fraction(1)), (nu, Fraction(1)), (xi, Fraction(1))]
    rows = []
    for i in range(3):
        (x, w), (z, y) = P[i], Q[sigma[i]]
        rows.append([x * z, x * y, w * z, w * y])
    basis = nullspace(rows)
    if len(basis) != 1:
        raise FamilyError("points do not determine a unique (1,1)-curve")
    v = basis[0]
    return tuple(v)


def _residual_cubic(fam: KuwataFamily, form) -> UniPoly:
    """Degree-3 factor f: substitute Z(X) from the form (W = Y = 1) into the cubic."""
    lam, mu, nu, xi = fam.legendre
    c1, c2, c3, c4 = form
    X = UniPoly.gen("X")
    zn = X * (-c2) - c4  # Z = zn / zd
    zd = X * c1 + c3
    num = zn * (zn - zd * nu) * (zn - zd * xi) - X * (X - lam) * (X - mu) * zd**3
    known = X * (X - lam) * (X - mu)
    f, r = divmod(num, known)
    if not r.is_zero():
        raise AssertionError("numerator does not vanish at X = 0, lambda, mu")
    return f


def cubic_surface_and_lines(fam: KuwataFamily) -> dict:
    """The cubic, its 9 coordinate lines and the 18 lines from the six C_sigma."""
    lam, mu, nu, xi = fam.legendre
    fld = fam.field
    cubic = cubic_surface(fam)
    lines: list[LineOnCubic] = []
    for al in (Fraction(0), nu, xi):
        for be in (Fraction(0), lam, mu):
            lines.append(LineOnCubic((0, -al, 1, 0), (1, 0, 0, -be), "coordinate"))
    pending = []
    for sigma in _PERMS:
        form = bilinear_form(fam, sigma)
        c1, c2, c3, c4 = form
        f = _residual_cubic(fam, form)
        roots = [r for r, _ in field_roots(f, fld)]
        if len(roots) < 3:
            pending.append({"sigma": list(sigma), "f": [format_scalar(c) for c in f.coeffs],
                            "rootsInField": len(roots)})
        for k, g in enumerate(roots):
            # kappa scales the graph of X -> Z so that Y = W at X = gamma
            kappa = 1 / (c1 * g + c3)
            H = (kappa * c2, 0, 1, kappa * c4)  # Z + kappa (c2 X + c4 W) = 0
            H2 = (-kappa * c1, 1, 0, -kappa * c3)  # Y - kappa (c1 X + c3 W) = 0
            kind = "cube-root" if not isinstance(g, QuadElt) else "cube-root+zeta3"
            lines.append(LineOnCubic(H, H2, kind, sigma, k, g))
    checks = [line_on_surface(cubic, ln.H, ln.H2) for ln in lines]
    counts = {}
    for ln in lines:
        counts[ln.kind] = counts.get(ln.kind, 0) + 1
    return {"cubic": cubic, "lines": lines, "contained": checks, "counts": counts, "pending": pending}


def lines_report_json(rep: dict) -> dict:
    return {
        "cubic": str(rep["cubic"]),
        "lines": [ln.to_json() | {"contained": ok} for ln, ok in zip(rep["lines"], rep["contained"])],
        "counts": rep["counts"],
        "requiresExtension": rep["pending"],
        "allContained": all(rep["contained"]),
    }


# -- cube conditions -------------------------------------------------------------------


def cube_condition(rho, tau) -> bool:
    """Is tau(tau^4 - 1) / (rho(rho^4 - 1)) a rational cube?"""
    rho, tau = Fraction(rho), Fraction(tau)
    num = tau * (tau**4 - 1)
    den = rho * (rho**4 - 1)
    if num == 0 or den == 0:
        return False
    return perfect_power(num / den, 3) is not None


def cube_ratio_identity(lam, mu, nu, xi, c) -> bool:
    """lam(lam - mu)mu = c^3 nu(nu - xi)xi."""
    lam, mu, nu, xi, c = map(Fraction, (lam, mu, nu, xi, c))
    return lam * (lam - mu) * mu == c**3 * nu * (nu - xi) * xi


def conic_cube_examples(c, mu, xi):
    """Parametrize lam(lam - mu)mu = c^3 nu(nu - xi)xi through (lam, nu) = (0, 0).

    Returns a function s -> (lam, nu) along the line nu = s lam, or None at
    the two slopes where the line meets the conic only at the origin."""
    c, mu, xi = Fraction(c), Fraction(mu), Fraction(xi)
    c3 = c**3

    def point(s):
        s = Fraction(s)
        den = mu - c3 * xi * s * s
        if den == 0:
            return None
        lam = (mu * mu - c3 * xi * xi * s) / den
        return lam, s * lam

    return point
