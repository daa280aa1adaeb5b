from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from kuwatasurf import kuwata
from kuwatasurf.exactmath.ratfunc import RatFunc
from kuwatasurf.exactmath.scalars import QQ, Field
from kuwatasurf.exactmath.unipoly import UniPoly
from kuwatasurf.kuwata import (CurveSpec, Deflation, FamilyError, KuwataFamily, build_pi, build_twist, corq_params,
                               cube_condition, cube_ratio_identity, conic_cube_examples, deflate, dickson,
                               expected_ranks, family_from_json, legendre_to_depressed, nine_lines_sections,
                               pi2prime_points, pi2prime_sign_orbit, pullback_section, rank_table,
                               transport_psi)
from kuwatasurf.mwlattice import add, gram_matrix, verify_section
from kuwatasurf.secfinder import find_sections
from kuwatasurf.weierstrass import WeierstrassSurface
from oracles import brute_force_corq, random_tuples

QI = Field(-1)


def kinds(S):
    return {f.place.label: f.kind for f in S.singular_fibers()}


# -- curves and families ---------------------------------------------------------------


def test_legendre_conversion_against_sympy():
    X, L, M = sympy.symbols("X L M")
    cubic = sympy.expand((X + (L + M) / 3) * (X + (L + M) / 3 - L) * (X + (L + M) / 3 - M))
    for lam, mu in ((16, 1), (Fraction(16, 9), Fraction(25, 9)), (6, 1)):
        a, b, _ = legendre_to_depressed(lam, mu)
        ref = sympy.Poly(cubic.subs({L: sympy.Rational(str(lam)), M: sympy.Rational(str(mu))}), X)
        assert ref.all_coeffs() == [1, 0, sympy.Rational(str(a)), sympy.Rational(str(b))]


def test_fixture_curves(fam16):
    assert (fam16.E.a, fam16.E.b) == (Fraction(-241, 3), Fraction(-7378, 27))
    assert (fam16.F.a, fam16.F.b) == (Fraction(-31, 3), Fraction(-308, 27))
    # 16 lam^2 mu^2 (lam - mu)^2
    assert fam16.E.delta == 16 * 16**2 * 15**2 == 921600
    assert fam16.F.delta == 16 * 6**2 * 5**2 == 14400


def test_family_needs_distinct_j():
    with pytest.raises(FamilyError):
        KuwataFamily.from_legendre(16, 1, 32, 2)  # E scaled by 2 has the same j


def test_family_json_round_trip(fam16):
    again = family_from_json(fam16.to_json())
    assert again.legendre == fam16.legendre
    assert family_from_json(fam16.over(Field(-3)).to_json()).field == Field(-3)
    dep = family_from_json({"a": "-6", "b": "-6", "c": "-11", "d": "14"})
    assert dep.E.a == -6 and dep.F.b == 14


def test_B_is_laurent_in_t(fam16):
    t = RatFunc.gen()
    B = fam16.B(1)
    assert B == t * fam16.F.delta + fam16.bd864 + fam16.E.delta / t


# -- fibers ----------------------------------------------------------------------------


def test_pi_fibers(fam16):
    # v(A) = 4 and v(B) = 6 - i at both ends after clearing the pole
    for i, kind in ((1, "II*"), (2, "IV*"), (3, "I0*")):
        k = kinds(build_pi(fam16, i))
        assert k["0/1"] == kind and k["inf"] == kind
    k6 = kinds(build_pi(fam16, 6))
    assert "0/1" not in k6 and "inf" not in k6
    assert set(k6.values()) <= {"I1", "II"}


def test_pi3_valuations_by_hand(fam16):
    # after clearing the pole: A = -48ac t^4, B = Delta(F) t^9 + 864bd t^6 + Delta(E) t^3
    S = build_pi(fam16, 3)
    assert S.A.valuation() == 4 and S.B.valuation() == 3 and S.discriminant().valuation() == 6


def test_twists_are_rational(fam16):
    for i in (2, 3):
        S = build_twist(fam16, i)
        assert S.euler_characteristic() == 1
        assert S.shioda_tate()["rank"] == 8
    assert kinds(build_twist(fam16, 2))["0/1"] == "II"


def test_rank_table():
    assert expected_ranks(2).rank == 4
    assert expected_ranks(4, 3).rank == 15
    assert expected_ranks(60, 1) == (41, False)
    rows = rank_table()
    assert [r["i"] for r in rows][:6] == [1, 2, 3, 4, 5, 6]


# -- deflation -------------------------------------------------------------------------


@given(st.integers(0, 7), st.fractions(min_value=-4, max_value=4, max_denominator=3).filter(lambda a: a != 0))
def test_dickson_identity(n, alpha):
    # D_n(t + alpha/t, alpha) = t^n + (alpha/t)^n
    t = RatFunc.gen()
    lhs = RatFunc(dickson(n, alpha))(t + alpha / t)
    rhs = t**n + (alpha / t) ** n if n else RatFunc(UniPoly([2]))
    assert lhs == rhs


def test_deflation_identity(fam16):
    d = deflate(fam16, 3)
    assert d.alpha == 4
    assert d.sign == -1
    t = RatFunc.gen()
    s = (t + d.alpha / t) * d.sign
    assert RatFunc(d.psi.B)(s) == fam16.B(3)
    assert kinds(d.psi)["inf"] == "I0*"
    assert d.psi.shioda_tate()["rank"] == 4


def test_deflation_needs_a_cube_ratio():
    fam = KuwataFamily.from_legendre(16, 1, 7, 1)
    with pytest.raises(FamilyError):
        deflate(fam, 3)
    with pytest.raises(FamilyError):
        deflate(fam16_like(), 5)


def fam16_like():
    return KuwataFamily.from_legendre(16, 1, 6, 1)


def test_planted_section_on_deflated_shape_is_found():
    # psi has constant A and cubic B; the finder must see a planted section there
    t = UniPoly.gen()
    A, x0, y0 = UniPoly([1]), t, t + 1
    S = WeierstrassSurface(A, y0 * y0 - x0 * x0 * x0 - A * x0)
    assert kinds(S)["inf"] == "I0*"
    assert t in {x.as_poly() for x in find_sections(S).x_coordinates()}


def _planted_psi(fld=None):
    # psi-shaped surface (constant A, cubic B) through x = s, y = s + 1
    s = UniPoly.gen()
    A = UniPoly([1])
    S = WeierstrassSurface(A, (s + 1) * (s + 1) - s * s * s - A * s, fld or QQ)
    return S, verify_section(S, s, s + 1, "P")


def test_pullback_section_of_planted_point():
    psi, P = _planted_psi()
    t = RatFunc.gen()
    s = (t + 4 / t) * -1
    # pi-side model with the pole at t = 0 cleared by (x, y) -> (t^2 x, t^3 y)
    A = (RatFunc(psi.A)(s) * t**4).as_poly()
    B = (RatFunc(psi.B)(s) * t**6).as_poly()
    pi = WeierstrassSurface(A, B, psi.field, 1)
    d = Deflation(3, Fraction(4), -1, psi, pi, "")
    Q = pullback_section(P, d)
    assert Q.surface is pi
    assert Q.x == s * t * t


def test_transport_between_deflations():
    fld = Field(-3)
    w = fld.zeta3()
    psi0, P = _planted_psi(fld)
    s = UniPoly.gen()
    psi1 = WeierstrassSurface(psi0.A, psi0.B.compose(s * w), fld)
    d0 = Deflation(3, Fraction(4), -1, psi0, psi0, "")
    d1 = Deflation(3, 4 * w, -1, psi1, psi1, "")
    Q = transport_psi(P, d0, d1)
    assert Q.surface is psi1
    with pytest.raises(FamilyError):
        transport_psi(P, d0, Deflation(3, Fraction(5), -1, psi1, psi1, ""))


def test_zeta_deflations_are_related(fam16):
    fam = fam16.over(Field(-3))
    d0, d1 = deflate(fam, 3, 0), deflate(fam, 3, 1)
    ws = [w for w in (Field(-3).zeta3(), Field(-3).zeta3() ** 2) if d0.alpha * w == d1.alpha]
    assert len(ws) == 1
    s = UniPoly.gen()
    assert d0.psi.B.compose(s * ws[0]) == d1.psi.B


# -- CorQ ------------------------------------------------------------------------------


def test_corq_search_finds_the_fixture():
    hits = brute_force_corq()
    assert (Fraction(2), Fraction(5), Fraction(1)) in hits
    c = corq_params(2, 5, 1)
    assert (c.lam, c.mu, c.nu, c.xi) == (Fraction(16, 9), Fraction(25, 9), Fraction(1, 900), Fraction(169, 22500))
    for v, r in c.squares.values():
        assert r * r == v


def test_corq_rejects_equal_j():
    c = corq_params(Fraction(3, 2), 5, 1)
    assert not c.valid and not c.j_distinct


def test_corq_fixture_points():
    fam = corq_params(2, 5, 1).family()
    P1, P2, P3, P4 = pi2prime_points(fam)
    assert add(P1, P2) == add(P3, P4)
    assert gram_matrix([P1, P2, P3, P4]).rank == 3
    orbit = pi2prime_sign_orbit(fam)
    assert len(orbit) == 8
    assert gram_matrix(orbit).rank == 4


def test_literal_flip_needs_gaussian_field():
    fam = corq_params(2, 5, 1).family()
    with pytest.raises(FamilyError):
        pi2prime_points(fam, flip=(1, -1, 1, 1))
    pts = pi2prime_points(fam.over(QI), flip=(1, -1, 1, 1))
    assert gram_matrix(pts).rank == 4


# -- nine lines ------------------------------------------------------------------------


@pytest.mark.parametrize("fam", [fam16_like()] + random_tuples(3), ids=lambda f: "-".join(map(str, f.legendre)))
def test_nine_lines_verify(fam):
    secs = nine_lines_sections(fam)
    assert len(secs) == 9
    S = build_twist(fam, 3)
    for P in secs:
        assert (P.y * P.y - S.rhs(P.x)).is_zero()


# -- the cubic surface ---------------------------------------------------------------------


def test_27_lines(fam16):
    rep = kuwata.cubic_surface_and_lines(fam16.over(Field(-3)))
    assert all(rep["contained"])
    assert rep["counts"] == {"coordinate": 9, "cube-root": 6, "cube-root+zeta3": 12}
    assert rep["pending"] == []


def test_27_lines_over_q_reports_missing_roots(fam16):
    rep = kuwata.cubic_surface_and_lines(fam16)
    assert rep["counts"] == {"coordinate": 9, "cube-root": 6}
    assert len(rep["pending"]) == 6


def test_line_check_rejects_a_non_line(fam16):
    cubic = kuwata.cubic_surface(fam16)
    assert not kuwata.line_on_surface(cubic, (1, 0, 0, -2), (0, 0, 1, 0))


def test_cube_conditions():
    assert not cube_condition(2, 5)
    point = conic_cube_examples(2, 1, 1)
    lam, nu = point(Fraction(1, 3))
    assert cube_ratio_identity(lam, 1, nu, 1, 2)
    assert CurveSpec.legendre(16, 1).j != CurveSpec.legendre(6, 1).j
