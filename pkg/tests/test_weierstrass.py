from __future__ import annotations

import pytest
import sympy

from kuwatasurf.exactmath.ratfunc import RatFunc
from kuwatasurf.exactmath.scalars import Field
from kuwatasurf.exactmath.unipoly import UniPoly
from kuwatasurf.weierstrass import (SurfaceError, WeierstrassSurface, base_change, component_count,
                                    kodaira_from_valuations, normalize_model, predicted_ramified_type,
                                    quadratic_twist_0_infty, surface_from_json, twist_type)

t = UniPoly.gen()


# Kodaira table in characteristic 0, written out independently of the classifier:
# (v(A), v(B), v(Delta)) -> type, components
TABLE = [
    ((0, 0, 0), "smooth", 1),
    ((0, 0, 3), "I3", 3),
    ((1, 1, 2), "II", 1),
    ((5, 1, 2), "II", 1),
    ((1, 2, 3), "III", 2),
    ((2, 2, 4), "IV", 3),
    ((2, 3, 6), "I0*", 5),
    ((2, 3, 9), "I3*", 8),
    ((4, 3, 6), "I0*", 5),
    ((3, 4, 8), "IV*", 7),
    ((3, 5, 9), "III*", 8),
    ((4, 5, 10), "II*", 9),
    ((5, 7, 14), "II", 1),  # non-minimal: drops by (4, 6, 12)
]


@pytest.mark.parametrize("vals,kind,comps", TABLE)
def test_kodaira_table(vals, kind, comps):
    got, _ = kodaira_from_valuations(*vals)
    assert got == kind
    assert component_count(got) == comps


def test_inconsistent_valuations_rejected():
    with pytest.raises(SurfaceError):
        kodaira_from_valuations(1, 1, 5)


def test_twist_involution():
    pairs = {"smooth": "I0*", "II": "IV*", "III": "III*", "IV": "II*", "I3": "I3*"}
    for a, b in pairs.items():
        assert twist_type(a) == b
        assert twist_type(b) == a


def test_ramified_types_match_valuation_doubling():
    assert predicted_ramified_type("II", 2) == "IV"
    assert predicted_ramified_type("II", 3) == "I0*"
    assert predicted_ramified_type("I2", 2) == "I4"
    assert predicted_ramified_type("IV", 2) == "IV*"


def test_rank_zero_surface():
    S = WeierstrassSurface(UniPoly([]), t)  # y^2 = x^3 + t
    assert S.fiber_at(0).kind == "II"
    assert S.fiber_at("inf").kind == "II*"
    assert S.euler_characteristic() == 1
    assert S.shioda_tate()["rank"] == 0


@pytest.mark.parametrize("n", [1, 2, 5])
def test_multiplicative_fibers(n):
    # y^2 = x^3 - 3x + (2 + t^n): Delta = -432 t^n (t^n + 4)
    S = WeierstrassSurface(UniPoly([-3]), t**n + 2)
    f0 = S.fiber_at(0)
    assert f0.kind == f"I{n}" and f0.components == n
    T, report = quadratic_twist_0_infty(S)
    assert T.fiber_at(0).kind == f"I{n}*" and T.fiber_at(0).components == n + 5
    assert report["0"]["after"] == report["0"]["predicted"]


def test_discriminant_against_sympy():
    A, B = t**2 * 3 - 1, t**3 + t * 4 + 7
    S = WeierstrassSurface(A, B)
    T = sympy.Symbol("t")
    ref = sympy.Poly(-16 * (4 * (3 * T**2 - 1) ** 3 + 27 * (T**3 + 4 * T + 7) ** 2), T)
    assert [int(c) for c in reversed(ref.all_coeffs())] == [int(c) for c in S.discriminant().coeffs]


def test_euler_characteristic_counts_bundled_places():
    S = WeierstrassSurface(UniPoly([-3]), t**4 + 2)
    chi = S.euler_characteristic()
    total = sum(f.vDelta * f.degree for f in S.fibers())
    assert total == 12 * chi


def test_base_change_and_normalization():
    S = WeierstrassSurface(UniPoly([]), t)
    S2 = base_change(S, 2)
    assert S2.fiber_at(0).kind == "IV"
    S6 = base_change(S, 6)
    assert S6.fiber_at(0).kind == "smooth"
    N = normalize_model(UniPoly([]), UniPoly([0, 0, 1]) + UniPoly([1]))
    assert N.shift == 0
    r = RatFunc.gen()
    M = normalize_model(RatFunc(UniPoly([])), r + 1 / r)
    assert M.shift == 1 and M.B == t**7 + t**5


def test_quadratic_field_surface_and_json():
    w = Field(-3).zeta3()
    S = WeierstrassSurface(UniPoly([]), UniPoly([1, w]), Field(-3))
    assert S.fiber_at(0).kind == "smooth"
    with pytest.raises(SurfaceError):
        WeierstrassSurface(UniPoly([]), UniPoly([1, w]))
    T = surface_from_json({"A": ["0"], "B": ["0", "1"]})
    assert T.fiber_at(0).kind == "II"


def test_degenerate_surface_rejected():
    # x^3 - 3x + 2 = (x - 1)^2 (x + 2) over the whole base
    with pytest.raises(SurfaceError):
        WeierstrassSurface(UniPoly([-3]), UniPoly([2]))
