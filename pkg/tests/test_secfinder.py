from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from kuwatasurf.exactmath.scalars import Field
from kuwatasurf.exactmath.unipoly import UniPoly
from kuwatasurf.secfinder import AnsatzInapplicable, check_ansatz, find_sections
from kuwatasurf.weierstrass import SurfaceError, WeierstrassSurface
from oracles import brute_force_x, in_grid

t = UniPoly.gen()


def test_top_over_q(top):
    rep = find_sections(top)
    xs = {x.as_poly() for x in rep.x_coordinates()}
    assert {x for x in xs if x.degree == 1} == {t * 6, t * 6 - 8, t * -12 + 9}
    assert t * t * 9 - t * 12 in xs
    b = rep.branch("p1=0")
    assert b.degree == 27
    assert dict(b.rational_roots) == {Fraction(6): 2, Fraction(-12): 1}
    assert all(len(s.y.num.coeffs) for s in rep.sections)
    assert not rep.budget_exceeded


def test_top_grid_oracle(top):
    bound, squares = 20, 10
    grid = brute_force_x(top, bound, squares)
    xs = [x.as_poly() for x in find_sections(top).x_coordinates()]
    found = {x for x in xs if in_grid(x, bound, squares)}
    assert grid == found
    assert len(grid) == 4


def test_rank_zero_surface_is_empty():
    S = WeierstrassSurface(UniPoly([]), t)
    rep = find_sections(S)
    assert rep.sections == []
    assert brute_force_x(S, 15, 6) == set()


@settings(max_examples=6, deadline=None, derandomize=True, suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])
@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3),
       st.integers(-3, 3), st.integers(-2, 2))
def test_planted_section_is_found(b1, b0, c2, c1, c0, a0):
    x0 = UniPoly([b0, b1])
    y0 = UniPoly([c0, c1, c2])
    A = UniPoly([a0])
    B = y0 * y0 - x0 * x0 * x0 - A * x0
    assume(not y0.is_zero())
    try:
        S = WeierstrassSurface(A, B)
        check_ansatz(S)
        assume(S.euler_characteristic() == 1)
    except SurfaceError:
        assume(False)
    rep = find_sections(S)
    assert x0 in {x.as_poly() for x in rep.x_coordinates()}
    for s in rep.sections:
        assert (s.y * s.y - S.rhs(s.x)).is_zero()


def test_ansatz_rejects_non_rational_surfaces():
    with pytest.raises(AnsatzInapplicable):
        find_sections(WeierstrassSurface(UniPoly([]), t**6 + 1))
    with pytest.raises(AnsatzInapplicable):
        find_sections(WeierstrassSurface(UniPoly([]), t**7 + 1))


def test_budget_breach_gives_partial_report(top):
    rep = find_sections(top, budget=5)
    assert rep.budget_exceeded
    assert rep.resultant_degree is not None and rep.resultant_degree > 5
    js = rep.to_json()
    assert js["budgetExceeded"] is True


def test_report_json_is_deterministic(top):
    a = find_sections(top).to_json()
    b = find_sections(top).to_json()
    assert a == b
    assert "6*t" in a["xCoordinates"]


def test_planted_section_over_quadratic_field():
    # coefficients of A and B in Q(sqrt(-3)): the eliminant is not rational
    fld = Field(-3)
    w = fld.zeta3()
    x0 = UniPoly([1, w])
    y0 = UniPoly([2, 1, w])
    A = UniPoly([w + 2])
    S = WeierstrassSurface(A, y0 * y0 - x0 * x0 * x0 - A * x0, fld)
    rep = find_sections(S)
    assert x0 in {x.as_poly() for x in rep.x_coordinates()}
