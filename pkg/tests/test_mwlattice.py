from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kuwatasurf import demos, kuwata
from kuwatasurf.exactmath.scalars import Field
from kuwatasurf.exactmath.unipoly import UniPoly
from kuwatasurf.mwlattice import (SectionError, add, gram_matrix, height, height_pairing, invert_parameter,
                                  multiply, negate, omega_twist, pq_intersection, pq_intersection_local,
                                  pz_intersection, verify_section, zero_section)

t = UniPoly.gen()


def test_verify_rejects_non_section(top):
    with pytest.raises(SectionError):
        verify_section(top, t * 6, t * 54)


def test_group_law_identities(top_sigmas):
    s1, s2, s3 = top_sigmas
    O = zero_section(s1.surface)
    assert add(s1, O) == s1
    assert add(s1, negate(s1)).is_zero
    assert add(add(s1, s2), s3) == add(s1, add(s2, s3))
    assert add(s1, s2) == add(s2, s1)
    # the three sections are collinear: y = x + 54t^2 - 78t + 36 passes through all
    assert add(add(s1, s2), s3).is_zero


def test_top_heights_by_hand(top_sigmas):
    # chi = 1, no poles, IV at infinity contributes 2/3 when P meets a far component
    for s in top_sigmas:
        assert pz_intersection(s) == 0
        assert height(s) == 2 - Fraction(2, 3)


def test_pq_translation_agrees_with_local_count(fam16):
    # the local rule is only valid at smooth fiber points; pi_3' has nothing worse than I1
    nine = kuwata.nine_lines_sections(fam16)
    pairs = [(nine[0], nine[4]), (nine[0], nine[1]), (nine[3], nine[8]), (nine[2], negate(nine[5]))]
    for P, Q in pairs:
        assert pq_intersection(P, Q) == pq_intersection_local(P, Q)


def test_inverting_the_parameter_twice(top_sigmas):
    P = top_sigmas[0]
    Q = invert_parameter(invert_parameter(P))
    assert Q.x == P.x and Q.y == P.y
    assert height(invert_parameter(P)) == height(P)


def test_omega_twist_needs_j_zero(fam16):
    with pytest.raises(SectionError):
        omega_twist(kuwata.nine_lines_sections(fam16)[0], Field(-3).zeta3())
    tau = omega_twist(demos.top_sigmas()[0], Field(-3).zeta3())
    assert tau.surface.field.D == -3
    assert height(tau) == Fraction(4, 3)


def test_gram_report_shape(top_sigmas):
    g = gram_matrix(top_sigmas)
    assert g.rank == 2 and g.det == 0
    js = g.to_json()
    assert js["rank"] == 2 and len(js["matrix"]) == 3


def test_integral_sections_on_surface_without_reducible_fibers(fam16):
    # pi_3' has only I1 fibers, so every polynomial section of degree <= 2 has height 2
    for P in kuwata.nine_lines_sections(fam16):
        assert P.surface.euler_characteristic() == 1
        assert pz_intersection(P) == 0
        assert height(P) == 2


@pytest.mark.parametrize("n", [2, 3])
def test_n_squared_law_without_contributions(fam16, n):
    # (nP.Z) = n^2((P.Z) + chi) - chi when no fiber contributes
    P = kuwata.nine_lines_sections(fam16)[0]
    chi = P.surface.euler_characteristic()
    assert pz_intersection(multiply(P, n)) == n * n * (pz_intersection(P) + chi) - chi
    assert height(multiply(P, n)) == n * n * height(P)


@settings(max_examples=12, deadline=None)
@given(st.integers(-2, 2), st.integers(-2, 2))
def test_height_is_a_quadratic_form(a, b):
    s1, s2, _ = demos.top_sigmas()
    P = add(multiply(s1, a), multiply(s2, b))
    h11, h12, h22 = height(s1), height_pairing(s1, s2), height(s2)
    expected = a * a * h11 + 2 * a * b * h12 + b * b * h22
    assert (height(P) if not P.is_zero else 0) == expected


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 8), st.integers(0, 8), st.integers(0, 8))
def test_pairing_is_bilinear_on_nine_lines(i, j, k):
    fam = kuwata.KuwataFamily.from_legendre(16, 1, 6, 1)
    secs = kuwata.nine_lines_sections(fam)
    P, Q, R = secs[i], secs[j], secs[k]
    PQ = add(P, Q)
    if PQ.is_zero:
        return
    lhs = height_pairing(PQ, R) if not (PQ == R) else height(R)
    rhs = (height(P) if P == R else height_pairing(P, R)) + (height(Q) if Q == R else height_pairing(Q, R))
    assert lhs == rhs


def test_doubling_on_top_meets_zero_section_twice(top_sigmas):
    # h(2P) = 4 h(P) = 16/3 = 2 + 2 (2P.Z) - 2/3, since 2P still lands on a far component of IV
    D = multiply(top_sigmas[0], 2)
    assert not D.x.is_poly()
    assert pz_intersection(D) == 2
    assert height(D) == Fraction(16, 3)
