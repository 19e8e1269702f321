#!/usr/bin/env python
#
#   Copyright (C) 2026 nclp developers
#
# This Program is free software; you can redistribute it and/or
# modify it under the terms of the GNU General Public
# License as published by the Free Software Foundation; either
# version 3 of the License, or (at your option) any later version.

import math
import numpy
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from nclp.matcore import *
from nclp.normlib import *

exponents = st.sampled_from([1.0, 1.25, 1.5, 2.0, 3.0, 4.0, inf])

def test_exponent_arithmetic():
    assert conjugate(1) == inf
    assert conjugate(inf) == 1
    assert conjugate(4.0) == pytest.approx(4 / 3)
    assert from_inverse(0.0) == inf
    assert inv(inf) == 0.0
    with pytest.raises(ValueError):
        check_exponent(0.5)
    with pytest.raises(ValueError):
        check_exponent(math.nan)

def test_solid_k():
    assert in_solid_k(inf, inf, 1)
    assert in_solid_k(4, 4, 2)
    assert not in_solid_k(2, 2, 2)
    assert not in_solid_k(1.5, inf, 2)

def test_norm_spec_validation():
    with pytest.raises(ValueError):
        NormSpec(p=2, u=1.5, v=inf)
    with pytest.raises(ValueError, match='outside K'):
        NormSpec(p=2, u=2, v=2)
    with pytest.raises(ValueError):
        NormSpec(p=2, placement='middle')
    spec = NormSpec(p=inf, q=2, u=4, v=inf, density=Density.uniform(2), subalgebra=LeftMatrixFactor(2))
    assert spec.amalgamated == pytest.approx(4 / 3)
    assert spec.conditional == pytest.approx(4)
    back = NormSpec.from_json(spec.to_json())
    assert back.p == inf and back.u == 4 and back.subalgebra.m == 2
    assert_allclose(back.density.matrix, spec.density.matrix)

def test_schatten_diagonal():
    x = numpy.diag([3.0, 4.0])
    assert schatten_norm(x, 2) == pytest.approx(5.0)
    assert schatten_norm(x, 1) == pytest.approx(7.0)
    assert schatten_norm(x, inf) == pytest.approx(4.0)
    assert schatten_norm(numpy.zeros((2, 2)), 3) == 0.0

@settings(max_examples=25, deadline=None)
@given(p=exponents, seed=st.integers(0, 10000))
def test_schatten_unitary_invariance(p, seed):
    rng = numpy.random.default_rng(seed)
    x = random_matrix(3, 3, rng)
    u, v = random_unitary(3, rng), random_unitary(3, rng)
    assert schatten_norm(u @ x @ v, p) == pytest.approx(schatten_norm(x, p), rel=1e-10)

def test_state_norm_of_identity():
    d = random_state(3, 2)
    for p in (1, 1.5, 2, 4, inf):
        assert state_lp_norm(numpy.eye(3), d, p) == pytest.approx(1.0, rel=1e-10)
    with pytest.raises(ValueError, match='state'):
        state_lp_norm(numpy.eye(2), Density.diagonal([1.0, 1.0]), 2)

@settings(max_examples=20, deadline=None)
@given(p=st.sampled_from([1.0, 1.5, 2.0, 3.0, 6.0]), seed=st.integers(0, 10000))
def test_placements_agree_when_commuting(p, seed):
    rng = numpy.random.default_rng(seed)
    d = Density.diagonal(rng.uniform(0.2, 1.0, 3))
    x = numpy.diag(rng.standard_normal(3) + 1j * rng.standard_normal(3))
    values = [weighted_lp_norm(x, d, p, placement) for placement in ('symmetric', 'left', 'right')]
    assert_allclose(values, [values[0]] * 3, rtol=1e-10)

def test_kosaki_dimension_mismatch():
    with pytest.raises(ValueError, match='dimension'):
        weighted_lp_norm(numpy.eye(3), Density.uniform(2), 2)

@pytest.mark.parametrize('u,v', [(2, 2), (4, inf), (3, 6), (inf, inf), (2, inf)])
def test_factorization_is_holder(u, v):
    x = random_matrix(3, 3, 17)
    report = factorization_norm(x, u, v)
    expected = schatten_norm(x, from_inverse(inv(u) + inv(v)))
    assert report.value == pytest.approx(expected, rel=1e-9)
    assert report.lower == pytest.approx(expected)
    assert report.converged

def test_factorization_zero():
    assert factorization_norm(numpy.zeros((2, 2)), 4, 4).value == 0.0

def test_family_sup_corners():
    x = random_matrix(3, 3, 8)
    assert family_sup([x], inf, inf).value == pytest.approx(numpy.linalg.norm(x), rel=1e-10)
    assert family_sup([x], 2, inf).value == pytest.approx(opnorm(x), rel=1e-8)
    assert family_sup([], 4, 4).value == 0.0
    with pytest.raises(ValueError, match='shape'):
        family_sup([x, numpy.eye(2)], 4, 4)

def test_mixed_theta_checks():
    with pytest.raises(ValueError):
        mixed_theta_norm([numpy.eye(2)], 1.5, 4)
    with pytest.raises(ValueError):
        mixed_theta_norm([numpy.eye(2)], 0.5, 1.5)

def test_oh_valued_single_is_operator_norm():
    x = random_matrix(3, 3, 21)
    assert oh_valued_norm([x]).value == pytest.approx(opnorm(x), rel=1e-8)

def test_oh_valued_between_bounds():
    rng = numpy.random.default_rng(5)
    xs = [random_matrix(3, 3, rng) for i in range(3)]
    report = oh_valued_norm(xs, seed=1)
    assert report.lower <= report.value * (1 + 1e-12)
    assert report.value <= report.upper * (1 + 1e-12)

def test_conditional_trivial_subalgebra_corner():
    rng = numpy.random.default_rng(9)
    d = random_state(3, rng)
    x = random_matrix(3, 3, rng)
    for p in (1.0, 2.0, 4.0):
        value = conditional_lp_norm(x, NormSpec(p=p, u=inf, v=inf, density=d)).value
        assert value == pytest.approx(weighted_lp_norm(x, d, p), rel=1e-12)

def test_conditional_scalars_right_l4():
    rng = numpy.random.default_rng(10)
    d = random_state(3, rng)
    x = random_matrix(3, 3, rng)
    value = conditional_lp_norm(x, NormSpec(p=inf, u=inf, v=4, density=d)).value
    assert value == pytest.approx(weighted_lp_norm(x, d, 4, 'right'), rel=1e-6)

def test_conditional_zero_and_errors():
    d = random_state(2, 3)
    assert conditional_lp_norm(numpy.zeros((2, 2)), NormSpec(p=2, u=8, v=8, density=d)).value == 0.0
    with pytest.raises(ValueError, match='density'):
        conditional_lp_norm(numpy.eye(2), NormSpec(p=2, u=8, v=8))
    with pytest.raises(ValueError, match='dimension'):
        conditional_lp_norm(numpy.eye(3), NormSpec(p=2, u=8, v=8, density=d, subalgebra=LeftMatrixFactor(2)))

def test_row_column_at_infinity():
    rng = numpy.random.default_rng(12)
    d = random_state(2, rng)
    x = random_matrix(4, 4, rng)
    assert row_norm(x, d, inf, 2) == pytest.approx(math.sqrt(opnorm(cond_expect(x @ x.conj().T, d))), rel=1e-10)
    assert column_norm(x, d, inf, 2) == pytest.approx(math.sqrt(opnorm(cond_expect(x.conj().T @ x, d))), rel=1e-10)
    with pytest.raises(ValueError):
        row_norm(x, d, 1.5, 2)

def test_smooth_schatten_frobenius():
    W = random_matrix(3, 3, 4)
    value, G = smooth_schatten(W, 2, 0.0)
    assert value == pytest.approx(numpy.linalg.norm(W))
    assert_allclose(G, W / numpy.linalg.norm(W), atol=1e-12)
    assert smooth_schatten(numpy.zeros((2, 2)), 3, 0.0)[0] == 0.0

def test_component_dual_and_bound():
    x = random_matrix(3, 3, 6)
    c = WeightedSchatten(1.5)
    assert c.dual(x) == pytest.approx(schatten_norm(x, 3.0))
    assert dual_bound(x, [WeightedSchatten(2)], 'l1', x) == pytest.approx(numpy.linalg.norm(x))
    with pytest.raises(ValueError):
        WeightedSchatten(2, weight=0)

def test_pack_complex_layout():
    ys = [random_matrix(2, 3, 1), random_matrix(2, 3, 2)]
    z = pack_complex(ys)
    assert z.dtype == float and z.size == 24
    for a, b in zip(unpack_complex(z, 2, (2, 3)), ys):
        assert_allclose(a, b)

def test_sum_norm_single_component():
    x = random_matrix(3, 3, 13)
    report = sum_norm(x, [WeightedSchatten(1.5, weight=2.0)])
    assert report.value == pytest.approx(2 * schatten_norm(x, 1.5))
    assert report.duality_gap == 0.0

def test_sum_norm_two_hilbert_components():
    x = random_matrix(3, 3, 14)
    report = sum_norm(x, [WeightedSchatten(2), WeightedSchatten(2, weight=2.0)])
    assert report.value == pytest.approx(numpy.linalg.norm(x), rel=1e-3)
    assert report.lower <= report.value * (1 + 1e-9)
    ys = report.point
    assert_allclose(sum(ys), x, atol=1e-10)

def test_sum_norm_errors():
    with pytest.raises(ValueError):
        sum_norm(numpy.eye(2), [])
    with pytest.raises(ValueError):
        sum_norm(numpy.eye(2), [WeightedSchatten(2)], combine='max')
    assert sum_norm(numpy.zeros((2, 2)), [WeightedSchatten(2), WeightedSchatten(1)]).value == 0.0

def test_schatten_small_cases():
    assert schatten_norm(numpy.eye(3), 4) == pytest.approx(3 ** 0.25)
    x = random_matrix(5, 5, 30)
    s = numpy.linalg.svd(x, compute_uv=False)
    assert schatten_norm(x, 1.7) == pytest.approx(numpy.sum(s ** 1.7) ** (1 / 1.7), rel=1e-12)
    with pytest.raises(ValueError):
        weighted_lp_norm(x, Density.uniform(5), 0.5)

def test_state_norm_oracles():
    rng = numpy.random.default_rng(31)
    d = random_state(3, rng)
    x = random_matrix(3, 3, rng)
    h = frac_power(d, 0.5)
    direct = numpy.sqrt(numpy.trace(h @ x.conj().T @ h @ x).real)
    assert state_lp_norm(x, d, 2) == pytest.approx(direct, rel=1e-10)
    for p in (1.0, 3.0):
        assert state_lp_norm(x, Density.uniform(3), p) == pytest.approx(3 ** (-1 / p) * schatten_norm(x, p), rel=1e-10)

def test_factorization_small_cases():
    assert factorization_norm(numpy.eye(3), 4, 4).value == pytest.approx(math.sqrt(3))
    e12 = numpy.array([[0, 1], [0, 0]])
    assert factorization_norm(e12, 4, 4).value == pytest.approx(1.0)

def test_conditional_row_corner():
    rng = numpy.random.default_rng(32)
    d = random_state(2, rng)
    x = random_matrix(4, 4, rng)
    report = conditional_lp_norm(x, NormSpec(p=4, u=4, v=inf, density=d, subalgebra=LeftMatrixFactor(2)))
    assert report.value == pytest.approx(row_norm(x, d, 4, 2), rel=1e-8)
    # any point of the unit sphere of S_4 gives a lower bound
    Y = numpy.kron(numpy.eye(2), frac_power(d, 0.375)) @ x @ numpy.kron(numpy.eye(2), frac_power(d, 0.125))
    best = 0.0
    for i in range(2000):
        a = ball_point(rng, 2, 4)
        best = max(best, numpy.linalg.norm(numpy.kron(a, numpy.eye(2)) @ Y))
    assert best <= report.value * (1 + 1e-9)

def test_oh_small_cases():
    assert oh_valued_norm([[[0.6]], [[0.8j]]]).value == pytest.approx(1.0)
    assert oh_valued_norm([numpy.eye(3)]).value == pytest.approx(1.0)
    e11, e22 = numpy.diag([1.0, 0.0]), numpy.diag([0.0, 1.0])
    assert oh_valued_norm([e11, e22]).value == pytest.approx(1.0, rel=1e-8)
    assert oh_valued_norm([]).value == 0.0

@pytest.mark.parametrize('theta', [0.0, 0.3, 0.5, 1.0])
def test_mixed_scalar_family(theta):
    xs = [[[0.6]], [[0.8j]], [[0.0]]]
    assert mixed_theta_norm(xs, theta, inf).value == pytest.approx(1.0, rel=1e-10)

def test_sum_norm_scalar_two_weights():
    x = [[1.5 - 2j]]
    report = sum_norm(x, [WeightedSchatten(1, weight=2.0), WeightedSchatten(1, weight=3.0)])
    assert report.value == pytest.approx(2 * abs(1.5 - 2j), rel=1e-4)

def test_conditional_decreases_with_u():
    rng = numpy.random.default_rng(12)
    d = random_state(3, rng)
    x = random_matrix(3, 3, rng)
    norms = []
    for u in (2.0, 4.0, 8.0, inf):
        s = from_inverse(inv(u) + 0.5)
        expected = schatten_norm(frac_power(d, inv(u) + 0.25) @ x @ frac_power(d, 0.25), s)
        value = conditional_lp_norm(x, NormSpec(p=2, u=u, v=inf, density=d)).value
        assert value == pytest.approx(expected, rel=1e-6)
        norms.append(value)
    assert all(a <= b * (1 + 1e-9) for a, b in zip(norms, norms[1:]))

def test_rc_square_single_element():
    rng = numpy.random.default_rng(13)
    d = random_state(3, rng)
    x = random_matrix(3, 3, rng)
    for p in (1.0, 3.0, inf):
        for side in ('row', 'column'):
            assert rc_square_norm([x], d, p, side) == pytest.approx(weighted_lp_norm(x, d, p), rel=1e-9)

def test_rc_square_is_hilbertian_at_two():
    rng = numpy.random.default_rng(14)
    d = random_state(2, rng)
    xs = [random_matrix(2, 2, rng) for i in range(3)]
    expected = math.sqrt(sum(state_lp_norm(x, d, 2) ** 2 for x in xs))
    assert rc_square_norm(xs, d, 2, 'row') == pytest.approx(expected, rel=1e-10)
    assert rc_square_norm(xs, d, 2, 'column') == pytest.approx(expected, rel=1e-10)

def test_rc_square_orthogonal_rows():
    n = 3
    d = Density.uniform(n)
    xs = [numpy.eye(n)[:, [0]] @ numpy.eye(n)[[k], :] for k in range(n)]
    # sum e_1k e_k1 = n e_11, sum e_k1 e_1k = identity
    assert rc_square_norm(xs, d, inf, 'row') == pytest.approx(math.sqrt(n))
    assert rc_square_norm(xs, d, inf, 'column') == pytest.approx(1.0)
    assert rc_square_norm([], d, 2) == 0.0
    with pytest.raises(ValueError, match='side'):
        rc_square_norm(xs, d, 2, 'diagonal')
    with pytest.raises(ValueError, match='dimension'):
        rc_square_norm([numpy.eye(2)], d, 2)

def test_oh_closed_form_matches_optimizer():
    rng = numpy.random.default_rng(21)
    for count, size in ((2, 2), (3, 3), (5, 2)):
        xs = [random_matrix(size, size, rng) for i in range(count)]
        assert oh_valued_norm(xs, seed=3).value == pytest.approx(oh_closed_form(xs), rel=1e-6)
    assert oh_closed_form([]) == 0.0
    with pytest.raises(ValueError, match='shape'):
        oh_closed_form([numpy.eye(2), numpy.eye(3)])

def test_mixed_half_at_infinity_is_oh():
    rng = numpy.random.default_rng(22)
    xs = [random_matrix(2, 2, rng) for i in range(3)]
    report = mixed_theta_norm(xs, 0.5, inf, seed=4, restarts=16)
    assert report.value == pytest.approx(oh_closed_form(xs), rel=1e-5)
    # random points of the two S_4 balls never beat the closed form
    best = 0.0
    for i in range(500):
        a, b = ball_point(rng, 2, 4), ball_point(rng, 2, 4)
        best = max(best, math.sqrt(sum(numpy.linalg.norm(a @ x @ b) ** 2 for x in xs)))
    assert best <= oh_closed_form(xs) * (1 + 1e-9)

def test_oh_valued_density_at_infinity():
    rng = numpy.random.default_rng(23)
    d = random_state(3, rng)
    xs = [random_matrix(3, 3, rng) for i in range(2)]
    # the embedding is the identity at p = inf
    assert oh_valued_norm(xs, d=d, p=inf, seed=1).value == pytest.approx(oh_valued_norm(xs, seed=1).value)
    with pytest.raises(ValueError, match='dimension'):
        oh_valued_norm(xs, d=random_state(2, rng), p=inf)

@pytest.mark.parametrize('v', [2.0, 4.0])
def test_conditional_increases_with_v(v):
    rng = numpy.random.default_rng(24)
    d = random_state(2, rng)
    x = random_matrix(4, 4, rng)
    values = [conditional_lp_norm(x, NormSpec(p=inf, u=inf, v=w, density=d, subalgebra=LeftMatrixFactor(2)),
                                  seed=2).value for w in (v, 2 * v, inf)]
    assert values[0] <= values[1] * (1 + 1e-9)
    assert values[1] <= values[2] * (1 + 1e-9)

@pytest.mark.parametrize('side', ['row', 'column'])
def test_conditional_square_reshape(side):
    rng = numpy.random.default_rng(25)
    m, n = 2, 3
    W = random_matrix(m * n, m * n, rng)
    P = partial_trace(W @ W.conj().T if side == 'row' else W.conj().T @ W, m, n)
    lam = numpy.clip(numpy.linalg.eigvalsh(hermitian_part(P)), 0, None)
    term = ConditionalSquare(1.5, m, n, side)
    assert term.value(W) == pytest.approx(schatten_from_singular(numpy.sqrt(lam), 1.5), rel=1e-10)
    assert_allclose(term.unshaped(term.shaped(W)), W)
    # the reshape keeps the trace pairing, so dual(z) >= <z, W> / value(W)
    z = random_matrix(m * n, m * n, rng)
    assert inner(z, W) <= term.dual(z) * term.value(W) * (1 + 1e-12)
    with pytest.raises(ValueError, match='side'):
        ConditionalSquare(2, m, n, 'diagonal')

def test_conditional_square_gradient():
    rng = numpy.random.default_rng(26)
    term = ConditionalSquare(3.0, 2, 2, 'column', right=numpy.diag([1.0, 2.0, 0.5, 1.5]))
    y, h = random_matrix(4, 4, rng), random_matrix(4, 4, rng)
    value, G = term.smooth(y, 0.0)
    t = 1e-6
    slope = (term.smooth(y + t * h, 0.0)[0] - term.smooth(y - t * h, 0.0)[0]) / (2 * t)
    assert value == pytest.approx(term.value(y), rel=1e-10)
    assert slope == pytest.approx(inner(G, h), rel=1e-5)

def test_conditional_square_at_level_one_is_hilbert_schmidt():
    rng = numpy.random.default_rng(27)
    left = numpy.diag([0.5, 2.0, 1.0])
    y = random_matrix(3, 3, rng)
    for p in (1.0, 1.5, 2.0):
        row = ConditionalSquare(p, 1, 3, 'row', left=left)
        column = ConditionalSquare(p, 1, 3, 'column', right=left)
        assert row.value(y) == pytest.approx(WeightedSchatten(2, left=left).value(y), rel=1e-12)
        assert column.value(y) == pytest.approx(WeightedSchatten(2, right=left).value(y), rel=1e-12)

def test_sum_norm_gap_when_converged():
    rng = numpy.random.default_rng(28)
    for i in range(5):
        x = random_matrix(3, 3, rng)
        components = [WeightedSchatten(1.5, weight=1.0), WeightedSchatten(2, left=numpy.diag([1.0, 2.0, 3.0]), weight=1.5)]
        for combine in ('l1', 'l2'):
            report = sum_norm(x, components, combine=combine, seed=i)
            if report.converged:
                assert report.duality_gap <= 1e-4 * report.value
            assert report.lower <= report.value * (1 + 1e-12)
