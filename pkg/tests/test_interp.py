#!/usr/bin/env python
#
#   Copyright (C) 2026 nclp developers
#
# This Program is free software; you can redistribute it and/or
# modify it under the terms of the GNU General Public
# License as published by the Free Software Foundation; either
# version 3 of the License, or (at your option) any later version.

import cmath, io, math
import numpy
import pytest
from numpy.testing import assert_allclose

from nclp.matcore import *
from nclp.normlib import *
from nclp import interp, spaces

@pytest.mark.parametrize('theta', [0.1, 0.25, 0.5, 0.7, 0.9])
def test_line_masses(theta):
    masses = interp.strip_measure(theta).line_masses()
    assert masses[0] == pytest.approx(1 - theta, abs=1e-8)
    assert masses[1] == pytest.approx(theta, abs=1e-8)

def test_strip_measure_limits():
    with pytest.raises(ValueError):
        interp.strip_measure(0.0)
    with pytest.raises(ValueError):
        interp.strip_measure(1.0)
    with pytest.raises(ValueError):
        interp.strip_measure(0.5, grid=32)
    mu = interp.strip_measure(0.5)
    assert 0 < mu.tail_bound < 1e-20

def test_strip_measure_cache(isolated_settings, monkeypatch):
    monkeypatch.setenv('NCLP_CACHE_DIR', str(isolated_settings / 'cache'))
    interp._cached_measure.cache_clear()
    first = interp.strip_measure(0.3, grid=64)
    interp._cached_measure.cache_clear()
    second = interp.strip_measure(0.3, grid=64)
    assert list((isolated_settings / 'cache').iterdir())
    assert_allclose(second.weights[0], first.weights[0])
    interp._cached_measure.cache_clear()

def test_write_csv():
    mu = interp.strip_measure(0.4, grid=64)
    out = io.StringIO()
    mu.write_csv(out)
    lines = out.getvalue().splitlines()
    assert lines[0] == 'line,im,weight'
    assert len(lines) == 1 + 2 * 64

@pytest.mark.parametrize('f,theta,expected,bound', [
    (interp.ExpSeries([(1, 1)]), 0.5, math.exp(0.5), 1e-6),
    (interp.ExpSeries([(1, 1j)]), 1 / 3, cmath.exp(1j / 3), 1e-6),
    (interp.ExpSeries.linear_approximation(1e-4), 0.3, (math.exp(0.3e-4) - 1) / 1e-4, 1e-5),
    (interp.ExpSeries.constant(1), 0.7, 1.0, 1e-8),
    (interp.ExpSeries([(2, -1), (1j, 0.5 + 1j)]), 0.6, 2 * math.exp(-0.6) + 1j * cmath.exp(0.6 * (0.5 + 1j)), 1e-6)])
def test_reproduce(f, theta, expected, bound):
    assert abs(interp.reproduce(f, interp.strip_measure(theta)) - expected) <= bound

def test_exp_series_limits():
    with pytest.raises(ValueError, match='unsupported basis'):
        interp.ExpSeries([(1, 5)])
    with pytest.raises(ValueError, match='unsupported basis'):
        interp.ExpSeries([(1, 3j)])
    with pytest.raises(ValueError, match='unsupported basis'):
        interp.ExpSeries([(1, 0)] * 17)
    with pytest.raises(ValueError, match='unsupported basis'):
        interp.reproduce(lambda z: z, interp.strip_measure(0.5))
    f = interp.ExpSeries([(1, 1)]) + interp.ExpSeries.constant(2).scaled(0.5)
    assert f(0) == pytest.approx(2.0)
    assert f.tail_bound(interp.strip_measure(0.5)) < 1e-20

def test_endpoint_validation():
    with pytest.raises(ValueError):
        interp.Endpoint('diagonal', 2)
    with pytest.raises(ValueError):
        interp.Endpoint('row', 1.5)
    with pytest.raises(ValueError):
        interp.Endpoint('intersection-row')
    with pytest.raises(ValueError):
        interp.lp_couple(1, 2, 1.5)
    with pytest.raises(ValueError):
        interp.rc_couple('lp-row', 1.5, 0.5)
    with pytest.raises(ValueError):
        interp.rc_couple('row-lp', 4, 0.5)
    couple = interp.CoupleSpec.from_json(interp.weighted_couple(1.5, 0.1, -0.2, inf, 0, 0, 0.3).to_json())
    assert couple.end.p == inf and couple.start.a == pytest.approx(0.1)
    assert interp.Endpoint('lp', 4).weighted() == (4, -0.125, -0.125)

def test_lp_couple_diagonal_closed_form():
    rng = numpy.random.default_rng(1)
    d = Density.diagonal(rng.uniform(0.2, 1.0, 3))
    x = numpy.diag(rng.standard_normal(3))
    p0, p1, theta = 1.5, 6.0, 0.4
    value = interp.couple_norm_closed(x, interp.lp_couple(p0, p1, theta), d)
    ptheta = 1 / ((1 - theta) / p0 + theta / p1)
    w = numpy.diag(d.matrix).real
    expected = numpy.sum(w * numpy.abs(numpy.diag(x)) ** ptheta) ** (1 / ptheta)
    assert value == pytest.approx(expected, rel=1e-10)

def test_closed_form_log_convex():
    rng = numpy.random.default_rng(2)
    d = Density.diagonal(rng.uniform(0.2, 1.0, 4))
    x = random_matrix(4, 4, rng)
    thetas = numpy.linspace(0.1, 0.9, 5)
    logs = [math.log(interp.couple_norm_closed(x, interp.lp_couple(1.0, 8.0, t), d)) for t in thetas]
    for a, b, c in zip(logs, logs[1:], logs[2:]):
        assert b <= (a + c) / 2 + 1e-12

def test_closed_form_errors():
    d = Density.diagonal([1.0, 0.0])
    with pytest.raises(ValueError, match='non-invertible'):
        interp.couple_norm_closed(numpy.eye(2), interp.lp_couple(2, 4, 0.5), d)
    with pytest.raises(ValueError, match='no closed form'):
        interp.couple_norm_closed(numpy.eye(2), interp.intersection_couple(2.0), Density.uniform(2))

@pytest.mark.parametrize('kind', sorted(interp.rc_kinds))
def test_rc_couples_reach_endpoints(kind):
    rng = numpy.random.default_rng(3)
    d = random_state(2, rng)
    x = random_matrix(4, 4, rng)
    start, end = interp.rc_couple(kind, 4.0, 0.5).endpoints
    at0 = interp.couple_norm_closed(x, interp.rc_couple(kind, 4.0, 0.0), d)
    at1 = interp.couple_norm_closed(x, interp.rc_couple(kind, 4.0, 1.0), d)
    assert at0 == pytest.approx(interp.endpoint_norm(x, start, d), rel=1e-8)
    assert at1 == pytest.approx(interp.endpoint_norm(x, end, d), rel=1e-8)

def test_power_competitor_attains_closed_form():
    rng = numpy.random.default_rng(4)
    d = random_state(3, rng)
    g = random_matrix(3, 3, rng)
    x = g @ g.conj().T
    couple = interp.weighted_couple(1.5, 0.1, -0.2, 4.0, -0.3, 0.2, 0.35)
    closed = interp.couple_norm_closed(x, couple, d)
    assert interp.competitor_upper_bound(x, couple, d, family='power') == pytest.approx(closed, rel=1e-6)
    assert interp.competitor_upper_bound(x, couple, d) >= closed * (1 - 1e-9)
    assert interp.competitor_upper_bound(x, couple, d, aggregation='max') >= closed * (1 - 1e-9)

def test_competitor_errors():
    d = random_state(2, 5)
    couple = interp.lp_couple(2.0, 4.0, 0.5)
    x = random_matrix(2, 2, 6)
    with pytest.raises(ValueError, match='unknown competitor'):
        interp.competitor_upper_bound(x, couple, d, family='wavelet')
    with pytest.raises(ValueError, match='aggregation'):
        interp.competitor_upper_bound(x, couple, d, aggregation='mean')
    eye = numpy.eye(2)
    with pytest.raises(ValueError, match='infeasible factorization'):
        interp.competitor_upper_bound(x, couple, d, family=(eye, eye, eye, eye))

def test_factorized_competitor_is_an_upper_bound():
    d = Density.uniform(2)
    x = random_matrix(2, 2, 7)
    eye = numpy.eye(2)
    couple = interp.lp_couple(2.0, 4.0, 0.5)
    bound = interp.competitor_upper_bound(x, couple, d, family=(x, eye, eye, eye), grid=64)
    assert bound >= interp.couple_norm_closed(x, couple, d) * (1 - 1e-6)

def test_intersection_lower_estimate():
    rng = numpy.random.default_rng(8)
    for i in range(3):
        d = random_state(3, rng)
        x = random_matrix(3, 3, rng)
        n = float(rng.uniform(1, 6))
        j = spaces.j_infty2_norm(x, d, Scalars(), n)
        assert j <= interp.competitor_upper_bound(x, interp.intersection_couple(n), d) * (1 + 1e-9)

def test_psd_power():
    h = numpy.diag([4.0, 0.0])
    assert_allclose(interp.psd_power(h, 0.5), numpy.diag([2.0, 0.0]))
    assert_allclose(interp.psd_power(h, 1j), numpy.diag([cmath.exp(1j * math.log(4)), 0]))

@pytest.mark.parametrize('kind', sorted(interp.rc_kinds))
def test_rc_couple_sandwich(kind):
    rng = numpy.random.default_rng(21)
    d = random_state(2, rng)
    x = random_matrix(4, 4, rng)
    for p in (4.0, 8.0, inf):
        for theta in (0.25, 0.5, 0.75):
            row = interp.rc_couple_check(x, kind, p, theta, d, samples=32, tol=1e-5)
            assert row['passed'], (p, theta)
            assert row['sampled'] <= row['closed'] * (1 + 1e-5)
    assert 'oracle' in interp.rc_couple_check(x, kind, inf, 0.5, d, samples=8, tol=1e-5)

@pytest.mark.parametrize('kind', sorted(interp.rc_kinds))
def test_rc_oracle_at_half(kind):
    rng = numpy.random.default_rng(22)
    d = Density(random_state(3, rng).matrix * 2.0, 2.0)
    x = random_matrix(3, 3, rng)
    closed = interp.couple_norm_closed(x, interp.rc_couple(kind, inf, 0.5), d)
    assert interp.rc_oracle(x, kind, d) == pytest.approx(closed, rel=1e-6)
    with pytest.raises(ValueError, match='unknown couple'):
        interp.rc_oracle(x, 'row-row', d)

@pytest.mark.parametrize('side', ['row', 'column'])
@pytest.mark.parametrize('p', [1.0, 1.5, 2.0])
def test_boundary_pairing(side, p):
    rng = numpy.random.default_rng(23)
    d = Density.diagonal(rng.uniform(0.3, 1.0, 3)).state()
    y = random_matrix(3, 3, rng)
    report = interp.boundary_pairing_check(y, d, 0.4, p, side, tol=1e-5)
    assert report['passed']
    assert report['beta'] == pytest.approx(0.25 - (1 - 1 / p) / 2)

def test_boundary_pairing_errors():
    mu = interp.strip_measure(0.5)
    d = Density.uniform(2)
    with pytest.raises(ValueError, match='unknown side'):
        interp.boundary_pairing(lambda z: numpy.eye(2), lambda z: numpy.eye(2), interp.ExpSeries.constant(), mu, d, 0.0, 'diagonal')
    with pytest.raises(ValueError, match='non-invertible'):
        interp.boundary_pairing_check(numpy.eye(2), Density.diagonal([1.0, 0.0]), 0.5, 1.5)
