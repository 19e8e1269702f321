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

from nclp.matcore import *
from nclp.normlib import *
from nclp import spaces
from nclp.suites.suite import VerificationSuite

suite = VerificationSuite('graphs', 'graph spaces, J norms and the quotient K norm')

def _seed(rng):
    return int(rng.integers(1 << 31))

@suite.check('graph-tensor-random')
def graph_tensor_random(rng, tol):
    rows = []
    for n, m in ((2, 1), (3, 1), (2, 2)):
        lambdas = rng.uniform(0.5, 2.0, n)
        report = spaces.graph_tensor_check(lambdas, m=m, samples=2, seed=_seed(rng))
        rows.append({'n': n, 'm': m, 'max_deviation': report['max_deviation'], 'passed': report['passed']})
    return {'rows': rows, 'passed': all(row['passed'] for row in rows)}

@suite.check('graph-tensor-single')
def graph_tensor_single(rng, tol):
    lam = float(rng.uniform(1.0, 2.0))
    z = complex(rng.standard_normal(), rng.standard_normal())
    components = spaces.graph_components([[z]], [lam])
    value = max(components.values())
    expected = lam * lam * abs(z)
    return {'value': value, 'expected': expected, 'passed': abs(value - expected) <= 1e-10 * expected}

@suite.check('oh-graph-single')
def oh_graph_single(rng, tol):
    lam = float(rng.uniform(0.5, 2.0))
    report = spaces.oh_graph_map([lam], m=2, samples=16, seed=_seed(rng), refine=False)
    expected = math.sqrt(1 + lam ** -2)
    return {'distortion': report['distortion'], 'expected': expected,
            'passed': abs(report['distortion'] - expected) <= 1e-10 and report['passed']}

@suite.check('oh-graph-geometric')
def oh_graph_geometric(rng, tol):
    report = spaces.oh_graph_map(2.0 ** numpy.arange(1, 7), m=2, samples=32, seed=_seed(rng))
    return {'xi': report['xi'], 'bound': report['xi_bound'], 'passed': report['passed']}

@suite.check('discretize')
def discretize(rng, tol):
    delta = 0.1
    worst = 0.0
    for i in range(100):
        d = Density.diagonal(rng.uniform(delta, 10, 4))
        weight, report = spaces.discretize_spectrum(d, delta)
        worst = max(worst, report['distortion'])
    return {'worst': worst, 'bound': 1 + delta, 'passed': worst <= 1 + delta + 1e-12}

@suite.check('quotient-single')
def quotient_single(rng, tol):
    gamma = float(rng.uniform(0.5, 2.0))
    xs = [[[complex(rng.standard_normal(), rng.standard_normal())]] for i in range(4)]
    rows = []
    for p in (1.25, 1.5, 2.0):
        d = Density.diagonal([gamma])
        e = inv(conjugate(p))
        c = numpy.array([gamma ** e, gamma ** (e / 2 + 0.25), gamma ** (e / 2 + 0.25), gamma ** 0.5])
        y = sum(ci * x[0][0] for ci, x in zip(c, xs))
        expected = abs(y) / numpy.linalg.norm(c)
        value = spaces.k_quotient_norm(xs, d, p).value
        rows.append({'p': p, 'value': value, 'expected': expected, 'passed': abs(value - expected) <= 1e-6 * expected})
    return {'rows': rows, 'passed': all(row['passed'] for row in rows)}

@suite.check('quotient-two-ways')
def quotient_two_ways(rng, tol):
    rows = []
    for p in (1.25, 1.5, 2.0):
        weight = spaces.DiagonalWeight(rng.uniform(0.5, 2.0, 2), p)
        d = weight.density()
        xs = [random_matrix(2, 2, rng) for i in range(4)]
        direct = spaces.k_quotient_norm(xs, d, p)
        via_sum = spaces.k_quotient_sum_norm(xs, d, p)
        agree = abs(direct.value - via_sum.value) <= 1e-4 * direct.value
        rows.append({'p': p, 'direct': direct.value, 'sum': via_sum.value,
                     'converged': [direct.converged, via_sum.converged],
                     'passed': agree and direct.converged and via_sum.converged})
    return {'rows': rows, 'passed': all(row['passed'] for row in rows)}

@suite.check('j-pq-infinity-two')
def j_pq_infinity_two(rng, tol):
    d = random_state(2, rng)
    x = random_matrix(4, 4, rng)
    a = spaces.j_pq_norm(x, d, inf, 2, 3.0, m=2)
    b = spaces.j_infty2_norm(x, d, LeftMatrixFactor(2), 3.0)
    return {'j_pq': a, 'j_infty2': b, 'passed': abs(a - b) <= 1e-9 * b}

@suite.check('amplified-closed-forms')
def amplified_closed_forms(rng, tol):
    rows = []
    for n, m in ((2, 2), (3, 1), (2, 3)):
        d = random_state(n, rng)
        x = random_matrix(m * n, m * n, rng)
        report = spaces.amplified_isometry_check(x, d, m, seed=_seed(rng), tol=1e-5)
        rows.append({'n': n, 'm': m, 'worst': max(row['deviation'] for row in report['rows']),
                     'passed': report['passed']})
    return {'rows': rows, 'passed': all(row['passed'] for row in rows)}

@suite.check('rc-isometry')
def rc_isometry(rng, tol):
    rows = []
    for p in (1.0, 1.5, 2.0, 4.0):
        d = random_state(3, rng)
        a = random_matrix(6, 6, rng)
        for side in ('row', 'column'):
            report = spaces.rc_isometry_check(a, d, p, 2, side)
            rows.append({'p': p, 'side': side, 'deviation': report['max_deviation'], 'passed': report['passed']})
    return {'rows': rows, 'passed': all(row['passed'] for row in rows)}

@suite.check('rc-sum-norm')
def rc_sum_norm(rng, tol):
    d = random_state(2, rng)
    x = random_matrix(4, 4, rng)
    rows = []
    for p in (1.0, 1.5, 2.0):
        report = spaces.rc_sum_norm(x, d, p, 3.0, m=2, seed=_seed(rng))
        single = min(c.weight * c.value(x) for c in spaces.rc_components(d, p, 3.0, m=2))
        rows.append({'p': p, 'value': report.value, 'lower': report.lower, 'single': single,
                     'passed': report.lower <= report.value * (1 + 1e-9) and report.value <= single * (1 + 1e-6)})
    return {'rows': rows, 'passed': all(row['passed'] for row in rows)}
