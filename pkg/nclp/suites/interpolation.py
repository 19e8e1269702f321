#!/usr/bin/env python
#
#   Copyright (C) 2026 nclp developers
#
# This Program is free software; you can redistribute it and/or
# modify it under the terms of the GNU General Public
# License as published by the Free Software Foundation; either
# version 3 of the License, or (at your option) any later version.

import cmath, math
import numpy

from nclp.matcore import *
from nclp.normlib import *
from nclp import interp, spaces
from nclp.suites.suite import VerificationSuite

suite = VerificationSuite('interpolation', 'strip measure, closed forms and competitor bounds')

@suite.check('strip-masses')
def strip_masses(rng, tol):
    rows = []
    for i in range(1, 10):
        theta = i / 10
        masses = interp.strip_measure(theta).line_masses()
        rows.append({'theta': theta, 'masses': list(masses),
                     'passed': abs(masses[0] - (1 - theta)) <= 1e-8 and abs(masses[1] - theta) <= 1e-8})
    return {'rows': rows, 'passed': all(row['passed'] for row in rows)}

@suite.check('reproduce')
def reproduce(rng, tol):
    cases = [(interp.ExpSeries([(1, 1)]), 0.5, math.exp(0.5), 1e-6),
             (interp.ExpSeries([(1, 1j)]), 1 / 3, cmath.exp(1j / 3), 1e-6),
             (interp.ExpSeries.linear_approximation(1e-4), 0.3, (math.exp(0.3e-4) - 1) / 1e-4, 1e-5),
             (interp.ExpSeries.constant(1), 0.7, 1.0, 1e-8)]
    rows = []
    for f, theta, expected, bound in cases:
        value = interp.reproduce(f, interp.strip_measure(theta))
        rows.append({'theta': theta, 'value': value, 'expected': complex(expected),
                     'passed': abs(value - expected) <= bound})
    return {'rows': rows, 'passed': all(row['passed'] for row in rows)}

@suite.check('lp-couple-diagonal')
def lp_couple_diagonal(rng, tol):
    d = Density.diagonal(rng.uniform(0.2, 1.0, 3))
    x = numpy.diag(rng.standard_normal(3))
    p0, p1, theta = 1.5, 6.0, 0.4
    value = interp.couple_norm_closed(x, interp.lp_couple(p0, p1, theta), d)
    ptheta = 1 / ((1 - theta) / p0 + theta / p1)
    w = numpy.diag(d.matrix).real
    expected = numpy.sum(w * numpy.abs(numpy.diag(x)) ** ptheta) ** (1 / ptheta)
    return {'value': value, 'expected': expected, 'passed': abs(value - expected) <= 1e-10 * expected}

@suite.check('power-competitor')
def power_competitor(rng, tol):
    d = random_state(3, rng)
    g = random_matrix(3, 3, rng)
    x = g @ g.conj().T
    couple = interp.weighted_couple(1.5, 0.1, -0.2, 4.0, -0.3, 0.2, 0.35)
    closed = interp.couple_norm_closed(x, couple, d)
    bound = interp.competitor_upper_bound(x, couple, d, family='power')
    constant = interp.competitor_upper_bound(x, couple, d)
    return {'closed': closed, 'power': bound, 'constant': constant,
            'passed': abs(bound - closed) <= 1e-6 * closed and constant >= closed - 1e-6}

@suite.check('rc-middle')
def rc_middle(rng, tol):
    d = random_state(2, rng)
    x = random_matrix(4, 4, rng)
    rows = []
    for kind in sorted(interp.rc_kinds):
        for p in (4.0, 8.0, inf):
            for theta in (0.25, 0.5, 0.75):
                rows.append(interp.rc_couple_check(x, kind, p, theta, d, tol=1e-5))
    return {'rows': rows, 'passed': all(row['passed'] for row in rows)}

@suite.check('boundary-pairing')
def boundary_pairing(rng, tol):
    d = Density.diagonal(rng.uniform(0.3, 1.0, 3)).state()
    y = random_matrix(3, 3, rng)
    rows = []
    for p in (1.0, 1.5, 2.0):
        for side in ('row', 'column'):
            rows.append(interp.boundary_pairing_check(y, d, 0.4, p, side))
    return {'rows': rows, 'passed': all(row['passed'] for row in rows)}

@suite.check('log-convexity')
def log_convexity(rng, tol):
    d = Density.diagonal(rng.uniform(0.2, 1.0, 4))
    x = numpy.diag(rng.standard_normal(4))
    values = [interp.couple_norm_closed(x, interp.lp_couple(1.0, 8.0, theta), d) for theta in (0.2, 0.5, 0.8)]
    logs = [math.log(v) for v in values]
    return {'values': values, 'passed': logs[1] <= (logs[0] + logs[2]) / 2 + 1e-12}

@suite.check('intersection-lower-estimate')
def intersection_lower_estimate(rng, tol):
    rows = []
    for i in range(4):
        d = random_state(3, rng)
        x = random_matrix(3, 3, rng)
        n = float(rng.uniform(1, 6))
        j = spaces.j_infty2_norm(x, d, Scalars(), n)
        bound = interp.competitor_upper_bound(x, interp.intersection_couple(n), d)
        rows.append({'n': n, 'j': j, 'bound': bound, 'passed': j <= bound * (1 + 1e-9)})
    return {'rows': rows, 'passed': all(row['passed'] for row in rows)}
