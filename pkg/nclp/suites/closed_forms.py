#!/usr/bin/env python
#
#   Copyright (C) 2026 nclp developers
#
# This Program is free software; you can redistribute it and/or
# modify it under the terms of the GNU General Public
# License as published by the Free Software Foundation; either
# version 3 of the License, or (at your option) any later version.

# identities with an exact value

import math
import numpy

from nclp.matcore import *
from nclp.normlib import *
from nclp import spaces, copies
from nclp.suites.suite import VerificationSuite

suite = VerificationSuite('closed-forms', 'exact identities of the norm machinery')

def close(a, b, tol):
    return abs(a - b) <= tol * max(1.0, abs(b))

@suite.check('schatten-diagonal')
def schatten_diagonal(rng, tol):
    value = schatten_norm(numpy.diag([3.0, 4.0]), 2)
    return {'value': value, 'expected': 5.0, 'passed': close(value, 5.0, tol)}

@suite.check('state-lp-identity')
def state_lp_identity(rng, tol):
    values = [state_lp_norm(numpy.eye(3), random_state(3, rng), p) for p in (1, 1.5, 2, 4, inf)]
    return {'values': values, 'passed': all(close(v, 1.0, tol) for v in values)}

@suite.check('placements-commuting')
def placements_commuting(rng, tol):
    d = Density.diagonal(rng.uniform(0.2, 1.0, 3))
    x = numpy.diag(rng.standard_normal(3) + 1j * rng.standard_normal(3))
    values = [weighted_lp_norm(x, d, 3, placement) for placement in ('symmetric', 'left', 'right')]
    return {'values': values, 'passed': max(values) - min(values) <= tol * max(values)}

@suite.check('factorization-holder')
def factorization_holder(rng, tol):
    x = random_matrix(3, 3, rng)
    rows = []
    for u, v in ((2, 2), (4, inf), (3, 6), (inf, inf)):
        report = factorization_norm(x, u, v)
        expected = schatten_norm(x, from_inverse(inv(u) + inv(v)))
        rows.append({'u': u, 'v': v, 'value': report.value, 'expected': expected,
                     'passed': close(report.value, expected, max(tol, 1e-9))})
    return {'rows': rows, 'passed': all(row['passed'] for row in rows)}

@suite.check('conditional-scalars-right-l4')
def conditional_scalars(rng, tol):
    d = random_state(3, rng)
    x = random_matrix(3, 3, rng)
    value = conditional_lp_norm(x, NormSpec(p=inf, u=inf, v=4, density=d)).value
    expected = weighted_lp_norm(x, d, 4, 'right')
    return {'value': value, 'expected': expected, 'passed': close(value, expected, 1e-6)}

@suite.check('row-column-infinity')
def row_column_infinity(rng, tol):
    d = random_state(2, rng)
    x = random_matrix(4, 4, rng)
    row = row_norm(x, d, inf, 2)
    column = column_norm(x, d, inf, 2)
    expected_row = math.sqrt(opnorm(cond_expect(x @ x.conj().T, d)))
    expected_column = math.sqrt(opnorm(cond_expect(x.conj().T @ x, d)))
    return {'row': row, 'column': column,
            'passed': close(row, expected_row, tol) and close(column, expected_column, tol)}

@suite.check('square-function-hilbert')
def square_function_hilbert(rng, tol):
    d = random_state(2, rng)
    xs = [random_matrix(2, 2, rng) for i in range(3)]
    expected = math.sqrt(sum(state_lp_norm(x, d, 2) ** 2 for x in xs))
    row, column = rc_square_norm(xs, d, 2, 'row'), rc_square_norm(xs, d, 2, 'column')
    return {'row': row, 'column': column, 'expected': expected,
            'passed': close(row, expected, tol) and close(column, expected, tol)}

@suite.check('j-scalar')
def j_scalar(rng, tol):
    n = 5.0
    x = complex(rng.standard_normal(), rng.standard_normal())
    value = spaces.j_infty2_norm([[x]], Density.uniform(1), Scalars(), n)
    expected = math.sqrt(n) * abs(x)
    return {'value': value, 'expected': expected, 'passed': close(value, expected, tol)}

@suite.check('oh-single')
def oh_single(rng, tol):
    x = random_matrix(3, 3, rng)
    value = oh_valued_norm([x]).value
    return {'value': value, 'expected': opnorm(x), 'passed': close(value, opnorm(x), 1e-8)}

@suite.check('sum-norm-single')
def sum_norm_single(rng, tol):
    x = random_matrix(3, 3, rng)
    report = sum_norm(x, [WeightedSchatten(1.5, weight=2.0)])
    expected = 2 * schatten_norm(x, 1.5)
    return {'value': report.value, 'expected': expected, 'passed': close(report.value, expected, tol)}

@suite.check('touchard')
def touchard(rng, tol):
    k = 2.5
    d = Density(numpy.eye(2) * k / 2, k)
    rows = []
    for m in range(1, 6):
        value = copies.poisson_moment([numpy.eye(2)] * m, d)
        expected = copies.touchard(m, k)
        rows.append({'m': m, 'value': value.real, 'expected': expected,
                     'passed': close(value.real, expected, tol) and abs(value.imag) <= tol})
    return {'rows': rows, 'passed': all(row['passed'] for row in rows)}

@suite.check('budget')
def budget(rng, tol):
    record = spaces.dimension_budget(2, 1.0, 1.0, 1.0)
    return {'record': record, 'passed': record['n'] == 2 and record['k'] == 2}

@suite.check('oh-closed-form')
def oh_closed(rng, tol):
    rows = []
    for count, size in ((2, 2), (3, 2), (4, 3)):
        xs = [random_matrix(size, size, rng) for i in range(count)]
        value = oh_valued_norm(xs, seed=int(rng.integers(1 << 31))).value
        expected = oh_closed_form(xs)
        rows.append({'count': count, 'size': size, 'value': value, 'expected': expected,
                     'passed': close(value, expected, 1e-6)})
    return {'rows': rows, 'passed': all(row['passed'] for row in rows)}
