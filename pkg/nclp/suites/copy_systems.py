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
from nclp import copies
from nclp.suites.suite import VerificationSuite

suite = VerificationSuite('copies', 'independent copies, symmetrization and moment formulas')

@suite.check('copies-commute-factorize')
def copies_commute(rng, tol):
    system = copies.CopySystem(random_state(2, rng), 3)
    x, y = random_matrix(2, 2, rng), random_matrix(2, 2, rng)
    a, b = copies.embed_copy(x, system, 1), copies.embed_copy(y, system, 2)
    state = system.state()
    commutator = numpy.linalg.norm(a @ b - b @ a)
    factorized = abs(state.expect(a @ b) - state.expect(a) * state.expect(b))
    mean = abs(system.slot.expect(system.slot_element(x)))
    return {'commutator': commutator, 'factorization': factorized, 'mean': mean,
            'passed': commutator <= 1e-12 and factorized <= 1e-12 and mean <= 1e-14}

@suite.check('sign-symmetry')
def sign_symmetry(rng, tol):
    rows = []
    for k in range(1, 5):
        for symmetrized in (True, False):
            system = copies.CopySystem(random_state(2, rng), k, symmetrized=symmetrized)
            report = copies.sign_symmetry_check(random_matrix(2, 2, rng), system)
            rows.append({'k': k, 'symmetrized': symmetrized, 'min': report['min_ratio'],
                         'max': report['max_ratio'], 'passed': report['passed']})
    return {'rows': rows, 'passed': all(row['passed'] for row in rows)}

@suite.check('scalar-orthogonality')
def scalar_orthogonality(rng, tol):
    x = complex(rng.standard_normal(), rng.standard_normal())
    rows = []
    for k in range(1, 5):
        system = copies.CopySystem(Density.uniform(1), k)
        value = copies.sum_copies_norm([[x]], system, 2)
        expected = math.sqrt(k) * abs(x)
        rows.append({'k': k, 'value': value, 'expected': expected, 'passed': abs(value - expected) <= 1e-10 * expected})
    return {'rows': rows, 'passed': all(row['passed'] for row in rows)}

@suite.check('rosenthal-scalar')
def rosenthal_scalar(rng, tol):
    x = complex(rng.standard_normal(), rng.standard_normal())
    report = copies.rosenthal_bound_check([[x]], copies.CopySystem(Density.uniform(1), 3), 2)
    return {'ratio': report['ratio'], 'passed': abs(report['ratio'] - 1) <= 1e-4}

@suite.check('clt-simulation')
def clt_simulation(rng, tol):
    k = 1.5
    d = Density(random_state(2, rng).matrix * k, k)
    xs = [hermitian_part(random_matrix(2, 2, rng)) for i in range(4)]
    rows = []
    for s in (2, 3, 4, 5):
        finite = copies.clt_moment_finite_s(xs, d, s)
        simulated = copies.simulate_clt_moment(xs, d, s)
        rows.append({'s': s, 'finite': finite, 'simulated': simulated,
                     'passed': abs(finite - simulated) <= 1e-10 * max(1.0, abs(finite))})
    return {'rows': rows, 'passed': all(row['passed'] for row in rows)}

@suite.check('poisson-two')
def poisson_two(rng, tol):
    d = Density(random_psd(2, rng))
    x, y = random_matrix(2, 2, rng), random_matrix(2, 2, rng)
    value = copies.poisson_moment([x, y], d)
    expected = d.expect(x @ y) + d.expect(x) * d.expect(y)
    return {'value': value, 'expected': expected, 'passed': abs(value - expected) <= 1e-12 * max(1.0, abs(expected))}

@suite.check('classical-rosenthal-equal-exponents')
def classical_equal(rng, tol):
    report = copies.rosenthal_classical_mc('gaussian', 4, 3.0, 3.0, samples=10000,
                                           seed=int(rng.integers(1 << 31)), resamples=200)
    return {'ratio': report['ratio'], 'ci': report['ci'], 'passed': abs(report['ratio'] - 0.5) <= 1e-12}

@suite.check('stable-embedding')
def stable_embedding(rng, tol):
    rows = []
    alphas = rng.standard_normal(4)
    for q in (1.5, 1.8, 2.0):
        report = copies.stable_embedding_mc(alphas, q, samples=100000, seed=int(rng.integers(1 << 31)))
        rows.append({'q': q, 'ratio': report['ratio'], 'passed': abs(report['ratio'] - 1) <= 0.1})
    return {'rows': rows, 'passed': all(row['passed'] for row in rows)}
