#!/usr/bin/env python
#
#   Copyright (C) 2026 nclp developers
#
# This Program is free software; you can redistribute it and/or
# modify it under the terms of the GNU General Public
# License as published by the Free Software Foundation; either
# version 3 of the License, or (at your option) any later version.

# tensor independent copies, sign symmetrization, rosenthal type checks
# and the poisson / central limit moment combinatorics

import math, itertools
import numpy, scipy.linalg, scipy.stats, scipy.special
from sympy import Symbol, lambdify
from sympy.functions.combinatorial.numbers import bell
from sympy.utilities.iterables import multiset_partitions

from nclp.matcore import *
from nclp.normlib import *
from nclp.spaces import rc_components

default_cap = 4096
max_moment = 8

def _no_debug(*args):
    pass

class CopySystem(object):
    '''k tensor copies of the slot algebra, M (+) M with state (phi (+) phi)/2 when symmetrized'''
    def __init__(self, d, k, symmetrized=True, cap=default_cap):
        if not d.is_state():
            raise ValueError('copy systems need a base state')
        k = int(k)
        if k < 1:
            raise ValueError('copy systems need at least one copy')
        self.base = d
        self.k = k
        self.symmetrized = bool(symmetrized)
        if self.symmetrized:
            self.slot = Density(direct_sum(d.matrix, d.matrix) / 2, 1.0)
        else:
            self.slot = d
        self.slot_dim = self.slot.dim
        self.dim = self.slot_dim ** k
        if self.dim > cap:
            raise ValueError('dimension cap exceeded: %d > %d' % (self.dim, cap))
        self._state = None

    @property
    def n(self):
        return self.base.dim

    def slot_element(self, x):
        x = as_matrix(x)
        if x.shape != (self.n, self.n):
            raise ValueError('dimension mismatch between element and base state')
        if self.symmetrized:
            return direct_sum(x, -x)
        return x

    def state(self):
        '''the product state of all copies'''
        if self._state is None:
            self._state = tensor_density([self.slot] * self.k)
        return self._state

    def to_json(self):
        return {'n': self.n, 'k': self.k, 'symmetrized': self.symmetrized, 'dim': self.dim}

def embed_copy(x, system, j):
    '''1 (x) ... (x) x_j (x) ... (x) 1, slots counted from 1'''
    if not 1 <= j <= system.k:
        raise ValueError('copy index %d outside 1..%d' % (j, system.k))
    factors = [numpy.eye(system.slot_dim)] * system.k
    factors[j - 1] = system.slot_element(x)
    return tensor_power(factors)

def _signs(system, signs):
    if signs is None:
        return [1] * system.k
    signs = [int(s) for s in signs]
    if len(signs) != system.k or any(s not in (1, -1) for s in signs):
        raise ValueError('sign pattern must be %d entries of +-1' % system.k)
    return signs

def sum_copies_norm(x, system, p, signs=None, mode='plain', seed=0):
    signs = _signs(system, signs)
    copies = [s * embed_copy(x, system, j + 1) for j, s in enumerate(signs)]
    if mode == 'plain':
        return state_lp_norm(sum(copies), system.state(), p)
    if mode == 'oh_valued':
        if p < 2:
            raise ValueError('oh valued norm needs p >= 2')
        return oh_valued_norm(copies, d=system.state(), p=p, seed=seed).value
    raise ValueError('unknown vector mode ' + str(mode))

def sign_patterns(k):
    return [list(pattern) for pattern in itertools.product((1, -1), repeat=k)]

def sign_symmetry_check(x, system, p=1, max_copies=8):
    '''norm of sum eps_j pi_j(x) for every sign pattern, relative to all plus'''
    if system.k > max_copies:
        raise ValueError('sign enumeration is limited to %d copies' % max_copies)
    x = as_matrix(x)
    if not system.symmetrized:
        x = x - system.base.expect(x) * numpy.eye(system.n)
    rows = []
    reference = sum_copies_norm(x, system, p)
    for pattern in sign_patterns(system.k):
        value = sum_copies_norm(x, system, p, pattern)
        ratio = value / reference if reference > 0 else 1.0
        rows.append({'signs': pattern, 'value': value, 'ratio': ratio})
    ratios = [row['ratio'] for row in rows]
    return {'k': system.k, 'p': p, 'reference': reference, 'patterns': rows,
            'min_ratio': min(ratios), 'max_ratio': max(ratios),
            'passed': min(ratios) >= 0.5 - 1e-12 and max(ratios) <= 2 + 1e-12}

def rosenthal_components(system, p):
    '''k^(1/p) ||X||_p + sqrt(k) ||tr(X_r X_r*)^(1/2)||_p + sqrt(k) ||tr(X_c* X_c)^(1/2)||_p
    with X = X_p + D^a X_r + X_c D^a, a = 1/p - 1/2: the level one K^p_rc terms of the slot'''
    if not 1 <= p <= 2:
        raise ValueError('rosenthal check needs p in [1, 2]')
    return rc_components(system.slot, p, system.k)

def rosenthal_bound_check(x, system, p, q=2, seed=0, tol=1e-4, debug=_no_debug):
    '''||sum_j pi_j(x)|| against the K^p_rc norm of the slot element, p in [1, 2]

    the left side is OH valued for q = 2 only where L_p(OH) is taken as
    [C_p, R_p]_(1/2), that is p = 2, otherwise it is the plain L_p norm'''
    if not system.symmetrized:
        raise ValueError('rosenthal check needs symmetrized copies')
    if q not in (2, p):
        raise ValueError('rosenthal check supports q = 2 or q = p')
    components = rosenthal_components(system, p)
    mode = 'oh_valued' if q == 2 and p >= 2 else 'plain'
    lhs = sum_copies_norm(x, system, p, mode=mode, seed=seed)
    X = kosaki_embed(system.slot_element(x), system.slot, p)
    report = sum_norm(X, components, combine='l1', seed=seed, tol=tol)
    rhs = report.value
    ratio = lhs / rhs if rhs > 0 else 1.0
    if not report.converged:
        debug('nclp: rosenthal right side did not converge, gap', report.duality_gap)
    debug('nclp: rosenthal k=%d p=%g q=%g lhs=%.10g rhs=%.10g ratio=%.6g' % (system.k, p, q, lhs, rhs, ratio))
    return {'k': system.k, 'p': p, 'q': q, 'mode': mode, 'lhs': lhs, 'rhs': rhs, 'ratio': ratio,
            'rhs_report': report.as_dict(), 'converged': report.converged, 'seed': seed}

distributions = ['gaussian', 'exponential', 'two-point']

def _draw(rng, dist, shape):
    if dist == 'gaussian':
        return rng.standard_normal(shape)
    if dist == 'exponential':
        return rng.exponential(size=shape)
    if dist == 'two-point':
        return rng.choice(numpy.array([-1.0, 1.0]), size=shape)
    raise ValueError('unknown distribution ' + str(dist))

def rosenthal_classical_mc(dist, n, p, q, samples=10000, seed=0, resamples=1000, batch=50):
    '''(E (sum |f_k|^q)^(p/q))^(1/p) against (sum E|f_k|^p)^(1/p) + (sum E|f_k|^q)^(1/q)'''
    if not 1 <= q <= p < inf:
        raise ValueError('classical rosenthal needs 1 <= q <= p < inf')
    if samples < 10000:
        raise ValueError('classical rosenthal needs at least 10000 samples')
    rng = named_stream(seed, 'rosenthal-%s-%d' % (dist, n))
    f = numpy.abs(_draw(rng, dist, (samples, n)))
    fq = f ** q
    A = numpy.sum(fq, axis=1) ** (p / q)
    B = numpy.sum(f ** p, axis=1)
    C = numpy.sum(fq, axis=1)

    def statistic(a, b, c, axis=-1):
        return numpy.mean(a, axis=axis) ** (1 / p) / (numpy.mean(b, axis=axis) ** (1 / p) + numpy.mean(c, axis=axis) ** (1 / q))

    lhs = float(numpy.mean(A) ** (1 / p))
    rhs = float(numpy.mean(B) ** (1 / p) + numpy.mean(C) ** (1 / q))
    ci = scipy.stats.bootstrap((A, B, C), statistic, paired=True, vectorized=True,
                               n_resamples=resamples, batch=batch, method='percentile',
                               random_state=named_stream(seed, 'rosenthal-bootstrap'))
    interval = ci.confidence_interval
    return {'dist': dist, 'n': n, 'p': p, 'q': q, 'samples': samples, 'lhs': lhs, 'rhs': rhs,
            'ratio': lhs / rhs, 'ci': [float(interval.low), float(interval.high)], 'seed': seed}

def stable_embedding_mc(alphas, q, samples=100000, seed=0):
    '''E|sum alpha_k theta_k| / E|theta| against (sum |alpha_k|^q)^(1/q)

    theta_k independent symmetric q-stable with characteristic function
    exp(-|t|^q), for which E|theta| = 2 Gamma(1 - 1/q) / pi'''
    alphas = numpy.asarray(alphas, dtype=float).ravel()
    if not 1 < q <= 2:
        raise ValueError('stable embedding needs q in (1, 2]')
    if not alphas.size or samples < 1:
        raise ValueError('stable embedding needs coefficients and samples')
    rng = named_stream(seed, 'stable-%g' % q)
    theta = scipy.stats.levy_stable.rvs(q, 0.0, size=(int(samples), alphas.size), random_state=rng)
    mean = 2 * scipy.special.gamma(1 - 1 / q) / math.pi
    lhs = float(numpy.mean(numpy.abs(theta @ alphas))) / mean
    rhs = float(numpy.sum(numpy.abs(alphas) ** q) ** (1 / q))
    return {'q': q, 'n': int(alphas.size), 'samples': int(samples), 'lhs': lhs, 'rhs': rhs,
            'ratio': lhs / rhs if rhs > 0 else 1.0, 'seed': seed}

class SetPartition(object):
    '''blocks of {1..m}, elements of each block increasing, blocks ordered by least element'''
    def __init__(self, blocks):
        blocks = [sorted(int(i) for i in block) for block in blocks]
        if any(not block for block in blocks):
            raise ValueError('partition blocks must be nonempty')
        elements = sorted(i for block in blocks for i in block)
        if elements != list(range(1, len(elements) + 1)):
            raise ValueError('blocks do not partition 1..%d' % len(elements))
        self.blocks = sorted(blocks)
        self.m = len(elements)

    def __len__(self):
        return len(self.blocks)

    def is_even(self):
        return all(len(block) % 2 == 0 for block in self.blocks)

    def __str__(self):
        return '|'.join(' '.join(str(i) for i in block) for block in self.blocks)

    def __repr__(self):
        return 'SetPartition(%s)' % str(self)

    def __eq__(self, other):
        return isinstance(other, SetPartition) and self.blocks == other.blocks

    def __hash__(self):
        return hash(str(self))

    @staticmethod
    def parse(text):
        try:
            return SetPartition([[int(i) for i in block.split()] for block in text.split('|')])
        except (TypeError, ValueError) as e:
            raise ValueError('malformed partition %r: %s' % (text, e))

def set_partitions(m):
    if m == 0:
        yield SetPartition([])
        return
    for blocks in multiset_partitions(list(range(1, m + 1))):
        yield SetPartition(blocks)

def even_partitions(m):
    for partition in set_partitions(m):
        if partition.is_even():
            yield partition

def _check_moment(xs):
    if len(xs) > max_moment:
        raise ValueError('moments are limited to m <= %d' % max_moment)
    return [as_matrix(x) for x in xs]

def directed_product(xs, block):
    '''x_i1 x_i2 ... over the block in increasing index order'''
    product = xs[block[0] - 1]
    for i in block[1:]:
        product = product @ xs[i - 1]
    return product

def block_values(xs, d, partition):
    return [d.expect(directed_product(xs, block)) for block in partition.blocks]

def poisson_moment(xs, d):
    '''sum over set partitions of the products of psi on the directed blocks'''
    xs = _check_moment(xs)
    if not xs:
        return 1.0 + 0j
    total = 0j
    for partition in set_partitions(len(xs)):
        total += numpy.prod(block_values(xs, d, partition))
    return complex(total)

def touchard(m, k):
    '''sum over set partitions of k^blocks, the Bell polynomial B_m(k)'''
    x = Symbol('x')
    return float(lambdify(x, bell(int(m), x))(k)) if m else 1.0

def falling_ratio(s, r):
    '''s (s-1) ... (s-r+1) / s^r'''
    return float(scipy.special.perm(s, r)) / float(s) ** r

def clt_moment_finite_s(xs, d, s):
    xs = _check_moment(xs)
    if s < 1:
        raise ValueError('s must be at least 1')
    total = 0j
    for partition in even_partitions(len(xs)):
        r = len(partition)
        if r > s:
            continue
        total += falling_ratio(s, r) * numpy.prod(block_values(xs, d, partition))
    return complex(total)

def clt_moment_limit(xs, d):
    xs = _check_moment(xs)
    total = 0j
    for partition in even_partitions(len(xs)):
        total += numpy.prod(block_values(xs, d, partition))
    return complex(total)

def clt_slot(xs, d, s):
    '''slot elements diag(x, -x, 0, 0) and the slot state of the s-fold construction'''
    k = d.mass
    if s < k:
        raise ValueError('s must be at least the mass %g' % k)
    phi = d.matrix / k
    a, b = (k / s) / 2, (1 - k / s) / 2
    state = Density(scipy.linalg.block_diag(a * phi, a * phi, b * phi, b * phi), 1.0)
    zero = numpy.zeros((d.dim, d.dim))
    slots = [scipy.linalg.block_diag(x, -x, zero, zero) for x in xs]
    return slots, state

dense_limit = 512
tuple_limit = 200000

def simulate_clt_moment(xs, d, s):
    '''state of u(x_1) ... u(x_m) with u(x) the sum of the s slot copies'''
    xs = _check_moment(xs)
    s = int(s)
    slots, state = clt_slot(xs, d, s)
    size = state.dim
    if size ** s <= dense_limit:
        total = tensor_density([state] * s)
        product = numpy.eye(size ** s, dtype=complex)
        for y in slots:
            u = sum(tensor_power([y if j == i else numpy.eye(size) for j in range(s)]) for i in range(s))
            product = product @ u
        return total.expect(product)

    m = len(slots)
    if s ** m > tuple_limit:
        raise ValueError('simulation too large: %d index tuples' % s ** m)
    # copies in different slots commute and the product state factorizes
    total = 0j
    for assignment in itertools.product(range(s), repeat=m):
        value = 1 + 0j
        for slot in set(assignment):
            block = [i + 1 for i in range(m) if assignment[i] == slot]
            value *= state.expect(directed_product(slots, block))
            if value == 0:
                break
        total += value
    return complex(total)

def clt_rate(xs, d, s_values):
    '''fits C with |finite_s - limit| <= C / s'''
    limit = clt_moment_limit(xs, d)
    rows = []
    for s in s_values:
        finite = clt_moment_finite_s(xs, d, s)
        rows.append({'s': s, 'finite': finite, 'limit': limit, 'difference': abs(finite - limit)})
    C = max([row['s'] * row['difference'] for row in rows] or [0.0])
    return {'C': C, 'rows': rows}
