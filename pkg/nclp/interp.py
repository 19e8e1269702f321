#!/usr/bin/env python
#
#   Copyright (C) 2026 nclp developers
#
# This Program is free software; you can redistribute it and/or
# modify it under the terms of the GNU General Public
# License as published by the Free Software Foundation; either
# version 3 of the License, or (at your option) any later version.

# complex interpolation on the strip 0 <= Re z <= 1

import os, sys, math, csv, functools
import numpy, scipy.linalg

from nclp import pyjson, config
from nclp.matcore import *
from nclp.normlib import *

default_grid = 512
default_height = 20.0

def _line_density(theta, y, line):
    '''harmonic measure density of the point theta on the line Re z = line

    pulled back from the upper half plane through w = exp(i pi z):
    the point theta goes to w0 = exp(i pi theta), the line Re z = 0 to the
    positive real axis t = exp(-pi y) and Re z = 1 to t = -exp(-pi y).
    The half plane Poisson kernel Im w0 / (pi |t - w0|^2) picks up the
    jacobian |dw/dy| = pi |t|'''
    a, b = math.cos(math.pi * theta), math.sin(math.pi * theta)
    t = numpy.exp(-math.pi * y)
    if line:
        t = -t
    return b * numpy.abs(t) / ((t - a) ** 2 + b * b)

class StripMeasure(object):
    '''quadrature for the harmonic measure of theta, split over both boundary lines'''
    def __init__(self, theta, grid=default_grid, height=default_height, nodes=None, weights=None):
        if not 0 < theta < 1:
            raise ValueError('theta must lie in (0, 1)')
        if grid < 64:
            raise ValueError('strip quadrature needs at least 64 nodes per line')
        self.theta = float(theta)
        self.grid = int(grid)
        self.height = float(height)
        self.masses = (1 - self.theta, self.theta)
        if nodes is None:
            nodes, weights = self._build()
        self.nodes = nodes
        self.weights = weights
        # mass beyond |Im z| > height of both lines together
        self.tail_bound = 2 * math.sin(math.pi * self.theta) / math.pi * math.exp(-math.pi * self.height)

    def _build(self):
        scale = min(self.theta, 1 - self.theta)
        smax = math.asinh(self.height / scale)
        s = numpy.linspace(-smax, smax, self.grid)
        h = s[1] - s[0]
        y = scale * numpy.sinh(s)
        jacobian = scale * numpy.cosh(s) * h
        nodes, weights = [], []
        for line in range(2):
            nodes.append(line + 1j * y)
            weights.append(_line_density(self.theta, y, line) * jacobian)
        return nodes, weights

    def line_masses(self):
        return float(numpy.sum(self.weights[0])), float(numpy.sum(self.weights[1]))

    def integrate(self, values):
        '''values: pair of arrays sampled on the nodes of each line'''
        return sum(numpy.sum(w * v) for w, v in zip(self.weights, values))

    def write_csv(self, f):
        writer = csv.writer(f)
        writer.writerow(['line', 'im', 'weight'])
        for line in range(2):
            for z, w in zip(self.nodes[line], self.weights[line]):
                writer.writerow([line, repr(float(z.imag)), repr(float(w))])

def _cache_name(theta, grid, height):
    return 'strip-%.17g-%d-%.17g.npz' % (theta, grid, height)

@functools.lru_cache(maxsize=64)
def _cached_measure(theta, grid, height):
    directory = config.cache_dir()
    path = directory and os.path.join(directory, _cache_name(theta, grid, height))
    if path and os.path.exists(path):
        try:
            data = numpy.load(path)
            return StripMeasure(theta, grid, height,
                                nodes=[data['nodes0'], data['nodes1']],
                                weights=[data['weights0'], data['weights1']])
        except Exception as e:
            print('WARNING: ignoring bad quadrature cache', path, e, file=sys.stderr)
    mu = StripMeasure(theta, grid, height)
    if path:
        print('nclp: caching quadrature', path, file=sys.stderr)
        numpy.savez(path, nodes0=mu.nodes[0], nodes1=mu.nodes[1],
                    weights0=mu.weights[0], weights1=mu.weights[1])
    return mu

def strip_measure(theta, grid=default_grid, height=default_height):
    if not 0 < theta < 1:
        raise ValueError('theta must lie in (0, 1)')
    if grid < 64:
        raise ValueError('strip quadrature needs at least 64 nodes per line')
    return _cached_measure(float(theta), int(grid), float(height))

class ExpSeries(object):
    '''f(z) = sum_a c_a exp(a z)'''
    max_terms = 16
    max_modulus = 4.0
    max_imaginary = 2.0

    def __init__(self, terms):
        terms = [(complex(c), complex(a)) for c, a in terms]
        if len(terms) > self.max_terms:
            raise ValueError('unsupported basis: more than %d terms' % self.max_terms)
        for c, a in terms:
            if abs(a) > self.max_modulus or abs(a.imag) > self.max_imaginary:
                raise ValueError('unsupported basis: exponent %s' % a)
        self.terms = terms

    def __call__(self, z):
        z = numpy.asarray(z, dtype=complex)
        return sum((c * numpy.exp(a * z) for c, a in self.terms), numpy.zeros_like(z))

    def __add__(self, other):
        return ExpSeries(self.terms + other.terms)

    def scaled(self, k):
        return ExpSeries([(k * c, a) for c, a in self.terms])

    def tail_bound(self, mu):
        '''bound for the part of the boundary integral beyond the quadrature height'''
        total = 0.0
        for c, a in self.terms:
            decay = math.pi - abs(a.imag)
            total += abs(c) * 2 * math.sin(math.pi * mu.theta) / (math.pi * decay) * math.exp(-decay * mu.height)
        return total

    @staticmethod
    def constant(c=1):
        return ExpSeries([(c, 0)])

    @staticmethod
    def linear_approximation(eps):
        '''(exp(eps z) - 1)/eps, approximating z'''
        return ExpSeries([(1 / eps, eps), (-1 / eps, 0)])

def reproduce(f, mu):
    '''integral of f against the harmonic measure, equal to f(theta)'''
    if not isinstance(f, ExpSeries):
        raise ValueError('unsupported basis: expected an exponential series')
    return complex(mu.integrate([f(z) for z in mu.nodes]))

endpoint_kinds = ['schatten', 'lp', 'row', 'column', 'intersection-row', 'intersection-column']

class Endpoint(object):
    '''one side of a couple

    schatten: ||d^-a x d^-b||_p, the space d^a S_p d^b
    lp: symmetric Kosaki L_p(d)
    row, column: L_p^r, L_p^c conditional on M_m (x) 1
    intersection-row, intersection-column: M cap sqrt(n) L_inf^{r,c}'''
    def __init__(self, kind, p=inf, a=0.0, b=0.0, n=None):
        if not kind in endpoint_kinds:
            raise ValueError('unknown endpoint ' + str(kind))
        check_exponent(p)
        if kind in ('row', 'column') and p < 2:
            raise ValueError('row and column endpoints need p >= 2')
        if kind.startswith('intersection') and (n is None or n <= 0):
            raise ValueError('intersection endpoints need a positive n')
        self.kind, self.p, self.a, self.b, self.n = kind, p, float(a), float(b), n

    def weighted(self):
        '''(p, a, b) of the weighted Schatten form, None for the other kinds'''
        if self.kind == 'schatten':
            return self.p, self.a, self.b
        if self.kind == 'lp':
            return self.p, -inv(self.p) / 2, -inv(self.p) / 2
        return None

    def to_json(self):
        data = {'kind': self.kind, 'p': pyjson.exponent_to_json(self.p)}
        if self.kind == 'schatten':
            data['a'], data['b'] = self.a, self.b
        if self.n is not None:
            data['n'] = self.n
        return data

    @staticmethod
    def from_json(data):
        return Endpoint(data['kind'], pyjson.exponent_from_json(data.get('p', 'inf')),
                        data.get('a', 0.0), data.get('b', 0.0), data.get('n'))

    def __repr__(self):
        return 'Endpoint(%s)' % self.to_json()

class CoupleSpec(object):
    def __init__(self, start, end, theta):
        if not 0 <= theta <= 1:
            raise ValueError('theta outside [0, 1]')
        self.start, self.end, self.theta = start, end, float(theta)

    @property
    def endpoints(self):
        return self.start, self.end

    def to_json(self):
        return {'start': self.start.to_json(), 'end': self.end.to_json(), 'theta': self.theta}

    @staticmethod
    def from_json(data):
        return CoupleSpec(Endpoint.from_json(data['start']), Endpoint.from_json(data['end']),
                          float(data['theta']))

def weighted_couple(p0, a0, b0, p1, a1, b1, theta):
    return CoupleSpec(Endpoint('schatten', p0, a0, b0), Endpoint('schatten', p1, a1, b1), theta)

def lp_couple(p0, p1, theta):
    return CoupleSpec(Endpoint('lp', p0), Endpoint('lp', p1), theta)

rc_kinds = {'lp-row': ('lp', 'row'), 'column-lp': ('column', 'lp'), 'column-row': ('column', 'row')}

def rc_couple(kind, p, theta):
    '''[L_p, L_p^r], [L_p^c, L_p] or [L_p^c, L_p^r] at theta, p >= 2'''
    if not kind in rc_kinds:
        raise ValueError('unknown couple ' + str(kind))
    check_exponent(p, 'p', 2)
    start, end = rc_kinds[kind]
    return CoupleSpec(Endpoint(start, p), Endpoint(end, p), theta)

def intersection_couple(n):
    return CoupleSpec(Endpoint('intersection-column', inf, n=n), Endpoint('intersection-row', inf, n=n), 0.5)

def _level(x, d):
    return split_dims(x, d.dim)

def endpoint_norm(x, endpoint, d):
    x = as_matrix(x)
    kind = endpoint.kind
    if kind == 'schatten':
        if x.shape != (d.dim, d.dim):
            raise ValueError('dimension mismatch between element and density')
        return schatten_norm(frac_power(d, -endpoint.a) @ x @ frac_power(d, -endpoint.b), endpoint.p)
    if kind == 'lp':
        return weighted_lp_norm(x, ambient_density(d, _level(x, d)), endpoint.p)
    if kind == 'row':
        return row_norm(x, d, endpoint.p, _level(x, d))
    if kind == 'column':
        return column_norm(x, d, endpoint.p, _level(x, d))
    if kind == 'intersection-row':
        E = cond_expect(x @ x.conj().T, d)
    else:
        E = cond_expect(x.conj().T @ x, d)
    return max(opnorm(x), math.sqrt(endpoint.n * opnorm(E)))

def _affine(t, start, end):
    return (1 - t) * start + t * end

def couple_norm_closed(x, couple, d, seed=0, restarts=8):
    '''closed form interpolation norm of x for the supported couples'''
    x = as_matrix(x)
    theta = couple.theta
    w0, w1 = couple.start.weighted(), couple.end.weighted()
    if w0 and w1:
        if not d.invertible():
            raise ValueError('non-invertible density')
        ip = _affine(theta, inv(w0[0]), inv(w1[0]))
        return endpoint_norm(x, Endpoint('schatten', from_inverse(ip), _affine(theta, w0[1], w1[1]),
                                         _affine(theta, w0[2], w1[2])), d)

    kinds = couple.start.kind, couple.end.kind
    if kinds in rc_kinds.values() and couple.start.p == couple.end.p:
        p = couple.start.p
        iq = 0.5 - inv(p)
        if kinds == ('lp', 'row'):
            u, v = from_inverse(theta * iq), inf
        elif kinds == ('column', 'lp'):
            u, v = inf, from_inverse((1 - theta) * iq)
        else:
            u, v = from_inverse(theta * iq), from_inverse((1 - theta) * iq)
        spec = NormSpec(p=p, u=u, v=v, density=d, subalgebra=SubalgebraSpec(_level(x, d)))
        return conditional_lp_norm(x, spec, seed=seed, restarts=restarts).value
    raise ValueError('no closed form for %s' % couple.to_json())

def psd_power(h, s):
    '''h^s on the support of the positive matrix h, s may be complex'''
    w, v = scipy.linalg.eigh(hermitian_part(as_matrix(h)))
    top = max(w.max(), 1e-300) if w.size else 1.0
    support = w > 1e-13 * top
    ws = numpy.zeros(w.shape, dtype=complex)
    ws[support] = numpy.exp(s * numpy.log(w[support]))
    return (v * ws) @ v.conj().T

def _power_competitor(x, couple, d):
    '''z -> d^{a(z)} w |y|^{p_theta/p(z)} d^{b(z)} with x = d^{a_theta} y d^{b_theta}, y = w|y|'''
    (p0, a0, b0), (p1, a1, b1) = couple.start.weighted(), couple.end.weighted()
    theta = couple.theta
    ip = _affine(theta, inv(p0), inv(p1))
    if ip <= 0:
        raise ValueError('power competitor needs a finite interpolated exponent')
    ptheta = 1 / ip
    y = frac_power(d, -_affine(theta, a0, a1)) @ x @ frac_power(d, -_affine(theta, b0, b1))
    scale = schatten_norm(y, ptheta)
    if scale == 0:
        return lambda z: numpy.zeros_like(x), 0.0
    y = y / scale
    U, S, Vh = scipy.linalg.svd(y)
    w = U @ Vh
    modulus = (Vh.conj().T * S) @ Vh
    logd = d.eigenvalues

    def dpower(s):
        return (d.eigenvectors * numpy.exp(s * numpy.log(logd))) @ d.eigenvectors.conj().T

    def f(z):
        ipz = _affine(z, inv(p0), inv(p1))
        return dpower(_affine(z, a0, a1)) @ w @ psd_power(modulus, ptheta * ipz) @ dpower(_affine(z, b0, b1))
    return f, scale

def _factorized_competitor(x, couple, family):
    '''z -> alpha beta^{1-z} gamma delta^z, beta and delta positive'''
    try:
        alpha, beta, gamma, delta = [as_matrix(m) for m in family]
    except (TypeError, ValueError) as e:
        raise ValueError('competitor family must be four matrices: ' + str(e))
    theta = couple.theta

    def f(z):
        return alpha @ psd_power(beta, 1 - z) @ gamma @ psd_power(delta, z)
    value = f(theta)
    if value.shape != x.shape or numpy.linalg.norm(value - x) > 1e-8 * max(1.0, numpy.linalg.norm(x)):
        raise ValueError('infeasible factorization: competitor does not pass through x at theta')
    return f

def competitor_upper_bound(x, couple, d, family='constant', aggregation='F', grid=128, height=default_height):
    '''boundary norm of an analytic f with f(theta) = x, an upper bound for ||x||_theta'''
    x = as_matrix(x)
    theta = couple.theta
    if aggregation not in ('F', 'max'):
        raise ValueError('aggregation must be F or max')
    ends = couple.endpoints

    if family == 'constant' or theta in (0, 1):
        norms = [endpoint_norm(x, e, d) for e in ends]
        if theta == 0:
            return norms[0]
        if theta == 1:
            return norms[1]
        if aggregation == 'max':
            return max(norms)
        return math.sqrt((1 - theta) * norms[0] ** 2 + theta * norms[1] ** 2)

    scale = 1.0
    if family == 'power':
        if not (ends[0].weighted() and ends[1].weighted()):
            raise ValueError('power competitor needs weighted Schatten endpoints')
        if not d.invertible():
            raise ValueError('non-invertible density')
        f, scale = _power_competitor(x, couple, d)
        if scale == 0:
            return 0.0
    elif isinstance(family, str):
        raise ValueError('unknown competitor family ' + family)
    else:
        f = _factorized_competitor(x, couple, family)

    mu = strip_measure(theta, grid, height)
    lines = []
    for line in range(2):
        lines.append(numpy.array([endpoint_norm(f(z), ends[line], d) for z in mu.nodes[line]]))
    if aggregation == 'max':
        return scale * max(values.max() for values in lines)
    total = 0.0
    for line in range(2):
        # renormalize to the exact line mass, the quadrature misses only the tails
        weights = mu.weights[line] * (mu.masses[line] / numpy.sum(mu.weights[line]))
        total += numpy.sum(weights * lines[line] ** 2)
    return scale * math.sqrt(total)

def rc_oracle(x, kind, d):
    '''exact value at theta = 1/2, p = inf: the couples become the (4, inf), (inf, 4)
    and (4, 4) conditional norms, whose closed forms are OH_n norms'''
    if not kind in rc_kinds:
        raise ValueError('unknown couple ' + str(kind))
    x = as_matrix(x)
    m, n = _level(x, d), d.dim
    quarter = numpy.kron(numpy.eye(m), frac_power(d, 0.25))
    if kind == 'lp-row':
        return d.mass ** -0.25 * oh_closed_form(row_blocks(quarter @ x, m, n))
    if kind == 'column-lp':
        return d.mass ** -0.25 * oh_closed_form(row_blocks((x @ quarter).conj().T, m, n))
    Y = quarter @ x @ quarter
    return d.mass ** -0.5 * oh_closed_form(list(blocks(Y, m, n).reshape(n * n, m, m)))

def rc_couple_check(x, kind, p, theta, d, seed=0, samples=64, tol=1e-6):
    '''checks the closed form of an rc couple against bounds it does not depend on

    upper: ||x||_0^(1 - theta) ||x||_1^theta and the constant competitor bound
    lower: the best of random points in the unit balls of the conditional sup
    exact: the OH closed form at theta = 1/2, p = inf'''
    x = as_matrix(x)
    couple = rc_couple(kind, p, theta)
    closed = couple_norm_closed(x, couple, d, seed=seed)
    start, end = [endpoint_norm(x, e, d) for e in couple.endpoints]
    geometric = start ** (1 - theta) * end ** theta
    competitor = competitor_upper_bound(x, couple, d)

    iq = 0.5 - inv(p)
    u, v = {'lp-row': (from_inverse(theta * iq), inf),
            'column-lp': (inf, from_inverse((1 - theta) * iq)),
            'column-row': (from_inverse(theta * iq), from_inverse((1 - theta) * iq))}[kind]
    m, n = _level(x, d), d.dim
    left = numpy.kron(numpy.eye(m), frac_power(d, inv(u) + inv(p) / 2))
    right = numpy.kron(numpy.eye(m), frac_power(d, inv(p) / 2 + inv(v)))
    Y = left @ x @ right
    s = from_inverse(inv(u) + inv(p) + inv(v))
    cu, cv = d.mass ** -inv(u), d.mass ** -inv(v)
    rng = named_stream(seed, 'rc-couple-%s' % kind)
    sampled = 0.0
    for i in range(samples):
        a, b = ball_point(rng, m, u, cu), ball_point(rng, m, v, cv)
        sampled = max(sampled, schatten_norm(lift(a, n) @ Y @ lift(b, n), s))

    slack = 1 + tol
    passed = closed <= geometric * slack and closed <= competitor * slack and sampled <= closed * slack
    row = {'couple': kind, 'p': pyjson.exponent_to_json(p), 'theta': theta, 'closed': closed,
           'geometric': geometric, 'competitor': competitor, 'sampled': sampled}
    if theta == 0.5 and math.isinf(p):
        row['oracle'] = rc_oracle(x, kind, d)
        passed = passed and abs(closed - row['oracle']) <= tol * max(row['oracle'], 1e-300)
    row['passed'] = passed
    return row

def boundary_pairing(f0, f1, g, mu, d, beta, side='row'):
    '''(1 - theta) int g d^beta f_0 dmu_0 + theta int g f_1 dmu_1 for row traces,
    f_0 d^beta on the left line for column traces

    f0, f1 evaluate the boundary values at points of the lines Re z = 0, 1'''
    if side not in ('row', 'column'):
        raise ValueError('unknown side %s' % side)
    twist = frac_power(d, beta)
    total = 0
    for z, w in zip(mu.nodes[0], mu.weights[0]):
        f = twist @ f0(z) if side == 'row' else f0(z) @ twist
        total = total + w * g(z) * f
    for z, w in zip(mu.nodes[1], mu.weights[1]):
        total = total + w * g(z) * f1(z)
    return total

def boundary_pairing_check(y, d, theta, p, side='row', s=0.5, grid=default_grid, height=default_height, tol=1e-6):
    '''traces of F(z) = d^(s(z - theta)) y with the row (column) twist on the left line:
    the pairing against g = 1 returns y, against g(z) = exp(z) - exp(theta) it vanishes'''
    y = as_matrix(y)
    if not d.invertible():
        raise ValueError('non-invertible density')
    beta = 0.25 - inv(conjugate(p)) / 2
    mu = strip_measure(theta, grid, height)
    untwist = frac_power(d, -beta)

    def family(z):
        # on Re z = line, d^(s(z - theta)) = d^(s(line - theta)) d^(i s Im z)
        shift = frac_power(d, s * (z.real - theta)) @ imaginary_power(d, s * z.imag)
        return shift @ y

    def f0(z):
        return untwist @ family(z) if side == 'row' else family(z) @ untwist

    one = boundary_pairing(f0, family, ExpSeries.constant(), mu, d, beta, side)
    vanishing = ExpSeries([(1, 1), (-math.exp(theta), 0)])
    zero = boundary_pairing(f0, family, vanishing, mu, d, beta, side)
    scale = max(numpy.linalg.norm(y), 1e-300)
    reproduced = float(numpy.linalg.norm(one - y)) / scale
    annihilated = float(numpy.linalg.norm(zero)) / scale
    return {'theta': theta, 'p': pyjson.exponent_to_json(p), 'side': side, 'beta': beta,
            'reproduced': reproduced, 'annihilated': annihilated,
            'passed': reproduced <= tol and annihilated <= tol}
