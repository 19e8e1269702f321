#!/usr/bin/env python
#
#   Copyright (C) 2026 nclp developers
#
# This Program is free software; you can redistribute it and/or
# modify it under the terms of the GNU General Public
# License as published by the Free Software Foundation; either
# version 3 of the License, or (at your option) any later version.

# intersection, quotient and graph spaces built over a diagonal weight

import sys, math
import numpy, scipy.linalg, scipy.optimize

from nclp import pyjson
from nclp.matcore import *
from nclp.normlib import *

def _no_debug(*args):
    pass

class DiagonalWeight(object):
    '''psi_n = diag(gamma), with graph eigenvalues lambda = gamma^(1/4 - 1/2p')'''
    def __init__(self, gammas, p=1):
        gammas = numpy.asarray(gammas, dtype=float).ravel()
        if not gammas.size:
            raise ValueError('diagonal weight needs at least one entry')
        if not numpy.all(gammas > 0) or not numpy.all(numpy.isfinite(gammas)):
            raise ValueError('diagonal weight entries must be positive')
        if not 1 <= p <= 2:
            raise ValueError('weight exponent p must lie in [1, 2]')
        self.gammas = gammas
        self.p = p
        self.n = gammas.size
        self.k = float(gammas.sum())
        self.rounded_k = max(1, int(math.floor(self.k + 0.5)))
        self.lambdas = self.exponent_law(gammas, p)

    @staticmethod
    def exponent_law(gammas, p):
        return numpy.asarray(gammas, dtype=float) ** (0.25 - inv(conjugate(p)) / 2)

    def check(self):
        return numpy.allclose(self.exponent_law(self.gammas, self.p), self.lambdas, rtol=1e-12, atol=0)

    def density(self):
        return Density.diagonal(self.gammas, self.k)

    def state(self):
        return Density.diagonal(self.gammas / self.k, 1.0)

    def rounding_distortion(self):
        '''multiplicative change of psi_n when k_n is replaced by the nearest integer'''
        return self.rounded_k / self.k

    def rounded(self, debug=_no_debug):
        distortion = self.rounding_distortion()
        if distortion != 1:
            debug('nclp: k_n = %.6g rounded to %d, distortion %.6g' % (self.k, self.rounded_k, distortion))
        return DiagonalWeight(self.gammas * distortion, self.p)

    def to_json(self):
        return {'gammas': [float(g) for g in self.gammas], 'p': pyjson.exponent_to_json(self.p)}

    @staticmethod
    def from_json(data):
        try:
            gammas = data['gammas']
        except (KeyError, TypeError):
            raise ValueError('diagonal weight needs gammas')
        return DiagonalWeight(gammas, pyjson.exponent_from_json(data.get('p', 1)))

def perturb_weights(lambdas, eps):
    '''lambda + eps, strictly positive, with the (sum eps^4)^(1/4) distortion bound'''
    lambdas = numpy.asarray(lambdas, dtype=float)
    eps = numpy.broadcast_to(numpy.asarray(eps, dtype=float), lambdas.shape)
    if numpy.any(eps < 0):
        raise ValueError('perturbation must be nonnegative')
    perturbed = lambdas + eps
    if not numpy.all(perturbed > 0):
        raise ValueError('perturbed weights must be strictly positive')
    return perturbed, float(numpy.sum(eps ** 4) ** 0.25)

def _check_state(d):
    if not d.is_state():
        raise ValueError('J norms are taken with respect to a state, mass is %g' % d.mass)

def lambda_norm(x, d, N, u, v, n, seed=0, restarts=8):
    '''n^(1/u + 1/v) times the (u, v) conditional norm of x in M at p = inf'''
    _check_state(d)
    spec = NormSpec(p=inf, u=u, v=v, density=d, subalgebra=N)
    return n ** (inv(u) + inv(v)) * conditional_lp_norm(x, spec, seed=seed, restarts=restarts).value

def lambda_terms(x, d, N, n, seed=0, restarts=8):
    '''the four Lambda norms with u, v in {4, inf}'''
    terms = {}
    for u in (inf, 4):
        for v in (inf, 4):
            terms[(u, v)] = lambda_norm(x, d, N, u, v, n, seed, restarts)
    return terms

def j_infty2_norm(x, d, N, n, seed=0, restarts=8):
    return max(lambda_terms(x, d, N, n, seed, restarts).values())

def j_pq_norm(x, d, p, q, n, m=1, seed=0, restarts=8):
    '''max over u, v in {2r, inf} of n^(1/u + 1/p + 1/v) ||x||_(u,v) with 1/r = 1/q - 1/p'''
    _check_state(d)
    check_exponent(p)
    check_exponent(q, 'q')
    if q > p:
        raise ValueError('j_pq_norm needs q <= p')
    r = from_inverse(inv(q) - inv(p))
    sides = [inf] if math.isinf(r) else [2 * r, inf]
    N = SubalgebraSpec(m)
    best = 0.0
    for u in sides:
        for v in sides:
            spec = NormSpec(p=p, u=u, v=v, density=d, subalgebra=N)
            value = conditional_lp_norm(x, spec, seed=seed, restarts=restarts).value
            best = max(best, n ** (inv(u) + inv(p) + inv(v)) * value)
    return best

def graph_components(z, lambdas, m=1, seed=0, restarts=8):
    '''norms of z in M_m(C cap oh(lambda)) (x)_h (R cap oh(lambda)), one per component'''
    lambdas = numpy.asarray(lambdas, dtype=float)
    n = lambdas.size
    z = as_matrix(z)
    if z.shape != (m * n, m * n):
        raise ValueError('dimension mismatch: expected %d x %d' % (m * n, m * n))
    D = numpy.kron(numpy.eye(m), numpy.diag(lambdas))
    left, right = D @ z, z @ D
    oh_restarts = max(restarts, 16)
    return {'M': opnorm(z),
            'OH_R': oh_valued_norm(row_blocks(left, m, n), seed=seed, restarts=oh_restarts).value,
            'C_OH': oh_valued_norm(row_blocks(right.conj().T, m, n), seed=seed, restarts=oh_restarts).value,
            'OH_OH': family_sup(blocks(left @ D, m, n).reshape(n * n, m, m), 4, 4,
                                seed=seed, restarts=restarts).value}

def graph_tensor_check(lambdas, m=1, samples=4, seed=0, restarts=8, tol=1e-6):
    '''compares the graph tensor norm with J_inf,2 of psi_n = diag(lambda^4) on random z'''
    lambdas = numpy.asarray(lambdas, dtype=float)
    if not numpy.all(lambdas > 0):
        raise ValueError('graph weights must be strictly positive')
    weight = DiagonalWeight(lambdas ** 4, p=1)
    phi = weight.state()
    n = lambdas.size
    rows = []
    for i in range(samples):
        rng = named_stream(seed, 'graph-tensor-%d' % i)
        z = random_matrix(m * n, m * n, rng)
        graph = graph_components(z, weight.lambdas, m, seed, restarts)
        j = lambda_terms(z, phi, SubalgebraSpec(m), weight.k, seed, restarts)
        left, right = max(graph.values()), max(j.values())
        rows.append({'sample': i, 'graph': left, 'j': right, 'ratio': left / right,
                     'components': graph})
    deviation = max(abs(row['ratio'] - 1) for row in rows) if rows else 0.0
    return {'n': n, 'm': m, 'k': weight.k, 'samples': rows,
            'max_deviation': deviation, 'passed': deviation <= tol}

def _row_norm(a, lambdas):
    return math.sqrt(opnorm(sum(x @ x.conj().T / (l * l) for x, l in zip(a, lambdas))))

def oh_graph_map(lambdas, m=2, samples=64, seed=0, refine=True):
    '''level m norm of OH_n -> R_n, delta_k -> delta_k / lambda_k, and the graph distortion'''
    lambdas = numpy.asarray(lambdas, dtype=float)
    if lambdas.size < 1 or m < 1:
        raise ValueError('the oh graph map needs n >= 1 and m >= 1')
    if not numpy.all(lambdas > 0):
        raise ValueError('graph weights must be strictly positive')
    n = lambdas.size
    rng = named_stream(seed, 'oh-graph')

    def unpack(t):
        t = t[:n * m * m] + 1j * t[n * m * m:]
        return t.reshape(n, m, m)

    def ratio(a):
        denominator = oh_closed_form(a)
        if denominator <= 0:
            return 0.0
        return _row_norm(a, lambdas) / denominator

    best, best_point, projection = 0.0, None, 0.0
    for i in range(samples):
        t = rng.standard_normal(2 * n * m * m)
        a = unpack(t)
        value = ratio(a)
        if value > best:
            best, best_point = value, t
        oh = oh_closed_form(a)
        graph = math.sqrt(_row_norm(a, lambdas) ** 2 + oh ** 2)
        if graph > 0:
            projection = max(projection, oh / graph)

    if refine and best_point is not None:
        result = scipy.optimize.minimize(lambda t: -ratio(unpack(t)), best_point, method='Nelder-Mead',
                                         options={'maxiter': 2000 * n, 'xatol': 1e-10, 'fatol': 1e-13})
        best = max(best, -float(result.fun))

    bound = float(numpy.sum(lambdas ** -4.0) ** 0.25)
    return {'n': n, 'm': m, 'xi': best, 'distortion': math.sqrt(1 + best * best),
            'xi_bound': bound, 'distortion_bound': math.sqrt(1 + bound * bound),
            'projection_norm': projection,
            'passed': best <= bound * (1 + 1e-9) and projection <= 1 + 1e-12}

def discretize_spectrum(d, delta, p=1, debug=_no_debug):
    '''floor the spectrum of d to the grid delta Z, returns (weight, report)'''
    if not delta > 0:
        raise ValueError('delta must be positive')
    f = d.eigenvalues
    g = numpy.floor(f / delta + 1e-12) * delta
    excluded = [int(i) for i in numpy.nonzero(g <= 0)[0]]
    if excluded:
        debug('nclp: eigenvalues below delta floor to zero and are excluded', excluded)
    keep = g > 0
    if not numpy.any(keep):
        raise ValueError('every eigenvalue floors to zero, decrease delta')
    f, g = f[keep], g[keep]
    distortion = float(numpy.max(numpy.sqrt((1 + f * f) / (1 + g * g))))
    report = {'delta': delta, 'distortion': distortion, 'bound': 1 + delta,
              'raw_ratio': float(numpy.max(f / g)), 'excluded': excluded,
              'passed': distortion <= 1 + delta + 1e-12}
    return DiagonalWeight(g, p), report

def _ceil_power(base, exponent):
    '''ceil(base^exponent), None when it overflows a float'''
    if exponent * math.log10(base) > 300:
        return None
    return int(math.ceil(base ** exponent * (1 - 1e-12)))

def dimension_budget(m, alpha, beta, gamma):
    '''n ~ m log m, k_n = n^alpha, w_n = k_n^(gamma k_n), M = m^(beta m^alpha)'''
    if m < 2:
        raise ValueError('dimension budget needs m >= 2')
    n = int(math.ceil(m * math.log(m)))
    k = int(math.ceil(n ** alpha - 1e-9))
    log10_w = gamma * k * math.log10(k)
    log10_M = beta * m ** alpha * math.log10(m)
    return {'m': m, 'alpha': alpha, 'beta': beta, 'gamma': gamma, 'n': n, 'k': k,
            'w': _ceil_power(k, gamma * k), 'log10_w': log10_w,
            'M': _ceil_power(m, beta * m ** alpha), 'log10_M': log10_M}

def quotient_components(d, p):
    '''(left, right, exponent) of the four terms of Psi, sum left_i x_i right_i'''
    check_exponent(p)
    if not d.invertible():
        raise ValueError('non-invertible density')
    e = inv(conjugate(p)) / 2
    t = from_inverse(inv(p) / 2 + 0.25)
    outer, quarter = frac_power(d, e), frac_power(d, 0.25)
    return [(outer, outer, p), (outer, quarter, t), (quarter, outer, t), (quarter, quarter, 2.0)]

def quotient_image(xs, d, p):
    if len(xs) != 4:
        raise ValueError('quotient norm needs a 4-tuple')
    return sum(l @ as_matrix(x) @ r for (l, r, e), x in zip(quotient_components(d, p), xs))

def _sum_components(d, p):
    return [WeightedSchatten(e, left=scipy.linalg.inv(l), right=scipy.linalg.inv(r), name='x%d' % (i + 1))
            for i, (l, r, e) in enumerate(quotient_components(d, p))]

def k_quotient_norm(xs, d, p, seed=0, tol=1e-4, maxiter=5000, debug=_no_debug):
    '''norm of the class of (x_1, ..., x_4) in the l2 sum of S_p, S_t, S_t, S_2 modulo ker Psi'''
    xs = [as_matrix(x) for x in xs]
    terms = quotient_components(d, p)
    y = quotient_image(xs, d, p)
    if not numpy.any(y):
        return OptimizerReport(0.0, duality_gap=0.0, seed=seed, lower=0.0, upper=0.0)
    if p == 1:
        debug('nclp: p = 1 quotient uses a smoothed trace norm for the first component')

    (l1, r1, e1) = terms[0]
    l1inv, r1inv = scipy.linalg.inv(l1), scipy.linalg.inv(r1)
    shape = y.shape
    count = len(terms) - 1
    scale = numpy.linalg.norm(y)

    def first(rest):
        return l1inv @ (y - sum(l @ x @ r for (l, r, e), x in zip(terms[1:], rest))) @ r1inv

    def half_square(w, exponent, eps):
        value, G = smooth_schatten(w, exponent, eps)
        return 0.5 * value * value, value * G

    def objective(z, eps):
        rest = unpack_complex(z, count, shape)
        x1 = first(rest)
        f, G1 = half_square(x1, e1, eps if e1 == 1 else 0.0)
        back = l1inv.conj().T @ G1 @ r1inv.conj().T
        grads = []
        for (l, r, e), x in zip(terms[1:], rest):
            fi, Gi = half_square(x, e, 0.0)
            f += fi
            grads.append(Gi - l.conj().T @ back @ r.conj().T)
        return f, pack_complex(grads)

    def exact(rest):
        values = [schatten_norm(first(rest), e1)] + [schatten_norm(x, e) for (l, r, e), x in zip(terms[1:], rest)]
        return math.sqrt(sum(v * v for v in values))

    z = pack_complex(xs[1:])
    schedule = (1e-3, 1e-5, 1e-7, 1e-9) if e1 == 1 else (0.0,)
    best, best_rest, iterations = exact(xs[1:]), xs[1:], 0
    for eps in schedule:
        result = scipy.optimize.minimize(objective, z, args=(eps * scale,), jac=True, method='L-BFGS-B',
                                         options={'maxiter': maxiter, 'ftol': 1e-16, 'gtol': 1e-13 * max(scale, 1)})
        z = result.x
        iterations += int(result.nit)
        rest = unpack_complex(z, count, shape)
        value = exact(rest)
        if value < best:
            best, best_rest = value, rest

    # every component's gradient certifies a lower bound, so does their average
    x1 = first(best_rest)
    parts = [l @ x @ r for (l, r, e), x in zip(terms, [x1] + list(best_rest))]
    lower = certificate_bound(y, _sum_components(d, p), parts, 'l2', schedule[-1] * scale)
    gap = best - lower
    converged = gap <= tol * best
    if not converged:
        debug('nclp: quotient norm gap %g above tolerance' % gap)
    return OptimizerReport(best, iterations=iterations, duality_gap=gap, converged=converged,
                           seed=seed, lower=lower, upper=best, point=[x1] + list(best_rest))

def k_quotient_sum_norm(xs, d, p, seed=0, tol=1e-4, debug=None):
    '''the same quotient norm as the l2 sum space of d^-a S d^-b, via sum_norm'''
    y = quotient_image([as_matrix(x) for x in xs], d, p)
    return sum_norm(y, _sum_components(d, p), combine='l2', seed=seed, tol=tol, debug=debug)

def rc_components(d, p, k, m=1):
    '''the three terms of K^p_rc(psi_n) at level m, x = x_p + d^a x_r + x_c d^a with a = 1/p - 1/2

    k^(1/p) ||x_p||_p, sqrt(k) ||tr_n(x_r x_r*)^(1/2)||_p and sqrt(k) ||tr_n(x_c* x_c)^(1/2)||_p'''
    if not 1 <= p <= 2:
        raise ValueError('K^p_rc needs p in [1, 2]')
    if not d.invertible():
        raise ValueError('non-invertible density')
    if m < 1 or not k > 0:
        raise ValueError('K^p_rc needs m >= 1 and k > 0')
    n = d.dim
    weight = numpy.kron(numpy.eye(m), frac_power(d, -(inv(p) - 0.5)))
    return [WeightedSchatten(p, weight=k ** inv(p), name='diagonal'),
            ConditionalSquare(p, m, n, 'row', left=weight, weight=math.sqrt(k), name='row'),
            ConditionalSquare(p, m, n, 'column', right=weight, weight=math.sqrt(k), name='column')]

def rc_sum_norm(x, d, p, k, m=1, seed=0, tol=1e-4, debug=None):
    '''S_p^m(K^p_rc(psi_n)) norm of x, the infimum over the three term decompositions'''
    return sum_norm(x, rc_components(d, p, k, m), combine='l1', seed=seed, tol=tol, debug=debug)

def rc_isometry_check(a, d, p, m=1, side='row', tol=1e-9):
    '''||(id (x) phi)(a a*)^(1/2)||_p three ways: the K^p_rc row term of d^(1/2) a,
    the partial trace directly, and for p >= 2 the conditional row norm of
    d^(1/2p) a d^(-1/2p) (the column side is the mirror image)'''
    if side not in ('row', 'column'):
        raise ValueError('unknown side %s' % side)
    if not d.is_state() or not d.invertible():
        raise ValueError('the rc isometry is taken for a faithful state')
    a = as_matrix(a)
    n = d.dim
    if a.shape != (m * n, m * n):
        raise ValueError('dimension mismatch: expected %d x %d' % (m * n, m * n))

    def lifted(s):
        return numpy.kron(numpy.eye(m), frac_power(d, s))

    term = ConditionalSquare(p, m, n, side)
    if side == 'row':
        component = term.value(lifted(0.5) @ a)
        P = partial_trace(lifted(1.0) @ a @ a.conj().T, m, n)
    else:
        component = term.value(a @ lifted(0.5))
        P = partial_trace(a.conj().T @ a @ lifted(1.0), m, n)
    lam = numpy.clip(scipy.linalg.eigvalsh(hermitian_part(P)), 0, None)
    direct = schatten_from_singular(numpy.sqrt(lam), p)
    values = {'component': component, 'partial_trace': direct}
    if p >= 2 and side == 'row':
        values['conditional'] = row_norm(lifted(inv(p) / 2) @ a @ lifted(-inv(p) / 2), d, p, m)
    elif p >= 2:
        values['conditional'] = column_norm(lifted(-inv(p) / 2) @ a @ lifted(inv(p) / 2), d, p, m)
    deviation = max(abs(v - direct) for v in values.values()) / max(direct, 1e-300)
    return {'p': p, 'm': m, 'side': side, 'values': values, 'max_deviation': deviation,
            'passed': deviation <= tol}

def amplified_closed_forms(x, d, m):
    '''closed forms of the conditional (u, v) norms at p = inf on M_m (x) M_n

    (2, inf), (inf, 2): ||tr_n(Y Y*)||^(1/2) with Y = d^(1/2) x, resp. x d^(1/2)
    (4, inf), (inf, 4), (4, 4): OH_n norms of the row blocks of d^(1/4) x,
    of (x d^(1/4))* and of the blocks of d^(1/4) x d^(1/4)'''
    x = as_matrix(x)
    n = d.dim
    quarter = numpy.kron(numpy.eye(m), frac_power(d, 0.25))
    half = numpy.kron(numpy.eye(m), frac_power(d, 0.5))
    cu = d.mass ** -0.5
    left, right = half @ x, x @ half
    Y = quarter @ x @ quarter
    return {(2, inf): cu * math.sqrt(opnorm(partial_trace(left @ left.conj().T, m, n))),
            (inf, 2): cu * math.sqrt(opnorm(partial_trace(right.conj().T @ right, m, n))),
            (4, inf): d.mass ** -0.25 * oh_closed_form(row_blocks(quarter @ x, m, n)),
            (inf, 4): d.mass ** -0.25 * oh_closed_form(row_blocks((x @ quarter).conj().T, m, n)),
            (4, 4): cu * oh_closed_form(list(blocks(Y, m, n).reshape(n * n, m, m)))}

def amplified_isometry_check(x, d, m, seed=0, restarts=8, tol=1e-6):
    '''conditional (u, v) norms at p = inf against their amplified closed forms'''
    closed = amplified_closed_forms(x, d, m)
    rows = []
    for (u, v), value in sorted(closed.items()):
        spec = NormSpec(p=inf, u=u, v=v, density=d, subalgebra=SubalgebraSpec(m))
        report = conditional_lp_norm(x, spec, seed=seed, restarts=restarts)
        deviation = abs(report.value - value) / max(value, 1e-300)
        rows.append({'u': pyjson.exponent_to_json(u), 'v': pyjson.exponent_to_json(v),
                     'conditional': report.value, 'closed': value, 'deviation': deviation,
                     'passed': deviation <= tol})
    return {'m': m, 'n': d.dim, 'rows': rows, 'passed': all(row['passed'] for row in rows)}
