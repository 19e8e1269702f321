#!/usr/bin/env python
#
#   Copyright (C) 2026 nclp developers
#
# This Program is free software; you can redistribute it and/or
# modify it under the terms of the GNU General Public
# License as published by the Free Software Foundation; either
# version 3 of the License, or (at your option) any later version.

# norm solvers.  sup type norms return the value at the best feasible
# point found (a certified lower bound), inf type norms return the value
# of the best feasible decomposition (a certified upper bound)

import math
import numpy, scipy.linalg, scipy.optimize

from nclp import pyjson
from nclp.matcore import *

inf = math.inf
placements = ['symmetric', 'left', 'right', 'both-quarter']

def inv(p):
    return 0.0 if math.isinf(p) else 1.0 / p

def from_inverse(r):
    if r <= 1e-15:
        return inf
    return 1.0 / r

def conjugate(p):
    if p == 1:
        return inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)

def check_exponent(p, name='p', low=1):
    if p is None or math.isnan(p) or p < low:
        raise ValueError('%s=%s outside [%g, inf]' % (name, p, low))
    return p

def in_solid_k(u, v, q):
    '''(1/u, 1/v, 1/q) lies in the solid K'''
    if u < 2 or v < 2 or q < 1:
        return False
    return inv(u) + inv(q) + inv(v) <= 1 + 1e-12

class NormSpec(object):
    def __init__(self, p=None, q=None, u=None, v=None, m=1, density=None,
                 placement='symmetric', subalgebra=None):
        for name, value in (('p', p), ('q', q)):
            if value is not None:
                check_exponent(value, name)
        for name, value in (('u', u), ('v', v)):
            if value is not None:
                check_exponent(value, name, 2)
        if not placement in placements:
            raise ValueError('unknown placement ' + str(placement))
        if int(m) < 1:
            raise ValueError('amplification level must be at least 1')
        self.p, self.q, self.u, self.v = p, q, u, v
        self.m = int(m)
        self.density = density
        self.placement = placement
        self.subalgebra = subalgebra

        self.amalgamated = self.conditional = None
        if u is not None and v is not None and q is not None:
            if not in_solid_k(u, v, q):
                raise ValueError('indices outside K')
            self.amalgamated = from_inverse(inv(u) + inv(q) + inv(v))
        if u is not None and v is not None and p is not None:
            if not in_solid_k(u, v, p):
                raise ValueError('indices outside K')
            self.conditional = from_inverse(inv(u) + inv(p) + inv(v))

    def to_json(self):
        data = {'m': self.m, 'placement': self.placement}
        for name in ['p', 'q', 'u', 'v']:
            value = getattr(self, name)
            if value is not None:
                data[name] = pyjson.exponent_to_json(value)
        if self.density is not None:
            data['density'] = pyjson.matrix_to_json(self.density.matrix)
            data['mass'] = self.density.mass
        if self.subalgebra is not None:
            data['subalgebra'] = self.subalgebra.to_json()
        return data

    @staticmethod
    def from_json(data):
        exps = dict((name, pyjson.exponent_from_json(data.get(name))) for name in ['p', 'q', 'u', 'v'])
        density = None
        if 'density' in data:
            density = Density(pyjson.matrix_from_json(data['density']), data.get('mass'))
        subalgebra = None
        if 'subalgebra' in data:
            subalgebra = SubalgebraSpec.from_json(data['subalgebra'])
        return NormSpec(m=data.get('m', 1), density=density,
                        placement=data.get('placement', 'symmetric'),
                        subalgebra=subalgebra, **exps)

class OptimizerReport(object):
    def __init__(self, value, iterations=0, duality_gap=None, restarts=0, converged=True,
                 seed=None, lower=None, upper=None, point=None):
        self.value = max(float(value), 0.0)
        self.iterations = int(iterations)
        self.duality_gap = duality_gap
        self.restarts = int(restarts)
        self.converged = bool(converged)
        self.seed = seed
        self.lower = lower
        self.upper = upper
        self.point = point

    def as_dict(self):
        data = {'value': self.value, 'iterations': self.iterations,
                'restarts': self.restarts, 'converged': self.converged}
        for name in ['duality_gap', 'seed', 'lower', 'upper']:
            value = getattr(self, name)
            if value is not None:
                data[name] = value
        return pyjson.to_plain(data)

    def __float__(self):
        return self.value

    def __repr__(self):
        return 'OptimizerReport(%s)' % self.as_dict()

def schatten_from_singular(s, p):
    s = numpy.asarray(s, dtype=float)
    if s.size == 0:
        return 0.0
    top = s.max()
    if top <= 0:
        return 0.0
    if math.isinf(p):
        return float(top)
    if p == 1:
        return float(s.sum())
    return float(top * numpy.sum((s / top) ** p) ** (1.0 / p))

def schatten_norm(x, p):
    if p is None or p < 1:
        raise ValueError('schatten exponent must be at least 1')
    x = as_matrix(x)
    if x.size == 0:
        return 0.0
    return schatten_from_singular(scipy.linalg.svdvals(x), p)

def placement_powers(p, placement):
    if placement == 'symmetric':
        return inv(p) / 2, inv(p) / 2
    if placement == 'left':
        return inv(p), 0.0
    if placement == 'right':
        return 0.0, inv(p)
    if placement == 'both-quarter':
        return 0.25, 0.25
    raise ValueError('unknown placement ' + str(placement))

def kosaki_embed(x, d, p, placement='symmetric'):
    x = as_matrix(x)
    if x.shape != (d.dim, d.dim):
        raise ValueError('dimension mismatch between element and density')
    a, b = placement_powers(p, placement)
    return frac_power(d, a) @ x @ frac_power(d, b)

def weighted_lp_norm(x, d, p, placement='symmetric'):
    '''Kosaki embedded norm, d may carry any mass'''
    check_exponent(p)
    return schatten_norm(kosaki_embed(x, d, p, placement), p)

def state_lp_norm(x, d, p):
    if not d.is_state():
        raise ValueError('state_lp_norm needs a state, mass is %g' % d.mass)
    return weighted_lp_norm(x, d, p)

def factorization_norm(x, u, v, maxiter=200, tol=1e-10, start='polar', seed=0, debug=None):
    '''inf ||alpha||_u ||beta||_v over x = alpha beta'''
    check_exponent(u, 'u', 2)
    check_exponent(v, 'v', 2)
    x = as_matrix(x)
    p = from_inverse(inv(u) + inv(v))
    lower = schatten_norm(x, p)
    if lower == 0:
        return OptimizerReport(0.0, converged=True, lower=0.0, upper=0.0, seed=seed)

    total = inv(u) + inv(v)
    eu = inv(u) / total if total else 0.5
    ev = 1 - eu

    U, S, Vh = scipy.linalg.svd(x, full_matrices=False)
    if start == 'polar':
        # x = w|x|, alpha = w|x|^{p/u}, beta = |x|^{p/v}
        alpha = (U * numpy.where(S > 0, S, 0) ** eu) @ Vh if eu else U @ Vh
        beta = (Vh.conj().T * S ** ev) @ Vh
    elif start == 'random':
        rng = rng_from(seed)
        alpha = random_matrix(x.shape[0], x.shape[0], rng)
        beta = scipy.linalg.pinv(alpha) @ x
    else:
        raise ValueError('unknown start ' + str(start))

    def value(alpha, beta):
        return schatten_norm(alpha, u) * schatten_norm(beta, v)

    best = value(alpha, beta)
    iterations = 0
    for iterations in range(1, maxiter + 1):
        beta = scipy.linalg.pinv(alpha) @ x
        alpha = x @ scipy.linalg.pinv(beta)
        # balance the factors, the product of norms is scale invariant
        na, nb = schatten_norm(alpha, u), schatten_norm(beta, v)
        if na > 0 and nb > 0:
            t = math.sqrt(nb / na)
            alpha, beta = alpha * t, beta / t
        current = value(alpha, beta)
        if debug:
            debug('factorization', iterations, current)
        if current >= best * (1 - 1e-14):
            best = min(best, current)
            break
        best = current
    converged = best - lower <= tol * max(1.0, best)
    return OptimizerReport(best, iterations=iterations, converged=converged, seed=seed,
                           lower=lower, upper=best, duality_gap=best - lower)

def ball_point(rng, n, u, c=1.0):
    '''random n x n matrix on the sphere of radius c in S_u'''
    g = random_matrix(n, n, rng)
    return g * (c / schatten_norm(g, u))

def identity_point(n, u, c=1.0):
    return numpy.eye(n, dtype=complex) * (c / n ** inv(u))

def norming_point(G, u, c=1.0):
    '''maximizer of Re tr(G* a) over the ball ||a||_u <= c'''
    U, S, Vh = scipy.linalg.svd(G, full_matrices=False)
    if S.size == 0 or S[0] <= 0:
        return None
    if math.isinf(u):
        return c * (U @ Vh)
    e = conjugate(u) - 1
    top = S[0]
    T = (S / top) ** e
    return c * (U * (T / schatten_from_singular(T, u))) @ Vh

def best_square_factor(P, u, c=1.0):
    '''max of tr(g g* P) over ||g||_u <= c for P >= 0, returns (value, g)'''
    n = P.shape[0]
    w, V = scipy.linalg.eigh(hermitian_part(P))
    w = numpy.maximum(w, 0)
    if w.max() <= 0:
        return 0.0, identity_point(n, u, c)
    if math.isinf(u):
        return c * c * float(w.sum()), c * numpy.eye(n, dtype=complex)
    if u == 2:
        top = V[:, -1:]
        return c * c * float(w[-1]), c * (top @ top.conj().T)
    r = u / (u - 2.0)
    norm_r = schatten_from_singular(w, r)
    g = (V * (c * (w / norm_r) ** ((r - 1) / 2))) @ V.conj().T
    return c * c * norm_r, g

def _improved(new, old):
    return new > old * (1 + 1e-13) + 1e-300

def family_sup(xs, u, v, seed=0, restarts=8, maxiter=500, debug=None):
    '''sup (sum_k ||alpha x_k beta||_2^2)^{1/2} over the unit balls of S_u, S_v'''
    check_exponent(u, 'u', 2)
    check_exponent(v, 'v', 2)
    xs = [as_matrix(x) for x in xs]
    if not xs:
        return OptimizerReport(0.0, seed=seed)
    r, c = xs[0].shape
    for x in xs:
        if x.shape != (r, c):
            raise ValueError('family members must share their shape')
    if all(not numpy.any(x) for x in xs):
        return OptimizerReport(0.0, seed=seed)

    rng = rng_from(seed)
    starts = [identity_point(c, v)] + [ball_point(rng, c, v) for i in range(restarts)]

    def objective(alpha, beta):
        return math.sqrt(sum(numpy.linalg.norm(alpha @ x @ beta) ** 2 for x in xs))

    best, best_point, iterations, converged = -1.0, None, 0, True
    for beta in starts:
        current = 0.0
        for it in range(maxiter):
            bb = beta @ beta.conj().T
            P = sum(x @ bb @ x.conj().T for x in xs)
            _, alpha = best_square_factor(P, u)
            aa = alpha.conj().T @ alpha
            Q = sum(x.conj().T @ aa @ x for x in xs)
            _, beta = best_square_factor(Q, v)
            value = objective(alpha, beta)
            iterations += 1
            if not _improved(value, current):
                current = max(current, value)
                break
            current = value
        else:
            converged = False
        if debug:
            debug('family_sup restart', current)
        if current > best:
            best, best_point = current, (alpha, beta)
    return OptimizerReport(best, iterations=iterations, restarts=len(starts),
                           converged=converged, seed=seed, lower=best, point=best_point)

def mixed_theta_norm(xs, theta, p, d=None, seed=0, restarts=8, debug=None):
    '''family_sup with (1/u, 1/v) = (theta/q, (1 - theta)/q) and 1/2 = 1/p + 1/q'''
    if not 0 <= theta <= 1:
        raise ValueError('theta outside [0, 1]')
    check_exponent(p, 'p', 2)
    iq = 0.5 - inv(p)
    u, v = from_inverse(theta * iq), from_inverse((1 - theta) * iq)
    if d is not None:
        xs = [kosaki_embed(x, d, p) for x in xs]
    return family_sup(xs, u, v, seed=seed, restarts=restarts, debug=debug)

def row_column_bounds(xs):
    row = math.sqrt(opnorm(sum(x @ x.conj().T for x in xs)))
    col = math.sqrt(opnorm(sum(x.conj().T @ x for x in xs)))
    return row, col

def oh_closed_form(xs):
    '''||sum_k x_k (x) conj(x_k)||^{1/2}, the M_m(OH_n) norm of (x_k)'''
    xs = [as_matrix(x) for x in xs]
    if not xs:
        return 0.0
    if any(x.shape != xs[0].shape for x in xs):
        raise ValueError('family members must share their shape')
    return math.sqrt(opnorm(sum(numpy.kron(x, x.conj()) for x in xs)))

def oh_valued_norm(xs, d=None, p=inf, seed=0, restarts=16, maxiter=2000, debug=None):
    '''sup over alpha >= 0, ||alpha||_2 <= 1 of ||sum_k x_k* alpha x_k||_2^{1/2}

    at p = inf the embedding d^{1/2p} x d^{1/2p} is the identity, so a
    density only has its dimension checked'''
    xs = [as_matrix(x) for x in xs]
    if not xs:
        return OptimizerReport(0.0, seed=seed)
    if d is not None:
        if xs[0].shape != (d.dim, d.dim):
            raise ValueError('dimension mismatch between family and density')
        if not math.isinf(p):
            # L_p(OH) = [C_p, R_p]_{1/2}
            return mixed_theta_norm(xs, 0.5, p, d=d, seed=seed, restarts=restarts, debug=debug)
    r = xs[0].shape[0]
    for x in xs:
        if x.shape != xs[0].shape:
            raise ValueError('family members must share their shape')

    def image(alpha):
        return sum(x.conj().T @ alpha @ x for x in xs)

    def gradient(Y):
        return hermitian_part(sum(x @ Y @ x.conj().T for x in xs))

    candidates = [numpy.eye(r, dtype=complex) / math.sqrt(r)]
    for x in xs:
        xx = x @ x.conj().T
        nrm = numpy.linalg.norm(xx)
        if nrm > 0:
            candidates.append(xx / nrm)
    lower = max(numpy.linalg.norm(image(alpha)) for alpha in candidates)

    rng = rng_from(seed)
    starts = list(candidates)
    while len(starts) < max(restarts, len(candidates) + 1):
        w = random_psd(r, rng)
        starts.append(w / numpy.linalg.norm(w))

    best, iterations, converged, best_alpha = 0.0, 0, True, None
    for alpha in starts:
        current = numpy.linalg.norm(image(alpha))
        for it in range(maxiter):
            G = gradient(image(alpha))
            nrm = numpy.linalg.norm(G)
            iterations += 1
            if nrm <= 0:
                break
            candidate = G / nrm
            value = numpy.linalg.norm(image(candidate))
            if not _improved(value, current):
                break
            alpha, current = candidate, value
        else:
            converged = False
        if current > best:
            best, best_alpha = current, alpha
    row, col = row_column_bounds(xs)
    if debug:
        debug('oh_valued_norm', math.sqrt(best), 'bounds', math.sqrt(lower), math.sqrt(row * col))
    return OptimizerReport(math.sqrt(best), iterations=iterations, restarts=len(starts),
                           converged=converged, seed=seed, lower=math.sqrt(lower),
                           upper=math.sqrt(row * col), point=best_alpha)

def row_blocks(W, m, n):
    '''R_k = [W_k1 ... W_kn], m x mn'''
    B = blocks(W, m, n)
    return [numpy.hstack([B[k, l] for l in range(n)]) for k in range(n)]

def _conditional_setup(x, spec):
    d = spec.density
    if d is None:
        raise ValueError('conditional norm needs a density for the inner algebra')
    p, u, v = spec.p, spec.u, spec.v
    if p is None or u is None or v is None:
        raise ValueError('conditional norm needs p, u and v')
    if not in_solid_k(u, v, p):
        raise ValueError('indices outside K')
    sub = spec.subalgebra or Scalars()
    x = as_matrix(x)
    n = d.dim
    m = sub.m
    if x.shape != (m * n, m * n):
        raise ValueError('dimension mismatch: expected %d x %d' % (m * n, m * n))
    left = numpy.kron(numpy.eye(m), frac_power(d, inv(u) + inv(p) / 2))
    right = numpy.kron(numpy.eye(m), frac_power(d, inv(p) / 2 + inv(v)))
    Y = left @ x @ right
    s = from_inverse(inv(u) + inv(p) + inv(v))
    cu, cv = d.mass ** -inv(u), d.mass ** -inv(v)
    return Y, s, m, n, cu, cv

def conditional_lp_norm(x, spec, seed=0, restarts=8, maxiter=500, debug=None):
    '''sup ||(a (x) 1) D^{1/u} X_p D^{1/v} (b (x) 1)||_s over the unit balls of L_u(N), L_v(N)'''
    Y, s, m, n, cu, cv = _conditional_setup(x, spec)
    u, v = spec.u, spec.v

    if math.isinf(u) and math.isinf(v):
        return OptimizerReport(cu * cv * schatten_norm(Y, s), seed=seed)

    if not numpy.any(Y):
        return OptimizerReport(0.0, seed=seed)

    if abs(inv(s) - 0.5) < 1e-12:
        return _conditional_square(Y, m, n, u, v, cu, cv, seed, restarts, maxiter, debug)

    # ||(a (x) 1) Y||_4 = ||Y* (a*a (x) 1) Y||_2^{1/2}, a PSD ball problem
    if abs(inv(s) - 0.25) < 1e-12 and math.isinf(v) and u == 4:
        report = oh_valued_norm(row_blocks(Y, m, n), seed=seed, restarts=max(restarts, 16), debug=debug)
        report.value *= cu * cv
        return report
    if abs(inv(s) - 0.25) < 1e-12 and math.isinf(u) and v == 4:
        report = oh_valued_norm(row_blocks(Y.conj().T, m, n), seed=seed, restarts=max(restarts, 16), debug=debug)
        report.value *= cu * cv
        return report

    return _conditional_ascent(Y, s, m, n, u, v, cu, cv, seed, restarts, maxiter, debug)

def _conditional_square(Y, m, n, u, v, cu, cv, seed, restarts, maxiter, debug):
    rng = rng_from(seed)
    starts = [identity_point(m, v)] + [ball_point(rng, m, v) for i in range(restarts)]
    Ys = Y.conj().T
    best, iterations, converged = -1.0, 0, True
    for b in starts:
        current = 0.0
        for it in range(maxiter):
            B = Y @ lift(b, n)
            _, a = best_square_factor(partial_trace(B @ B.conj().T, m, n), u)
            A = lift(a, n) @ Y
            _, b = best_square_factor(partial_trace(A.conj().T @ A, m, n), v)
            value = numpy.linalg.norm(A @ lift(b, n))
            iterations += 1
            if not _improved(value, current):
                current = max(current, value)
                break
            current = value
        else:
            converged = False
        if debug:
            debug('conditional restart', current)
        best = max(best, current)
    return OptimizerReport(cu * cv * best, iterations=iterations, restarts=len(starts),
                           converged=converged, seed=seed)

def _schatten_gradient(Z, s):
    U, S, Vh = scipy.linalg.svd(Z, full_matrices=False)
    if s == 1:
        T = (S > 0).astype(float)
    else:
        T = numpy.where(S > 0, S, 0) ** (s - 1)
    return (U * T) @ Vh

def _conditional_ascent(Y, s, m, n, u, v, cu, cv, seed, restarts, maxiter, debug):
    rng = rng_from(seed)
    starts = [(identity_point(m, u, cu), identity_point(m, v, cv))]
    for i in range(restarts):
        starts.append((ball_point(rng, m, u, cu), ball_point(rng, m, v, cv)))

    def objective(a, b):
        return schatten_norm(lift(a, n) @ Y @ lift(b, n), s)

    best, iterations, converged = -1.0, 0, True
    for a, b in starts:
        current = objective(a, b)
        for it in range(maxiter):
            # one norming step per side, each never decreases the convex objective
            if not math.isinf(u):
                B = Y @ lift(b, n)
                W = _schatten_gradient(lift(a, n) @ B, s)
                step = norming_point(partial_trace(W @ B.conj().T, m, n), u, cu)
                if step is not None:
                    a = step
            if not math.isinf(v):
                A = lift(a, n) @ Y
                W = _schatten_gradient(A @ lift(b, n), s)
                step = norming_point(partial_trace(A.conj().T @ W, m, n), v, cv)
                if step is not None:
                    b = step
            value = objective(a, b)
            iterations += 1
            if not _improved(value, current):
                current = max(current, value)
                break
            current = value
        else:
            converged = False
        if debug:
            debug('conditional ascent restart', current)
        best = max(best, current)
    return OptimizerReport(best, iterations=iterations, restarts=len(starts),
                           converged=converged, seed=seed)

def _row_column_setup(x, d, p, m):
    check_exponent(p, 'p', 2)
    x = as_matrix(x)
    n = d.dim
    if x.shape != (m * n, m * n):
        raise ValueError('dimension mismatch')
    iq = 0.5 - inv(p)
    return x, n, iq

def row_norm(x, d, p, m=1):
    '''||x||_{L_p^r} conditional on M_m (x) 1, equal to the (q, inf) conditional norm'''
    x, n, iq = _row_column_setup(x, d, p, m)
    Y = numpy.kron(numpy.eye(m), frac_power(d, iq + inv(p) / 2)) @ x @ numpy.kron(numpy.eye(m), frac_power(d, inv(p) / 2))
    P = hermitian_part(partial_trace(Y @ Y.conj().T, m, n))
    return d.mass ** -iq * math.sqrt(schatten_norm(P, from_inverse(2 * inv(p))))

def column_norm(x, d, p, m=1):
    x, n, iq = _row_column_setup(x, d, p, m)
    Y = numpy.kron(numpy.eye(m), frac_power(d, inv(p) / 2)) @ x @ numpy.kron(numpy.eye(m), frac_power(d, inv(p) / 2 + iq))
    P = hermitian_part(partial_trace(Y.conj().T @ Y, m, n))
    return d.mass ** -iq * math.sqrt(schatten_norm(P, from_inverse(2 * inv(p))))

def rc_square_norm(xs, d, p, side='row'):
    '''||(sum x_k x_k*)^{1/2}||_p (row) or ||(sum x_k* x_k)^{1/2}||_p (column)
    of the embedded elements d^{1/2p} x_k d^{1/2p}'''
    check_exponent(p)
    if side not in ('row', 'column'):
        raise ValueError('unknown side %s' % side)
    xs = [as_matrix(x) for x in xs]
    if not xs:
        return 0.0
    if any(x.shape != xs[0].shape for x in xs):
        raise ValueError('square function needs elements of equal shape')
    P = 0
    for x in xs:
        X = kosaki_embed(x, d, p)
        P = P + (X @ X.conj().T if side == 'row' else X.conj().T @ X)
    lam = numpy.clip(scipy.linalg.eigvalsh(hermitian_part(P)), 0, None)
    return schatten_from_singular(numpy.sqrt(lam), p)

class WeightedSchatten(object):
    '''component y -> weight ||left y right||_p of a sum norm'''
    def __init__(self, p, left=None, right=None, weight=1.0, name=None):
        self.p = check_exponent(p)
        self.left = None if left is None else as_matrix(left)
        self.right = None if right is None else as_matrix(right)
        if not weight > 0:
            raise ValueError('component weights must be positive')
        self.weight = float(weight)
        self.name = name or 'S_%s' % pyjson.exponent_to_json(p)
        self._left_dual = self._right_dual = None

    def apply(self, y):
        if self.left is not None:
            y = self.left @ y
        if self.right is not None:
            y = y @ self.right
        return y

    # entry permutations keep the trace pairing, the norm is taken of shaped(W)
    def shaped(self, W):
        return W

    def unshaped(self, G):
        return G

    def value(self, y):
        return schatten_norm(self.shaped(self.apply(y)), self.p)

    def dual(self, z):
        if self.left is not None:
            if self._left_dual is None:
                self._left_dual = scipy.linalg.inv(self.left).conj().T
            z = self._left_dual @ z
        if self.right is not None:
            if self._right_dual is None:
                self._right_dual = scipy.linalg.inv(self.right).conj().T
            z = z @ self._right_dual
        return schatten_norm(self.shaped(z), conjugate(self.p))

    def smooth(self, y, eps):
        '''smoothed norm (sum (s^2 + eps^2)^{p/2})^{1/p} and its gradient in y'''
        W = self.apply(y)
        value, G = smooth_schatten(self.shaped(W), self.p, eps)
        G = self.unshaped(G)
        if self.left is not None:
            G = self.left.conj().T @ G
        if self.right is not None:
            G = G @ self.right.conj().T
        return value, G

class ConditionalSquare(WeightedSchatten):
    '''component y -> weight ||tr_n(W W*)^{1/2}||_p (row) or ||tr_n(W* W)^{1/2}||_p (column)
    with W = left y right on C^m (x) C^n

    tr_n(W W*) = R R* for the m x mn^2 matrix R[i, (a, c)] = W[(i, a), c],
    the column side uses C[(r, b), j] = W[r, (j, b)]'''
    def __init__(self, p, m, n, side='row', left=None, right=None, weight=1.0, name=None):
        if side not in ('row', 'column'):
            raise ValueError('unknown side %s' % side)
        WeightedSchatten.__init__(self, p, left, right, weight,
                                  name or '%s_%s' % (side, pyjson.exponent_to_json(p)))
        self.m, self.n, self.side = int(m), int(n), side

    def shaped(self, W):
        m, n = self.m, self.n
        if W.shape != (m * n, m * n):
            raise ValueError('dimension mismatch: expected %d x %d' % (m * n, m * n))
        if self.side == 'row':
            return W.reshape(m, n * m * n)
        return W.reshape(m * n, m, n).transpose(0, 2, 1).reshape(m * n * n, m)

    def unshaped(self, G):
        m, n = self.m, self.n
        if self.side == 'row':
            return G.reshape(m * n, m * n)
        return G.reshape(m * n, n, m).transpose(0, 2, 1).reshape(m * n, m * n)

def smooth_schatten(W, p, eps, pmax=32.0):
    U, S, Vh = scipy.linalg.svd(W, full_matrices=False)
    pe = pmax if math.isinf(p) else min(p, pmax)
    t = numpy.sqrt(S * S + eps * eps)
    top = t.max() if t.size else 0.0
    if top <= 0:
        return 0.0, numpy.zeros_like(W)
    F = top * numpy.sum((t / top) ** pe) ** (1.0 / pe)
    # t = 0 only where s = 0, those directions carry no gradient
    ratio = numpy.where(t > 0, t / F, 1)
    coeff = S * ratio ** (pe - 2) / F
    return float(F), (U * coeff) @ Vh

def pack_complex(ys):
    flat = numpy.concatenate([y.ravel() for y in ys]) if ys else numpy.zeros(0, dtype=complex)
    return numpy.concatenate([flat.real, flat.imag])

def unpack_complex(z, count, shape):
    size = shape[0] * shape[1]
    half = z.size // 2
    flat = z[:half] + 1j * z[half:]
    return [flat[i * size:(i + 1) * size].reshape(shape) for i in range(count)]

def inner(z, x):
    return float(numpy.real(numpy.vdot(z, x)))

def combined(values, combine):
    values = numpy.asarray(values, dtype=float)
    if combine == 'l1':
        return float(values.sum())
    return float(math.sqrt(numpy.sum(values * values)))

def dual_bound(x, components, combine, z):
    '''Re<z, x> / ||z||_*, a lower bound for the sum norm of x'''
    duals = [c.dual(z) / c.weight for c in components]
    if combine == 'l1':
        denominator = max(duals)
    else:
        denominator = math.sqrt(sum(t * t for t in duals))
    if denominator <= 0:
        return 0.0
    return inner(z, x) / denominator

def certificate_bound(x, components, ys, combine, eps):
    '''best dual lower bound among the component gradients at x = sum ys and their average'''
    certificates = []
    for c, y in zip(components, ys):
        val, g = c.smooth(y, eps)
        if val <= 0 or not numpy.any(g):
            continue
        certificates.append(c.weight * g if combine == 'l1' else c.weight ** 2 * val * g)
    if certificates:
        certificates.append(sum(certificates) / len(certificates))
    lower = 0.0
    for zc in certificates:
        lower = max(lower, dual_bound(x, components, combine, zc))
    return lower

def sum_norm(x, components, combine='l1', seed=0, tol=1e-4, maxiter=3000,
             eps_schedule=(1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8), debug=None):
    '''inf over x = sum_i x_i of the l1 (or l2) combination of weight_i norm_i(x_i)'''
    x = as_matrix(x)
    if combine not in ('l1', 'l2'):
        raise ValueError('combine must be l1 or l2')
    if not components:
        raise ValueError('sum norm needs at least one component')
    K = len(components)

    def exact(ys):
        return combined([c.weight * c.value(y) for c, y in zip(components, ys)], combine)

    if not numpy.any(x):
        return OptimizerReport(0.0, duality_gap=0.0, seed=seed, lower=0.0, upper=0.0)
    if K == 1:
        value = exact([x])
        return OptimizerReport(value, duality_gap=0.0, seed=seed, lower=value, upper=value, point=[x])

    shape = x.shape
    scale = numpy.linalg.norm(x)

    def decomposition(z):
        rest = unpack_complex(z, K - 1, shape)
        return [x - sum(rest)] + rest

    def objective(z, eps):
        ys = decomposition(z)
        parts = [c.smooth(y, eps) for c, y in zip(components, ys)]
        if combine == 'l1':
            f = sum(c.weight * val for c, (val, g) in zip(components, parts))
            grads = [c.weight * g for c, (val, g) in zip(components, parts)]
        else:
            f = 0.5 * sum((c.weight * val) ** 2 for c, (val, g) in zip(components, parts))
            grads = [c.weight ** 2 * val * g for c, (val, g) in zip(components, parts)]
        return f, pack_complex([g - grads[0] for g in grads[1:]])

    z = pack_complex([x / K for i in range(K - 1)])
    best_ys = decomposition(z)
    best = exact(best_ys)
    iterations = 0
    for eps in eps_schedule:
        result = scipy.optimize.minimize(objective, z, args=(eps * scale,), jac=True, method='L-BFGS-B',
                                         options={'maxiter': maxiter, 'ftol': 1e-16, 'gtol': 1e-14 * max(scale, 1)})
        z = result.x
        iterations += int(result.nit)
        ys = decomposition(z)
        value = exact(ys)
        if debug:
            debug('sum_norm eps', eps, 'value', value)
        if value < best:
            best, best_ys = value, ys

    # drop nearly inactive components into the others when that helps
    for i in range(K):
        if numpy.linalg.norm(best_ys[i]) > 1e-6 * scale:
            continue
        for j in range(K):
            if j == i:
                continue
            trial = list(best_ys)
            trial[j] = trial[j] + trial[i]
            trial[i] = numpy.zeros(shape, dtype=complex)
            value = exact(trial)
            if value < best:
                best, best_ys = value, trial

    lower = certificate_bound(x, components, best_ys, combine, eps_schedule[-1] * scale)
    gap = best - lower
    converged = gap <= tol * max(best, 1e-300)
    if not converged and debug:
        debug('sum_norm did not close the duality gap', gap)
    return OptimizerReport(best, iterations=iterations, duality_gap=gap, converged=converged,
                           seed=seed, lower=lower, upper=best, point=best_ys)
