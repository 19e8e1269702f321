#!/usr/bin/env python
#
#   Copyright (C) 2026 nclp developers
#
# This Program is free software; you can redistribute it and/or
# modify it under the terms of the GNU General Public
# License as published by the Free Software Foundation; either
# version 3 of the License, or (at your option) any later version.

# dense complex matrices, densities and the conditional expectation
# onto the left factor of M_m (x) M_n

import math, functools
import numpy, scipy.linalg

hermitian_tolerance = 1e-12
clip_tolerance = 1e-12
mass_tolerance = 1e-10

def as_matrix(x, name='matrix'):
    x = numpy.array(x, dtype=complex)
    if x.ndim == 0:
        x = x.reshape(1, 1)
    if x.ndim != 2:
        raise ValueError(name + ' must be two dimensional')
    if not numpy.all(numpy.isfinite(x)):
        raise ValueError(name + ' has non finite entries')
    return x

def opnorm(x):
    if x.size == 0:
        return 0.0
    return float(scipy.linalg.svdvals(x)[0])

def hermitian_part(x):
    return (x + x.conj().T) / 2

def rng_from(seed):
    if isinstance(seed, numpy.random.Generator):
        return seed
    if isinstance(seed, numpy.random.SeedSequence):
        return numpy.random.default_rng(seed)
    return numpy.random.default_rng(int(seed) % (1 << 64))

def named_stream(seed, name):
    '''independent generator for one named check, stable when other checks are added'''
    key = tuple(ord(c) for c in name)
    return numpy.random.default_rng(numpy.random.SeedSequence(int(seed) % (1 << 64), spawn_key=key))

class Density(object):
    '''positive matrix with declared total mass, a state when the mass is 1'''
    def __init__(self, matrix, mass=None):
        d = as_matrix(matrix, 'density')
        if d.shape[0] != d.shape[1]:
            raise ValueError('density must be square')
        scale = max(opnorm(d), 1e-300)
        if numpy.linalg.norm(d - d.conj().T, 2) > hermitian_tolerance * scale:
            raise ValueError('density is not hermitian')
        w, v = scipy.linalg.eigh(hermitian_part(d))
        if w.size and w.min() < -clip_tolerance * scale:
            raise ValueError('density has negative eigenvalue %g' % w.min())
        w = numpy.maximum(w, 0)
        self.eigenvalues, self.eigenvectors = w, v
        self.matrix = (v * w) @ v.conj().T
        trace = float(numpy.sum(w))
        if mass is None:
            mass = trace
        if not mass > 0:
            raise ValueError('density mass must be positive')
        if abs(trace - mass) > mass_tolerance * mass:
            raise ValueError('density trace %.12g does not match mass %.12g' % (trace, mass))
        self.mass = float(mass)

    @property
    def dim(self):
        return self.matrix.shape[0]

    def is_state(self):
        return abs(self.mass - 1) <= mass_tolerance

    def invertible(self):
        w = self.eigenvalues
        return w.size > 0 and w.min() > 1e-14 * max(w.max(), 1e-300)

    def power(self, a):
        return frac_power(self, a)

    def state(self):
        return Density(self.matrix / self.mass, 1.0)

    def scaled(self, mass):
        return Density(self.matrix * (mass / self.mass), mass)

    def expect(self, x):
        '''the functional x -> tr(d x)'''
        return complex(numpy.trace(self.matrix @ as_matrix(x)))

    @staticmethod
    def diagonal(values, mass=None):
        return Density(numpy.diag(numpy.asarray(values, dtype=float)), mass)

    @staticmethod
    def uniform(n):
        return Density(numpy.eye(n) / n, 1.0)

def frac_power(d, a):
    a = float(a)
    w, v = d.eigenvalues, d.eigenvectors
    if a < 0:
        if not d.invertible():
            raise ValueError('non-invertible density')
        wa = w ** a
    elif a == 0:
        wa = numpy.ones_like(w)
    else:
        wa = numpy.where(w > 0, w, 0) ** a
    return (v * wa) @ v.conj().T

def imaginary_power(d, t):
    '''d^{it}, the unitary part of the analytic family d^z'''
    if not d.invertible():
        raise ValueError('non-invertible density')
    w, v = d.eigenvalues, d.eigenvectors
    return (v * numpy.exp(1j * t * numpy.log(w))) @ v.conj().T

def split_dims(x, n):
    N = x.shape[0]
    if x.shape[1] != N or N % n:
        raise ValueError('dimension mismatch: %s is not a square multiple of %d' % (x.shape, n))
    return N // n

def cond_expect(x, d):
    '''E = id (x) phi on M_m (x) M_n, entrywise tr(d x_ij) on the n x n blocks'''
    x = as_matrix(x)
    if not d.is_state():
        raise ValueError('conditional expectation needs a state')
    n = d.dim
    m = split_dims(x, n)
    blocks = x.reshape(m, n, m, n)
    return numpy.einsum('iajb,ba->ij', blocks, d.matrix)

def partial_trace(x, m, n):
    x = as_matrix(x)
    if x.shape != (m * n, m * n):
        raise ValueError('dimension mismatch')
    return numpy.einsum('iaja->ij', x.reshape(m, n, m, n))

def lift(a, n):
    '''a -> a (x) 1_n'''
    return numpy.kron(as_matrix(a), numpy.eye(n))

def ambient_density(d, m):
    '''1_m (x) d, the density of tr_m (x) psi'''
    return Density(numpy.kron(numpy.eye(m), d.matrix), m * d.mass)

def blocks(x, m, n):
    '''x = sum_kl x_kl (x) e_kl with x_kl in M_m, returned as array [k, l, :, :]'''
    return as_matrix(x).reshape(m, n, m, n).transpose(1, 3, 0, 2)

def tensor_power(xs):
    if not len(xs):
        raise ValueError('empty tensor product')
    return functools.reduce(numpy.kron, [as_matrix(x) for x in xs])

def direct_sum(a, b):
    return scipy.linalg.block_diag(as_matrix(a), as_matrix(b))

def tensor_density(ds):
    if not len(ds):
        raise ValueError('empty tensor product')
    mass = 1.0
    for d in ds:
        mass *= d.mass
    return Density(tensor_power([d.matrix for d in ds]), mass)

def random_matrix(m, n, seed=0):
    rng = rng_from(seed)
    return (rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))) / math.sqrt(2)

def random_psd(n, seed=0):
    g = random_matrix(n, n, seed)
    return g @ g.conj().T

def random_state(n, seed=0):
    w = random_psd(n, seed)
    return Density(w / numpy.trace(w).real, 1.0)

def random_unitary(n, seed=0):
    q, r = scipy.linalg.qr(random_matrix(n, n, seed))
    return q * (numpy.diag(r) / numpy.abs(numpy.diag(r)))

class SubalgebraSpec(object):
    '''N = C 1 (m = 1) or N = M_m (x) 1 inside M_m (x) M_n'''
    def __init__(self, m=1):
        m = int(m)
        if m < 1:
            raise ValueError('subalgebra level must be at least 1')
        self.m = m
        self.kind = 'Scalars' if m == 1 else 'LeftMatrixFactor'

    def check(self, dim):
        if dim % self.m:
            raise ValueError('ambient dimension %d is not divisible by %d' % (dim, self.m))
        return dim // self.m

    def to_json(self):
        return {'kind': self.kind, 'm': self.m}

    @staticmethod
    def from_json(data):
        if data is None:
            return Scalars()
        kind = data.get('kind', 'Scalars')
        if kind == 'Scalars':
            return Scalars()
        if kind != 'LeftMatrixFactor':
            raise ValueError('unknown subalgebra ' + str(kind))
        return LeftMatrixFactor(data['m'])

    def __repr__(self):
        return 'Scalars()' if self.m == 1 else 'LeftMatrixFactor(%d)' % self.m

def Scalars():
    return SubalgebraSpec(1)

def LeftMatrixFactor(m):
    return SubalgebraSpec(m)
