#!/usr/bin/env python
#
#   Copyright (C) 2026 nclp developers
#
# This Program is free software; you can redistribute it and/or
# modify it under the terms of the GNU General Public
# License as published by the Free Software Foundation; either
# version 3 of the License, or (at your option) any later version.

import multiprocessing
from nclp.matcore import named_stream
from nclp import pyjson

def run_check(args):
    '''runs one check with its own random stream, never raises'''
    name, check, seed, tol = args
    rng = named_stream(seed, name)
    try:
        row = check(rng, tol)
    except Exception as e:
        row = {'passed': False, 'error': '%s: %s' % (type(e).__name__, e)}
    row = pyjson.to_plain(row)
    row['check'] = name
    row['passed'] = bool(row.get('passed'))
    return row

class VerificationSuite(object):
    def __init__(self, name, info=''):
        super(VerificationSuite, self).__init__()
        self.name = name
        self.info = info
        self.checks = {}

    def register(self, name, check):
        if name in self.checks:
            raise ValueError('duplicate check ' + name)
        self.checks[name] = check
        return check

    def check(self, name):
        '''decorator form of register'''
        def decorate(fn):
            return self.register(name, fn)
        return decorate

    def run(self, seed=0, tol=1e-8, jobs=1):
        names = sorted(self.checks)
        args = [(self.name + '.' + name, self.checks[name], seed, tol) for name in names]
        if jobs > 1 and len(args) > 1:
            with multiprocessing.Pool(min(jobs, len(args))) as pool:
                rows = pool.map(run_check, args)
        else:
            rows = list(map(run_check, args))
        return {'suite': self.name, 'seed': seed, 'tol': tol, 'checks': rows,
                'passed': all(row['passed'] for row in rows)}
