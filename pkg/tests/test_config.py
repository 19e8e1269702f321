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
import pytest
from numpy.testing import assert_allclose

from nclp import pyjson, values, config, suites
from nclp.suites.suite import VerificationSuite, run_check

def test_exponents_in_json():
    assert pyjson.exponent_to_json(math.inf) == 'inf'
    assert pyjson.exponent_from_json('Infinity') == math.inf
    assert pyjson.exponent_from_json('2.5') == 2.5
    for bad in ('two', 'nan', [1]):
        with pytest.raises(ValueError):
            pyjson.exponent_from_json(bad)

def test_matrices_in_json():
    x = numpy.array([[1 + 2j, 0], [3, -1j]])
    data = pyjson.loads(pyjson.dumps(pyjson.matrix_to_json(x)))
    assert_allclose(pyjson.matrix_from_json(data), x)
    assert_allclose(pyjson.matrix_from_json({'rows': 1, 'cols': 2, 're': [[1, 2]]}), [[1, 2]])
    for bad in ({'rows': 2, 'cols': 2, 're': [[1, 2]]}, {'re': [[1]]},
                {'rows': 1, 'cols': 1, 're': [[float('inf')]]}):
        with pytest.raises(ValueError, match='malformed'):
            pyjson.matrix_from_json(bad)

def test_dumps_sorts_keys():
    assert pyjson.dumps({'b': 1, 'a': 2}) == '{"a":2,"b":1}'
    plain = pyjson.to_plain({'v': numpy.float64(1.5), 'n': numpy.int64(2), 'ok': numpy.bool_(True),
                             'z': 1j, 'p': math.inf})
    assert plain == {'v': 1.5, 'n': 2, 'ok': True, 'z': {'re': 0.0, 'im': 1.0}, 'p': 'inf'}

def test_run_config_properties(capsys):
    cfg = values.RunConfig()
    assert cfg.seed.value == 0 and cfg.format.value == 'json'
    assert cfg.set('seed', '12') and cfg.seed.value == 12
    assert not cfg.set('jobs', 0)
    assert not cfg.set('format', 'xml')
    assert not cfg.set('tol', 1.0)
    assert not cfg.set('unknown', 1)
    names = [v.name for v in cfg.persistent_values()]
    assert names == sorted(names)
    assert 'seed' in names and 'input' not in names

def test_store_and_load(isolated_settings):
    cfg = values.RunConfig()
    cfg.set('seed', 7)
    path = config.store(cfg)
    cfg.set('seed', 8)
    config.store(cfg)
    assert (isolated_settings / 'nclp.conf.bak').exists()
    loaded = values.RunConfig()
    assert config.load(loaded)['seed'] == 8
    assert loaded.seed.value == 8

def test_load_falls_back_to_backup(isolated_settings, capsys):
    cfg = values.RunConfig()
    cfg.set('seed', 3)
    config.store(cfg)
    config.store(cfg)
    (isolated_settings / 'nclp.conf').write_text('seed\n')
    loaded = values.RunConfig()
    config.load(loaded)
    assert loaded.seed.value == 3
    assert 'failed to load' in capsys.readouterr().err

def test_missing_config_is_empty():
    assert config.load(values.RunConfig()) == {}

def test_suite_registry():
    assert suites.names() == ['closed-forms', 'copies', 'graphs', 'interpolation']
    assert suites.find('graphs').name == 'graphs'
    with pytest.raises(ValueError, match='unknown suite'):
        suites.find('nonexistent')

def test_suite_runner_catches_errors():
    suite = VerificationSuite('sample')

    @suite.check('fine')
    def fine(rng, tol):
        return {'value': numpy.float64(rng.random()), 'passed': True}

    @suite.check('broken')
    def broken(rng, tol):
        raise ValueError('no closed form')

    with pytest.raises(ValueError):
        suite.register('fine', fine)
    report = suite.run(seed=1)
    assert [row['check'] for row in report['checks']] == ['sample.broken', 'sample.fine']
    assert not report['passed']
    assert 'no closed form' in report['checks'][0]['error']
    assert suite.run(seed=1) == report
    assert run_check(('sample.fine', fine, 1, 1e-8))['passed']
