#!/usr/bin/env python
#
#   Copyright (C) 2026 nclp developers
#
# This Program is free software; you can redistribute it and/or
# modify it under the terms of the GNU General Public
# License as published by the Free Software Foundation; either
# version 3 of the License, or (at your option) any later version.

import sys, math
import numpy

try:
    import ujson
    _loads, _dumps = ujson.loads, ujson.dumps
except Exception as e:
    print('WARNING: python ujson library failed, falling back to json', e, file=sys.stderr)
    import json
    _loads, _dumps = json.loads, json.dumps

def loads(text):
    return _loads(text)

# reports must be byte stable, so keys are always sorted
def dumps(obj, indent=0):
    if indent:
        return _dumps(obj, sort_keys=True, indent=indent)
    return _dumps(obj, sort_keys=True)

def exponent_to_json(p):
    if p is None:
        return None
    if math.isinf(p):
        return 'inf'
    return float(p)

def exponent_from_json(value):
    if value is None:
        return None
    if isinstance(value, str):
        text = value.strip().lower()
        if text in ('inf', 'infinity', '∞'):
            return math.inf
        value = text
    try:
        p = float(value)
    except (TypeError, ValueError):
        raise ValueError('bad exponent ' + repr(value))
    if math.isnan(p):
        raise ValueError('bad exponent nan')
    return p

def matrix_to_json(x):
    x = numpy.asarray(x, dtype=complex)
    if x.ndim != 2:
        raise ValueError('matrix must be two dimensional')
    return {'rows': int(x.shape[0]), 'cols': int(x.shape[1]),
            're': [[float(v) for v in row] for row in x.real],
            'im': [[float(v) for v in row] for row in x.imag]}

def matrix_from_json(data):
    try:
        rows, cols = int(data['rows']), int(data['cols'])
        re = numpy.array(data['re'], dtype=float)
        im = numpy.array(data['im'], dtype=float) if 'im' in data else numpy.zeros_like(re)
    except (KeyError, TypeError, ValueError) as e:
        raise ValueError('malformed matrix: ' + str(e))
    if re.shape != (rows, cols) or im.shape != (rows, cols):
        raise ValueError('malformed matrix: shape %s does not match %dx%d' % (re.shape, rows, cols))
    x = re + 1j * im
    if not numpy.all(numpy.isfinite(x)):
        raise ValueError('malformed matrix: non finite entries')
    return x

def to_plain(obj):
    '''convert numpy scalars, arrays and infinities to json friendly values'''
    if isinstance(obj, dict):
        return dict((str(k), to_plain(v)) for k, v in obj.items())
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    if isinstance(obj, numpy.ndarray):
        if numpy.iscomplexobj(obj):
            return matrix_to_json(obj) if obj.ndim == 2 else [to_plain(v) for v in obj]
        return to_plain(obj.tolist())
    if isinstance(obj, (bool, numpy.bool_)):
        return bool(obj)
    if isinstance(obj, (int, numpy.integer)):
        return int(obj)
    if isinstance(obj, (complex, numpy.complexfloating)):
        return {'re': to_plain(float(obj.real)), 'im': to_plain(float(obj.imag))}
    if isinstance(obj, (float, numpy.floating)):
        obj = float(obj)
        if math.isinf(obj):
            return 'inf' if obj > 0 else '-inf'
        if math.isnan(obj):
            return 'nan'
        return obj
    return obj
