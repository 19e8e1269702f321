#!/usr/bin/env python
#
#   Copyright (C) 2026 nclp developers
#
# This Program is free software; you can redistribute it and/or
# modify it under the terms of the GNU General Public
# License as published by the Free Software Foundation; either
# version 3 of the License, or (at your option) any later version.

import sys
from nclp import pyjson

class Value(object):
    def __init__(self, name, initial, **kwargs):
        self.name = name
        self.initial = initial
        self.value = initial

        self.info = {'type': 'Value'}
        # persistent values are stored in the config file
        if 'persistent' in kwargs and kwargs['persistent']:
            self.info['persistent'] = True

    def persistent(self):
        return 'persistent' in self.info and self.info['persistent']

    def get_msg(self):
        return pyjson.dumps(pyjson.to_plain(self.value))

    def set(self, value):
        self.value = value
        return True

# a value that may be modified from the command line or config file
class Property(Value):
    def __init__(self, name, initial, **kwargs):
        super(Property, self).__init__(name, initial, **kwargs)
        self.info['writable'] = True

class IntProperty(Property):
    def __init__(self, name, initial, **kwargs):
        super(IntProperty, self).__init__(name, initial, **kwargs)
        self.info['type'] = 'IntProperty'

    def set(self, value):
        try:
            value = int(value)
        except (TypeError, ValueError):
            print('invalid set', self.name, '=', value, file=sys.stderr)
            return False
        return super(IntProperty, self).set(value)

class RangeProperty(Property):
    def __init__(self, name, initial, min_value, max_value, **kwargs):
        self.min_value = min_value
        self.max_value = max_value
        if initial < min_value or initial > max_value:
            print('invalid initial value for range property', name, initial, file=sys.stderr)
        super(RangeProperty, self).__init__(name, initial, **kwargs)

        self.info['type'] = 'RangeProperty'
        self.info['min'] = self.min_value
        self.info['max'] = self.max_value

    def set(self, value):
        try:
            value = float(value)
        except (TypeError, ValueError):
            print('invalid set', self.name, '=', value, file=sys.stderr)
            return False
        if value >= self.min_value and value <= self.max_value:
            return super(RangeProperty, self).set(value)
        print('out of range', self.name, '=', value, file=sys.stderr)
        return False

# a range property holding a count
class CountProperty(RangeProperty):
    def __init__(self, name, initial, min_value, max_value, **kwargs):
        super(CountProperty, self).__init__(name, initial, min_value, max_value, **kwargs)
        self.info['type'] = 'CountProperty'

    def set(self, value):
        try:
            if float(value) != int(float(value)):
                raise ValueError
            value = int(float(value))
        except (TypeError, ValueError):
            print('invalid set', self.name, '=', value, file=sys.stderr)
            return False
        if value >= self.min_value and value <= self.max_value:
            return Property.set(self, value)
        print('out of range', self.name, '=', value, file=sys.stderr)
        return False

class EnumProperty(Property):
    def __init__(self, name, initial, choices, **kwargs):
        self.choices = choices
        super(EnumProperty, self).__init__(name, initial, **kwargs)
        self.info['type'] = 'EnumProperty'
        self.info['choices'] = self.choices

    def set(self, value):
        for choice in self.choices:
            if str(choice) == str(value):
                return super(EnumProperty, self).set(choice)
        print('invalid set', self.name, '=', value, file=sys.stderr)
        return False

class BooleanProperty(Property):
    def __init__(self, name, initial, **kwargs):
        super(BooleanProperty, self).__init__(name, initial, **kwargs)
        self.info['type'] = 'BooleanProperty'

    def set(self, value):
        if isinstance(value, str):
            value = value.strip().lower() in ('1', 'true', 'yes', 'on')
        return super(BooleanProperty, self).set(not not value)

class RunConfig(object):
    '''settings shared by every command, persistent ones are kept in nclp.conf'''
    def __init__(self):
        self.values = {}
        self.command = self.register(EnumProperty, 'command', 'suite',
                                     ['norm', 'verify', 'rosenthal', 'moments', 'budget', 'suite', 'config'])
        self.seed = self.register(IntProperty, 'seed', 0, persistent=True)
        self.tol = self.register(RangeProperty, 'tol', 1e-8, 1e-14, 1e-1, persistent=True)
        self.rtol = self.register(RangeProperty, 'rtol', 1e-4, 1e-12, 1e-1, persistent=True)
        self.jobs = self.register(CountProperty, 'jobs', 1, 1, 64, persistent=True)
        self.format = self.register(EnumProperty, 'format', 'json', ['json', 'csv'], persistent=True)
        self.cap = self.register(CountProperty, 'cap', 4096, 2, 1 << 14, persistent=True)
        self.grid = self.register(CountProperty, 'grid', 512, 64, 1 << 16, persistent=True)
        self.verbose = self.register(BooleanProperty, 'verbose', False)
        self.input = self.register(Property, 'input', None)
        self.output = self.register(Property, 'output', None)

    def register(self, _type, name, *args, **kwargs):
        value = _type(name, *args, **kwargs)
        self.values[name] = value
        return value

    def set(self, name, value):
        if not name in self.values:
            print('unknown setting', name, file=sys.stderr)
            return False
        return self.values[name].set(value)

    def persistent_values(self):
        return [self.values[name] for name in sorted(self.values) if self.values[name].persistent()]

    def as_dict(self):
        return dict((name, pyjson.to_plain(self.values[name].value)) for name in sorted(self.values))
