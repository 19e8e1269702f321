# import all suites in this directory

import os, sys
import importlib

default = []

for module in sorted(os.listdir(os.path.dirname(__file__))):
    if module == '__init__.py' or module[-3:] != '.py' or module.startswith('.'):
        continue
    if module == 'suite.py':
        continue
    try:
        mod = importlib.import_module('nclp.suites.' + module[:-3])
    except Exception as e:
        print('ERROR loading', module, e, file=sys.stderr)
        continue
    try:
        default.append(mod.suite)
    except AttributeError:
        pass

def names():
    return sorted(suite.name for suite in default)

def find(name):
    for suite in default:
        if suite.name == name:
            return suite
    raise ValueError('unknown suite ' + str(name))
