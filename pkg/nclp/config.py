#!/usr/bin/env python
#
#   Copyright (C) 2026 nclp developers
#
# This Program is free software; you can redistribute it and/or
# modify it under the terms of the GNU General Public
# License as published by the Free Software Foundation; either
# version 3 of the License, or (at your option) any later version.

import os, sys, time
from nclp import pyjson

def default_config_path():
    path = os.getenv('NCLP_CONFIG')
    if path:
        return path
    return os.path.join(os.path.expanduser('~'), '.nclp', 'nclp.conf')

def cache_dir():
    path = os.getenv('NCLP_CACHE_DIR')
    if not path:
        return None
    try:
        os.makedirs(path, exist_ok=True)
    except OSError as e:
        print('WARNING: cannot use cache directory', path, e, file=sys.stderr)
        return None
    return path

def load_file(config, f):
    loaded = {}
    for line in f:
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        name, data = line.split('=', 1)
        value = pyjson.loads(data)
        loaded[name] = value
        if name in config.values and config.values[name].persistent():
            config.values[name].set(value)
    return loaded

def load(config, path=None):
    path = path or default_config_path()
    if not os.path.exists(path):
        return {}
    try:
        with open(path) as f:
            return load_file(config, f)
    except Exception as e:
        print('failed to load', path, e, file=sys.stderr)
        try:
            with open(path + '.bak') as f:
                return load_file(config, f)
        except Exception as e:
            print('backup config failed as well', e, file=sys.stderr)
    return {}

def store(config, path=None):
    path = path or default_config_path()
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    if os.path.exists(path):
        # keep the previous version around in case this write is interrupted
        with open(path) as f:
            previous = f.read()
        with open(path + '.bak', 'w') as f:
            f.write(previous)
    with open(path, 'w') as f:
        f.write('# nclp settings, written ' + time.strftime('%Y-%m-%d') + '\n')
        for value in config.persistent_values():
            f.write(value.name + '=' + value.get_msg() + '\n')
    return path
