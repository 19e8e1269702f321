#!/usr/bin/env python
#
#   Copyright (C) 2026 nclp developers
#
# This Program is free software; you can redistribute it and/or
# modify it under the terms of the GNU General Public
# License as published by the Free Software Foundation; either
# version 3 of the License, or (at your option) any later version.

import pytest

@pytest.fixture(autouse=True)
def isolated_settings(tmp_path, monkeypatch):
    # never touch ~/.nclp from the tests
    monkeypatch.setenv('NCLP_CONFIG', str(tmp_path / 'nclp.conf'))
    monkeypatch.delenv('NCLP_CACHE_DIR', raising=False)
    return tmp_path

def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: acceptance sized runs, deselect with -m "not slow"')
