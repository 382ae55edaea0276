# Copyright 2026 The polysched Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Python front end of the polysched scheduler.

Functions accept documents as dicts or JSON strings and return dicts, except
print_loops which returns text.
"""

import functools
import json

from . import _polysched

__all__ = [
    "PolyschedError",
    "blf_coefficients",
    "contiguity_coefficients",
    "dependences",
    "print_loops",
    "schedule",
    "verify",
]


class PolyschedError(Exception):
    """Library error. `kind` is the error name, e.g. "ConfigInfeasible"."""

    def __init__(self, kind, message):
        super().__init__(message)
        self.kind = kind


def _text(doc):
    if doc is None or isinstance(doc, str):
        return doc
    return json.dumps(doc)


def _translate(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except _polysched.Error as e:
            kind, message = e.args
            raise PolyschedError(kind, message) from None

    return wrapper


@_translate
def dependences(scop):
    return json.loads(_polysched.dependences(_text(scop)))["dependences"]


@_translate
def schedule(scop, config=None, deps=None, tiling=False):
    deps_doc = None if deps is None else _text({"dependences": deps} if isinstance(deps, list) else deps)
    return json.loads(_polysched.schedule(_text(scop), _text(config), deps_doc, tiling))


@_translate
def verify(scop, schedule, params=None, budget=100000):
    return json.loads(_polysched.verify(_text(scop), _text(schedule), dict(params or {}), None, budget))


@_translate
def print_loops(scop, schedule=None, params=None, budget=100000):
    return _polysched.print_loops(_text(scop), _text(schedule), dict(params or {}), budget)


@_translate
def contiguity_coefficients(scop, statement):
    return _polysched.contiguity_coefficients(_text(scop), statement)


@_translate
def blf_coefficients(scop, statement):
    return _polysched.blf_coefficients(_text(scop), statement)
