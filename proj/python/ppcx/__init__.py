"""Python interface to the ppcx library.

Complexes, superclass functions and reports are plain dicts in the same JSON
schema the command-line tool reads and writes.
"""

import json
import os

from . import _core
from ._core import DEFAULT_CAP, SCHEMA, PpcxError

__all__ = [
    "DEFAULT_CAP",
    "SCHEMA",
    "PpcxError",
    "borel_smith",
    "borel_smith_of_complex",
    "check",
    "construct",
    "decompose",
    "direct_sum",
    "dual",
    "green",
    "hmarks",
    "lifts",
    "mackey_sweep",
    "mackey_verify",
    "psubgroups",
    "shift",
    "summary",
    "tensor",
]


def _text(obj):
    if isinstance(obj, str):
        if os.path.isfile(obj):
            with open(obj, encoding="utf-8") as f:
                return f.read()
        return obj
    return json.dumps(obj)


def _load(text):
    return json.loads(text)


def construct(name, group="C2", p=2, length=2, cap=DEFAULT_CAP):
    return _load(_core.construct(name, group, p, length, cap))


def check(complex, mode="weak", V="regular", cross_check=True, direct_cap=200, seed=0, cap=DEFAULT_CAP):
    return _load(_core.check(_text(complex), mode, V, cross_check, direct_cap, seed, cap))


def hmarks(complex, mode="weak", V="regular", cross_check=True, seed=0, cap=DEFAULT_CAP):
    return _load(_core.hmarks(_text(complex), mode, V, cross_check, seed, cap))


def borel_smith(function, V="regular", at_V=False, cap=DEFAULT_CAP):
    return _load(_core.borel_smith(_text(function), V, at_V, cap))


def borel_smith_of_complex(complex, mode="plain", V="regular", at_V=False, cap=DEFAULT_CAP):
    return _load(_core.borel_smith_of_complex(_text(complex), mode, V, at_V, cap))


def psubgroups(group, p, cap=DEFAULT_CAP):
    return _load(_core.psubgroups(group, p, cap))


def mackey_verify(group, H, M="regular", P=None, p=0, seed=0, cap=DEFAULT_CAP):
    return _load(_core.mackey_verify(group, H, M, P, p, seed, cap))


def mackey_sweep(group, p, seed=0, cap=DEFAULT_CAP):
    return _load(_core.mackey_sweep(group, p, seed, cap))


def decompose(group, M, over="G", p=0, seed=0, cap=DEFAULT_CAP):
    return _load(_core.decompose(group, M, over, p, seed, cap))


def green(complex, H, direction, seed=0, cap=DEFAULT_CAP):
    return _load(_core.green(_text(complex), H, direction, seed, cap))


def lifts(complex, seed=0, cap=DEFAULT_CAP):
    return _load(_core.lifts(_text(complex), seed, cap))


def summary(complex, cap=DEFAULT_CAP):
    return _load(_core.summary(_text(complex), cap))


def dual(complex, cap=DEFAULT_CAP):
    return _load(_core.dual(_text(complex), cap))


def shift(complex, n, cap=DEFAULT_CAP):
    return _load(_core.shift(_text(complex), n, cap))


def tensor(a, b, cap=DEFAULT_CAP):
    return _load(_core.tensor(_text(a), _text(b), cap))


def direct_sum(a, b, cap=DEFAULT_CAP):
    return _load(_core.direct_sum(_text(a), _text(b), cap))
