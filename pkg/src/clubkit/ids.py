"""Identifier helpers.

Identifiers are plain hashable values: strings, ints, and tuples of those.
Everything that needs a deterministic order sorts with ``idkey``; everything
written to disk goes through ``render``.
"""

import json
import re
from functools import lru_cache

_PLAIN = re.compile(r'[^\s(),"\\\[\]{}]+')


def idkey(x):
    if isinstance(x, tuple):
        return _tuple_key(x)
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    raise TypeError(f"unsupported identifier {x!r}")


@lru_cache(maxsize=1 << 20)
def _tuple_key(x):
    return (2, tuple(idkey(e) for e in x))


def least(items):
    return min(items, key=idkey)


def ordered(items):
    return sorted(items, key=idkey)


def render(x):
    if isinstance(x, str):
        return x if _PLAIN.fullmatch(x) else json.dumps(x, ensure_ascii=False)
    if isinstance(x, int):
        return str(x)
    if isinstance(x, tuple):
        return "(" + ",".join(render(e) for e in x) + ")"
    raise TypeError(f"unsupported identifier {x!r}")
