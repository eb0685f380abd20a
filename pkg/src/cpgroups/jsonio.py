"""Serialisation helpers: big integers travel as decimal strings."""
from __future__ import annotations

import json
from typing import Any

# CPython refuses str(int) beyond this many digits by default
_SAFE_DIGITS = 4000


def decimal_str(x: int) -> str:
    """Decimal text of an arbitrarily large integer, independent of the interpreter's digit limit."""
    if x < 0:
        return "-" + decimal_str(-x)
    if x.bit_length() < _SAFE_DIGITS * 3:
        return str(x)
    k = digit_count(x) // 2
    hi, lo = divmod(x, 10**k)
    return decimal_str(hi) + decimal_str(lo).rjust(k, "0")


def digit_count(x: int) -> int:
    """Number of decimal digits of |x| (1 for zero)."""
    x = abs(x)
    if x == 0:
        return 1
    d = int(x.bit_length() * 0.30102999566398120) + 1
    p = 10 ** (d - 1)
    while p > x:
        d -= 1
        p //= 10
    while p * 10 <= x:
        d += 1
        p *= 10
    return d


def dumps(obj: Any, **kw) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=True, **kw)
