"""Angle parsing and deterministic float formatting shared by CLI and parser.

Angles are radians.  Besides plain decimal floats, the pi-rational
literals ``pi`` and ``pi/<number>`` (optionally signed) are accepted,
since all special values in this domain are rational multiples of pi.
"""

from __future__ import annotations

import math


def parse_angle(text: str) -> float:
    """Parse a radian value: a float, ``pi``, or ``pi/<number>``."""
    s = text.strip()
    sign = 1.0
    if s[:1] in ("+", "-"):
        sign = -1.0 if s[0] == "-" else 1.0
        s = s[1:]
    if s == "pi":
        return sign * math.pi
    if s.startswith("pi/"):
        denom = float(s[3:])
        if denom == 0.0:
            raise ValueError(f"zero denominator in angle literal {text!r}")
        return sign * math.pi / denom
    return sign * float(s)


def fmt(x: float) -> str:
    """Ten significant digits, locale-free; the fixed output float format."""
    return f"{x:.10g}"


def fmt_complex(z: complex) -> str:
    return f"{z.real:.10g}{z.imag:+.10g}j"
