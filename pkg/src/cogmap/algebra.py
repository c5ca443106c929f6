"""Exact arithmetic for the ring of values a + bI, where I·I = I.

I is the indeterminacy element used by neutrosophic maps: it absorbs
multiplication (I² = I) and adds like an ordinary basis vector
(I + I = 2I, k·I = kI, 0I = 0).  Scalar parts are kept exact (ints,
widened to Fractions on demand) so that repeated matrix passes never
drift and states can be hashed for cycle detection.  Floats are accepted
only as a convenience at construction time and are converted through
their decimal string form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Scalar = Union[int, Fraction]


class WeightParseError(ValueError):
    """A weight string does not match the weight grammar."""


def _coerce(value) -> Scalar:
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar part")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else value
    if isinstance(value, float):
        return _coerce(Fraction(str(value)))
    raise TypeError(f"scalar part must be int, Fraction or float, got {type(value).__name__}")


@dataclass(frozen=True)
class NeutroValue:
    """An element a + bI of the neutrosophic ring.

    ``real`` is a, ``indet`` is the coefficient b of I.  Values are
    immutable, hashable and compare by exact componentwise equality.
    """

    real: Scalar = 0
    indet: Scalar = 0

    def __post_init__(self):
        object.__setattr__(self, "real", _coerce(self.real))
        object.__setattr__(self, "indet", _coerce(self.indet))

    @property
    def is_crisp(self) -> bool:
        """True when the value has no indeterminate component."""
        return self.indet == 0

    @property
    def is_pure_indeterminate(self) -> bool:
        return self.real == 0 and self.indet != 0

    def __bool__(self) -> bool:
        return self.real != 0 or self.indet != 0

    def __add__(self, other) -> "NeutroValue":
        other = as_neutro(other)
        return NeutroValue(self.real + other.real, self.indet + other.indet)

    __radd__ = __add__

    def __sub__(self, other) -> "NeutroValue":
        other = as_neutro(other)
        return NeutroValue(self.real - other.real, self.indet - other.indet)

    def __rsub__(self, other) -> "NeutroValue":
        return as_neutro(other) - self

    def __neg__(self) -> "NeutroValue":
        return NeutroValue(-self.real, -self.indet)

    def __mul__(self, other) -> "NeutroValue":
        # (a1 + b1 I)(a2 + b2 I) = a1 a2 + (a1 b2 + b1 a2 + b1 b2) I,
        # the unique bilinear product with I·I = I.
        other = as_neutro(other)
        a1, b1 = self.real, self.indet
        a2, b2 = other.real, other.indet
        return NeutroValue(a1 * a2, a1 * b2 + b1 * a2 + b1 * b2)

    __rmul__ = __mul__

    def scale(self, k) -> "NeutroValue":
        """Componentwise scaling by a crisp scalar k."""
        k = _coerce(k)
        return NeutroValue(k * self.real, k * self.indet)

    def __str__(self) -> str:
        return format_weight(self)

    def __repr__(self) -> str:
        return f"NeutroValue({self.real!r}, {self.indet!r})"


ZERO = NeutroValue(0, 0)
ONE = NeutroValue(1, 0)
MINUS_ONE = NeutroValue(-1, 0)
INDET = NeutroValue(0, 1)


def as_neutro(value) -> NeutroValue:
    """Promote a scalar, weight string or NeutroValue to the ring."""
    if isinstance(value, NeutroValue):
        return value
    if isinstance(value, str):
        return parse_weight(value)
    return NeutroValue(_coerce(value), 0)


def add(x, y) -> NeutroValue:
    return as_neutro(x) + as_neutro(y)


def multiply(x, y) -> NeutroValue:
    return as_neutro(x) * as_neutro(y)


def negate(x) -> NeutroValue:
    return -as_neutro(x)


def scale(k, x) -> NeutroValue:
    return as_neutro(x).scale(k)


# Weight grammar: [sign] scalar | [sign] [scalar] "I" | [sign] scalar ("+"|"-") [scalar] "I"
# where scalar is an integer, a decimal or a rational p/q.
_SCALAR = r"(?:\d+/\d+|\d+\.\d+|\d+)"
_WEIGHT_RE = re.compile(
    rf"^(?P<sign>[+-])?"
    rf"(?:(?P<coef>{_SCALAR})?(?P<pure>I)"
    rf"|(?P<real>{_SCALAR})(?:(?P<isign>[+-])(?P<icoef>{_SCALAR})?I)?)$"
)


def _parse_scalar(token: str) -> Scalar:
    if "/" in token:
        num, _, den = token.partition("/")
        if int(den) == 0:
            raise WeightParseError(f"zero denominator in {token!r}")
        return _coerce(Fraction(int(num), int(den)))
    if "." in token:
        return _coerce(Fraction(token))
    return int(token)


def parse_weight(text: str) -> NeutroValue:
    """Parse a weight string such as ``-1``, ``I``, ``2I`` or ``1-2I``.

    Raises WeightParseError naming the offending text otherwise.
    """
    if not isinstance(text, str):
        raise WeightParseError(f"weight must be a string, got {type(text).__name__}")
    stripped = text.strip()
    match = _WEIGHT_RE.match(stripped)
    if match is None:
        raise WeightParseError(f"malformed weight {text!r}")
    sign = -1 if match.group("sign") == "-" else 1
    if match.group("pure"):
        coef = _parse_scalar(match.group("coef")) if match.group("coef") else 1
        return NeutroValue(0, sign * coef)
    real = sign * _parse_scalar(match.group("real"))
    if match.group("isign") is None:
        return NeutroValue(real, 0)
    isign = -1 if match.group("isign") == "-" else 1
    icoef = _parse_scalar(match.group("icoef")) if match.group("icoef") else 1
    return NeutroValue(real, isign * icoef)


def _format_scalar(value: Scalar) -> str:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return str(value)


def format_weight(value: NeutroValue) -> str:
    """Canonical text form: "a", "bI" (with "I"/"-I" shorthand) or "a±bI"."""
    a, b = value.real, value.indet
    if b == 0:
        return _format_scalar(a)
    if b == 1:
        itext = "I"
    elif b == -1:
        itext = "-I"
    else:
        itext = f"{_format_scalar(b)}I"
    if a == 0:
        return itext
    joiner = "" if itext.startswith("-") else "+"
    return f"{_format_scalar(a)}{joiner}{itext}"
