"""Exact scalars over Q and its three quadratic-type extensions.

Rationals are plain :class:`fractions.Fraction` values.  On top of them this
module provides Gaussian rationals Q(i), Lorentz (double) numbers Q[eps] with
eps**2 = +1, and rational quaternions.  All values are immutable.

Quaternions follow Hamilton's convention ``ij = k``; writing H = C + jC this
gives ``u*j == j*conj(u)`` for every complex ``u``.
"""

from fractions import Fraction
import numbers

import numpy as np

__all__ = [
    "Fraction",
    "GaussianRational",
    "LorentzRational",
    "RationalQuaternion",
    "I",
    "EPS",
    "E_NULL",
    "E_NULL_BAR",
    "as_rational",
    "algebra_of",
    "normalize_algebra",
    "conjugate",
    "lorentz_split",
    "lorentz_from_split",
    "is_unit",
    "to_float",
]

_ALIASES = {
    "R": "R", "Q": "R", "real": "R", "ℝ": "R", "ℚ": "R",
    "C": "C", "complex": "C", "ℂ": "C",
    "L": "L", "lorentz": "L", "𝕃": "L",
    "H": "H", "quaternion": "H", "ℍ": "H",
}


def normalize_algebra(tag):
    try:
        return _ALIASES[tag]
    except KeyError:
        raise ValueError(f"unknown algebra tag {tag!r}") from None


def as_rational(x):
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: the exact layer never rounds.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, numbers.Rational):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"cannot use {type(x).__name__} {x!r} as an exact rational")


def _rat_or_none(x):
    if isinstance(x, (Fraction, int, np.integer)):
        return as_rational(x)
    return None


class GaussianRational:
    """``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", as_rational(re))
        object.__setattr__(self, "im", as_rational(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def _coerce(cls, other):
        if isinstance(other, GaussianRational):
            return other
        r = _rat_or_none(other)
        if r is not None:
            return cls(r, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        r = _rat_or_none(other)
        if r is not None:
            return GaussianRational(self.re * r, self.im * r)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return GaussianRational(self.re * other.re - self.im * other.im,
                                self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def norm(self):
        return self.re * self.re + self.im * self.im

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        r = _rat_or_none(other)
        if r is not None:
            return GaussianRational(self.re / r, self.im / r)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash(("C", self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        return f"{self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i"


class LorentzRational:
    """Double number ``a + b*eps`` with ``eps**2 == 1``.

    Not a field: ``(1 + eps)(1 - eps) == 0``.
    """

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", as_rational(a))
        object.__setattr__(self, "b", as_rational(b))

    def __setattr__(self, name, value):
        raise AttributeError("LorentzRational is immutable")

    @classmethod
    def _coerce(cls, other):
        if isinstance(other, LorentzRational):
            return other
        r = _rat_or_none(other)
        if r is not None:
            return cls(r, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return LorentzRational(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return LorentzRational(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return LorentzRational(self.a * o.a + self.b * o.b,
                               self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def norm(self):
        """``conj(x) * x``, which is ``a**2 - b**2`` and may be negative."""
        return self.a * self.a - self.b * self.b

    def conjugate(self):
        return LorentzRational(self.a, -self.b)

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError(f"{self} is a zero divisor in L")
        return LorentzRational(self.a / n, -self.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __neg__(self):
        return LorentzRational(-self.a, -self.b)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash(("L", self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return f"LorentzRational({self.a}, {self.b})"

    def __str__(self):
        return f"{self.a}{'+' if self.b >= 0 else '-'}{abs(self.b)}eps"


class RationalQuaternion:
    """``w + x*i + y*j + z*k`` with rational coefficients."""

    __slots__ = ("w", "x", "y", "z")

    def __init__(self, w=0, x=0, y=0, z=0):
        object.__setattr__(self, "w", as_rational(w))
        object.__setattr__(self, "x", as_rational(x))
        object.__setattr__(self, "y", as_rational(y))
        object.__setattr__(self, "z", as_rational(z))

    def __setattr__(self, name, value):
        raise AttributeError("RationalQuaternion is immutable")

    @classmethod
    def from_complex_pair(cls, u, v=0):
        """The quaternion ``u + j*v`` for complex ``u`` and ``v``."""
        u = GaussianRational._coerce(u)
        v = GaussianRational._coerce(v)
        # j*(p + q i) = p j + q j i = p j - q k
        return cls(u.re, u.im, v.re, -v.im)

    def complex_pair(self):
        """Inverse of :meth:`from_complex_pair`: returns ``(u, v)``."""
        return GaussianRational(self.w, self.x), GaussianRational(self.y, -self.z)

    @classmethod
    def _coerce(cls, other):
        if isinstance(other, RationalQuaternion):
            return other
        if isinstance(other, GaussianRational):
            return cls(other.re, other.im, 0, 0)
        r = _rat_or_none(other)
        if r is not None:
            return cls(r)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalQuaternion(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalQuaternion(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a1, b1, c1, d1 = self.w, self.x, self.y, self.z
        a2, b2, c2, d2 = o.w, o.x, o.y, o.z
        return RationalQuaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self

    def norm(self):
        return self.w ** 2 + self.x ** 2 + self.y ** 2 + self.z ** 2

    def conjugate(self):
        return RationalQuaternion(self.w, -self.x, -self.y, -self.z)

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("RationalQuaternion division by zero")
        c = self.conjugate()
        return RationalQuaternion(c.w / n, c.x / n, c.y / n, c.z / n)

    def __truediv__(self, other):
        # right division: self * other**-1
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __neg__(self):
        return RationalQuaternion(-self.w, -self.x, -self.y, -self.z)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self.w, self.x, self.y, self.z) == (o.w, o.x, o.y, o.z)

    def __hash__(self):
        if not (self.x or self.y or self.z):
            return hash(self.w)
        return hash(("H", self.w, self.x, self.y, self.z))

    def __bool__(self):
        return bool(self.w or self.x or self.y or self.z)

    def __repr__(self):
        return f"RationalQuaternion({self.w}, {self.x}, {self.y}, {self.z})"


I = GaussianRational(0, 1)
EPS = LorentzRational(0, 1)
# null idempotents: E_NULL * E_NULL_BAR == 0, E_NULL + E_NULL_BAR == 1
E_NULL = LorentzRational(Fraction(1, 2), Fraction(-1, 2))
E_NULL_BAR = LorentzRational(Fraction(1, 2), Fraction(1, 2))

_TYPES = {GaussianRational: "C", LorentzRational: "L", RationalQuaternion: "H"}


def algebra_of(x):
    t = _TYPES.get(type(x))
    if t is not None:
        return t
    if isinstance(x, (Fraction, int, np.integer)):
        return "R"
    raise TypeError(f"{type(x).__name__} is not an exact scalar")


def _lift(x, algebra):
    if algebra == "R":
        if algebra_of(x) != "R":
            raise TypeError(f"{x!r} is not a rational")
        return as_rational(x)
    cls = {"C": GaussianRational, "L": LorentzRational, "H": RationalQuaternion}[algebra]
    lifted = cls._coerce(x)
    if lifted is None:
        raise TypeError(f"{x!r} does not belong to algebra {algebra}")
    return lifted


def conjugate(x, algebra=None):
    """The canonical involution of the algebra (identity on Q)."""
    algebra = algebra_of(x) if algebra is None else normalize_algebra(algebra)
    x = _lift(x, algebra)
    if algebra == "R":
        return x
    return x.conjugate()


def lorentz_split(x):
    """Coordinates ``(p, q)`` with ``x = p*e + q*ebar``.

    The map is a ring isomorphism L -> Q x Q.
    """
    x = _lift(x, "L")
    return x.a - x.b, x.a + x.b


def lorentz_from_split(p, q):
    p, q = as_rational(p), as_rational(q)
    return LorentzRational((p + q) / 2, (q - p) / 2)


def is_unit(x, algebra=None):
    algebra = algebra_of(x) if algebra is None else normalize_algebra(algebra)
    x = _lift(x, algebra)
    if algebra == "R":
        return x != 0
    return x.norm() != 0


def to_float(x):
    """Double-precision mirror of an exact scalar.

    Q -> float, Q(i) -> complex, L -> (a, b) float pair, H -> length-4 array.
    """
    t = algebra_of(x)
    if t == "R":
        return float(x)
    if t == "C":
        return complex(x)
    if t == "L":
        return (float(x.a), float(x.b))
    return np.array([float(x.w), float(x.x), float(x.y), float(x.z)])
