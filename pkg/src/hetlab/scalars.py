"""Exact scalars in the field Q(i, sqrt2).

Every coefficient in this package is a complex number whose real and
imaginary parts live in Q(sqrt2).  A value is stored as four gmpy2
rationals (ra, rb, ia, ib) meaning

    (ra + rb*sqrt2) + i*(ia + ib*sqrt2).

All arithmetic is exact; floats only appear through float_complex().
"""

from __future__ import annotations

from gmpy2 import mpq, is_square, isqrt

_Q0 = mpq(0)
_Q1 = mpq(1)


def _to_mpq(x):
    if isinstance(x, (int, str)):
        return mpq(x)
    return mpq(x)


class Scalar:
    """Element of Q(i, sqrt2)."""

    __slots__ = ("ra", "rb", "ia", "ib")

    def __init__(self, ra=0, rb=0, ia=0, ib=0):
        self.ra = _to_mpq(ra)
        self.rb = _to_mpq(rb)
        self.ia = _to_mpq(ia)
        self.ib = _to_mpq(ib)

    # -- constructors -------------------------------------------------

    @staticmethod
    def _raw(ra, rb, ia, ib):
        # internal: slots already mpq
        out = Scalar.__new__(Scalar)
        out.ra = ra
        out.rb = rb
        out.ia = ia
        out.ib = ib
        return out

    @staticmethod
    def rational(p, q=1):
        return Scalar(mpq(p, q))

    @staticmethod
    def sqrt2(coeff=1):
        return Scalar(0, coeff)

    @staticmethod
    def imag(coeff=1):
        return Scalar(0, 0, coeff)

    # -- predicates ---------------------------------------------------

    def is_zero(self):
        return not (self.ra or self.rb or self.ia or self.ib)

    def is_real(self):
        return not (self.ia or self.ib)

    def is_rational(self):
        return not (self.rb or self.ia or self.ib)

    def __bool__(self):
        return not self.is_zero()

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        if type(other) is not Scalar:
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return Scalar._raw(self.ra + other.ra, self.rb + other.rb,
                           self.ia + other.ia, self.ib + other.ib)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(-self.ra, -self.rb, -self.ia, -self.ib)

    def __sub__(self, other):
        if type(other) is not Scalar:
            other = _coerce(other)
            if other is None:
                return NotImplemented
        return Scalar._raw(self.ra - other.ra, self.rb - other.rb,
                           self.ia - other.ia, self.ib - other.ib)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if type(other) is not Scalar:
            other = _coerce(other)
            if other is None:
                return NotImplemented
        # complex product; each part is a product in Q(sqrt2):
        # (a1+b1*s)(a2+b2*s) = (a1*a2 + 2*b1*b2) + (a1*b2 + b1*a2)*s
        ra, rb, ia, ib = self.ra, self.rb, self.ia, self.ib
        rc, rd, ic, id_ = other.ra, other.rb, other.ia, other.ib
        if not (rb or ia or ib):
            # rational left factor
            if not ra:
                return ZERO
            return Scalar._raw(ra * rc, ra * rd, ra * ic, ra * id_)
        if not (rd or ic or id_):
            if not rc:
                return ZERO
            return Scalar._raw(ra * rc, rb * rc, ia * rc, ib * rc)
        rra = ra * rc + 2 * rb * rd - (ia * ic + 2 * ib * id_)
        rrb = ra * rd + rb * rc - (ia * id_ + ib * ic)
        ria = ra * ic + 2 * rb * id_ + ia * rc + 2 * ib * rd
        rib = ra * id_ + rb * ic + ia * rd + ib * rc
        return Scalar._raw(rra, rrb, ria, rib)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("scalar inverse of zero")
        # 1/z = conj(z) / |z|^2 with |z|^2 in Q(sqrt2), then invert
        # a + b*sqrt2 via the conjugate (a - b*sqrt2)/(a^2 - 2 b^2).
        n2a = self.ra * self.ra + 2 * self.rb * self.rb \
            + self.ia * self.ia + 2 * self.ib * self.ib
        n2b = 2 * (self.ra * self.rb + self.ia * self.ib)
        den = n2a * n2a - 2 * n2b * n2b
        inva = n2a / den
        invb = -n2b / den
        c = self.conjugate()
        return Scalar(c.ra * inva + 2 * c.rb * invb,
                      c.ra * invb + c.rb * inva,
                      c.ia * inva + 2 * c.ib * invb,
                      c.ia * invb + c.ib * inva)

    def conjugate(self):
        return Scalar(self.ra, self.rb, -self.ia, -self.ib)

    # -- structure ----------------------------------------------------

    def real_part(self):
        return Scalar(self.ra, self.rb)

    def imag_part(self):
        """Imaginary part as a real scalar (without the i)."""
        return Scalar(self.ia, self.ib)

    def sqrt_real(self):
        """Exact square root of a nonnegative element of Q(sqrt2).

        Returns a Scalar x with x*x == self and x >= 0, or None when no
        square root exists inside Q(sqrt2).  Raises on non-real input.
        """
        if not self.is_real():
            raise ValueError("sqrt_real needs a real scalar")
        a, b = self.ra, self.rb
        if not _q2_nonneg(a, b):
            return None
        if not b:
            r = _mpq_sqrt(a)
            if r is not None:
                return Scalar(r)
            r = _mpq_sqrt(a / 2)
            if r is not None:
                return Scalar(0, r)
            return None
        disc = a * a - 2 * b * b
        rd = _mpq_sqrt(disc) if disc >= 0 else None
        if rd is None:
            return None
        for sgn in (1, -1):
            d2 = (a + sgn * rd) / 4
            if d2 < 0:
                continue
            d = _mpq_sqrt(d2)
            if d is None or not d:
                continue
            c = b / (2 * d)
            cand = Scalar(c, d)
            if (cand * cand - self).is_zero() and _q2_nonneg(c, d):
                return cand
        return None

    # -- conversions --------------------------------------------------

    def float_complex(self):
        s = 2 ** 0.5
        return complex(float(self.ra) + float(self.rb) * s,
                       float(self.ia) + float(self.ib) * s)

    def exact_str(self):
        """Canonical exact text form, stable across runs."""
        return "%s,%s,%s,%s" % (self.ra, self.rb, self.ia, self.ib)

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return (self.ra == other.ra and self.rb == other.rb
                and self.ia == other.ia and self.ib == other.ib)

    def __hash__(self):
        return hash((self.ra, self.rb, self.ia, self.ib))

    def __repr__(self):
        return "Scalar(%s)" % self.exact_str()


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, int) or type(x) is type(_Q0):
        return Scalar(x)
    return None


def _q2_nonneg(a, b):
    # exact test for a + b*sqrt2 >= 0
    if a >= 0 and b >= 0:
        return True
    if a < 0 and b < 0:
        return False
    if a >= 0:  # b < 0
        return a * a >= 2 * b * b
    return 2 * b * b >= a * a  # a < 0, b > 0


def _mpq_sqrt(q):
    # exact sqrt of a nonnegative rational, else None
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    if is_square(num) and is_square(den):
        return mpq(isqrt(num), isqrt(den))
    return None


ZERO = Scalar()
ONE = Scalar(1)
TWO = Scalar(2)
HALF = Scalar(mpq(1, 2))
SQRT2 = Scalar(0, 1)
I = Scalar(0, 0, 1)


def rat(p, q=1):
    """Shorthand rational constructor."""
    return Scalar(mpq(p, q))
