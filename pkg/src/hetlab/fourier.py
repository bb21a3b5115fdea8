"""Finite trigonometric polynomials on the 6-torus.

A field value is a finite sum over integer mode vectors k in Z^6

    sum_k  a_k cos(k.x) + b_k sin(k.x)

with coefficients in Q(i, sqrt2).  Canonical storage: for each mode the
first nonzero entry of k is positive (cos is even, sin is odd), and the
zero mode carries no sin term.  The ring is closed under products via
product-to-sum, and under coordinate derivatives.  Mode growth is
capped; passing the cap raises DegreeOverflow.
"""

from __future__ import annotations

from .scalars import Scalar, ZERO, HALF

DIM = 6

# hard cap on |k|_inf for any stored mode; products that would pass it
# raise instead of silently truncating
MAX_DEGREE = 16


class DegreeOverflow(Exception):
    """A trig mode exceeded the configured degree cap."""


def set_max_degree(n):
    global MAX_DEGREE
    MAX_DEGREE = int(n)


def _canon_mode(k, c, s):
    """Normalize one (mode, cos, sin) term; returns (k, c, s) or None."""
    for e in k:
        if e > 0:
            return k, c, s
        if e < 0:
            return tuple(-x for x in k), c, -s
    # zero mode: sin part vanishes identically
    return k, c, None


class FieldScalar:
    """Trig polynomial with Scalar coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        # terms: {mode tuple: (cos Scalar, sin Scalar)}, already canonical
        self.terms = terms if terms is not None else {}

    @staticmethod
    def constant(value):
        value = value if isinstance(value, Scalar) else Scalar(value)
        if value.is_zero():
            return FieldScalar()
        return FieldScalar({(0,) * DIM: (value, ZERO)})

    @staticmethod
    def mode(k, cos_coeff=None, sin_coeff=None):
        k = tuple(int(e) for e in k)
        if len(k) != DIM:
            raise ValueError("mode vector must have length 6")
        if k and max(abs(e) for e in k) > MAX_DEGREE:
            raise DegreeOverflow("mode %r exceeds degree cap %d" % (k, MAX_DEGREE))
        c = cos_coeff if cos_coeff is not None else ZERO
        s = sin_coeff if sin_coeff is not None else ZERO
        c = c if isinstance(c, Scalar) else Scalar(c)
        s = s if isinstance(s, Scalar) else Scalar(s)
        kk, c, s = _canon_mode(k, c, s)
        if s is None:
            s = ZERO
        out = FieldScalar()
        out._add_term(kk, c, s)
        return out

    def _add_term(self, k, c, s):
        old = self.terms.get(k)
        if old is not None:
            c = old[0] + c
            s = old[1] + s
        if c.is_zero() and s.is_zero():
            self.terms.pop(k, None)
        else:
            self.terms[k] = (c, s)

    # -- queries ------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        if not self.terms:
            return True
        return len(self.terms) == 1 and (0,) * DIM in self.terms

    def constant_coefficient(self):
        """Mean value over the torus (the zero-mode cos coefficient)."""
        t = self.terms.get((0,) * DIM)
        return t[0] if t else ZERO

    def degree(self):
        best = 0
        for k in self.terms:
            m = max(abs(e) for e in k)
            if m > best:
                best = m
        return best

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        other = _promote(other)
        if other is None:
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset((k, v[0], v[1]) for k, v in self.terms.items()))

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        other = _promote(other)
        if other is None:
            return NotImplemented
        out = FieldScalar(dict(self.terms))
        for k, (c, s) in other.terms.items():
            out._add_term(k, c, s)
        return out

    __radd__ = __add__

    def __neg__(self):
        return FieldScalar({k: (-c, -s) for k, (c, s) in self.terms.items()})

    def __sub__(self, other):
        other = _promote(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _promote(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _promote(other)
        if other is None:
            return NotImplemented
        if other.is_constant():
            z = other.constant_coefficient()
            if z.is_zero():
                return FieldScalar()
            return FieldScalar({k: (c * z, s * z)
                                for k, (c, s) in self.terms.items()})
        if self.is_constant():
            return other * self
        out = FieldScalar()
        zero = ZERO
        for k, (c1, s1) in self.terms.items():
            c1z = c1.is_zero()
            s1z = s1.is_zero()
            for l, (c2, s2) in other.terms.items():
                kp = tuple(a + b for a, b in zip(k, l))
                km = tuple(a - b for a, b in zip(k, l))
                if max(abs(e) for e in kp) > MAX_DEGREE:
                    raise DegreeOverflow(
                        "product mode %r exceeds degree cap %d" % (kp, MAX_DEGREE))
                # cos cos, sin sin -> cos;  cos sin, sin cos -> sin
                # (doubled here, halved once at the end)
                c2z = c2.is_zero()
                s2z = s2.is_zero()
                cc = zero if c1z or c2z else c1 * c2
                ss = zero if s1z or s2z else s1 * s2
                cs = zero if c1z or s2z else c1 * s2
                sc = zero if s1z or c2z else s1 * c2
                _accumulate(out, km, cc + ss, sc - cs)
                _accumulate(out, kp, cc - ss, sc + cs)
        out.terms = {k: (c * HALF, s * HALF) for k, (c, s) in out.terms.items()}
        return out

    __rmul__ = __mul__

    def __truediv__(self, other):
        # only division by an invertible constant is defined
        if isinstance(other, FieldScalar):
            if not other.is_constant():
                raise ValueError("can only divide by a constant field")
            other = other.constant_coefficient()
        if isinstance(other, int):
            other = Scalar(other)
        return self * other.inverse()

    # -- calculus -----------------------------------------------------

    def partial(self, j):
        """d/dx_j; differentiates every trig mode."""
        out = FieldScalar()
        for k, (c, s) in self.terms.items():
            kj = k[j]
            if kj == 0:
                continue
            kq = _int_scalar(kj)
            # d cos(k.x) = -k_j sin(k.x), d sin(k.x) = k_j cos(k.x)
            _accumulate(out, k, s * kq, -(c * kq))
        return out

    def conjugate(self):
        return FieldScalar({k: (c.conjugate(), s.conjugate())
                            for k, (c, s) in self.terms.items()})

    def real_part(self):
        return FieldScalar._clean({k: (c.real_part(), s.real_part())
                                   for k, (c, s) in self.terms.items()})

    def imag_part(self):
        """Coefficient field of i (a real field)."""
        return FieldScalar._clean({k: (c.imag_part(), s.imag_part())
                                   for k, (c, s) in self.terms.items()})

    @staticmethod
    def _clean(terms):
        return FieldScalar({k: v for k, v in terms.items()
                            if not (v[0].is_zero() and v[1].is_zero())})

    def pullback_affine(self, mat, tau_quarters):
        """Compose with x -> M x + (pi/2) q for M integer 6x6, q in Z^6.

        cos(k.(Mx + tau)) = cos((M^T k).x + (pi/2) k.q); quarter-turn
        phases keep the ring closed.
        """
        out = FieldScalar()
        for k, (c, s) in self.terms.items():
            nk = tuple(sum(mat[r][j] * k[r] for r in range(DIM))
                       for j in range(DIM))
            if max(abs(e) for e in nk) > MAX_DEGREE:
                raise DegreeOverflow("pullback mode %r exceeds cap" % (nk,))
            p = sum(ke * qe for ke, qe in zip(k, tau_quarters)) % 4
            # cos(A + p*pi/2), sin(A + p*pi/2) in terms of cos A, sin A
            if p == 0:
                nc, ns = c, s
            elif p == 1:
                nc, ns = s, -c
            elif p == 2:
                nc, ns = -c, -s
            else:
                nc, ns = -s, c
            _accumulate(out, nk, nc, ns)
        return out

    def eval_quarters(self, q):
        """Exact value at the lattice point x = (pi/2) q, q in Z^6."""
        total = ZERO
        for k, (c, s) in self.terms.items():
            p = sum(ke * qe for ke, qe in zip(k, q)) % 4
            cv = (1, 0, -1, 0)[p]
            sv = (0, 1, 0, -1)[p]
            if cv:
                total = total + c * Scalar(cv)
            if sv:
                total = total + s * Scalar(sv)
        return total

    def float_at(self, x):
        from math import cos, sin
        val = 0j
        for k, (c, s) in self.terms.items():
            ph = sum(ke * xe for ke, xe in zip(k, x))
            val += c.float_complex() * cos(ph) + s.float_complex() * sin(ph)
        return val

    def __repr__(self):
        if not self.terms:
            return "FieldScalar(0)"
        bits = []
        for k in sorted(self.terms):
            c, s = self.terms[k]
            bits.append("%r:(%s|%s)" % (k, c.exact_str(), s.exact_str()))
        return "FieldScalar{%s}" % ", ".join(bits)


def _accumulate(f, k, c, s):
    k, c, s = _canon_mode(k, c, s)
    if s is None:
        s = ZERO
    f._add_term(k, c, s)


_INT_SCALARS = {}


def _int_scalar(n):
    out = _INT_SCALARS.get(n)
    if out is None:
        out = Scalar(n)
        _INT_SCALARS[n] = out
    return out


def _promote(x):
    if isinstance(x, FieldScalar):
        return x
    if isinstance(x, (Scalar, int)):
        return FieldScalar.constant(x)
    return None


FIELD_ZERO = FieldScalar()
FIELD_ONE = FieldScalar.constant(1)
