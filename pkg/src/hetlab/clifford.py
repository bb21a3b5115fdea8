"""Clifford algebra of the flat metric and the chiral spinor model.

Generators e_0..e_5 follow the real coordinate coframe and satisfy
e_i e_j + e_j e_i = 2 delta_ij.  The positive chirality module is the
even antiholomorphic exterior algebra with unit-normalized generators
zeta_j = (e^j + i e^{j+3})/sqrt(2): a 1-form acts by
sqrt(2) (iota of the (1,0) part + wedge by the (0,1) part), so e^j acts
as (iota_j + wedge_j) and e^{j+3} as -i (iota_j - wedge_j).

Spinors have 8 components indexed by subsets of {0,1,2} (bitmask),
component S meaning the ascending wedge of the conjugate generators in
S.  Coefficients are Scalar or FieldScalar.
"""

from __future__ import annotations

from .scalars import Scalar, ZERO, ONE, I
from .fourier import FieldScalar
from .forms import Form

_MASKS3 = range(8)


def _wedge_matrix(j):
    # zeta-bar_j wedge on the 8-dim basis
    m = [[ZERO] * 8 for _ in range(8)]
    for s in _MASKS3:
        if s & (1 << j):
            continue
        below = bin(s & ((1 << j) - 1)).count("1")
        sign = ONE if below % 2 == 0 else -ONE
        m[s | (1 << j)][s] = sign
    return m


def _iota_matrix(j):
    # interior product removing zeta-bar_j
    m = [[ZERO] * 8 for _ in range(8)]
    for s in _MASKS3:
        if not s & (1 << j):
            continue
        below = bin(s & ((1 << j) - 1)).count("1")
        sign = ONE if below % 2 == 0 else -ONE
        m[s & ~(1 << j)][s] = sign
    return m


def _mat_add(a, b):
    return [[a[r][c] + b[r][c] for c in range(8)] for r in range(8)]


def _mat_sub(a, b):
    return [[a[r][c] - b[r][c] for c in range(8)] for r in range(8)]


def _mat_scale(a, z):
    return [[z * a[r][c] for c in range(8)] for r in range(8)]


def _mat_mul(a, b):
    out = [[ZERO] * 8 for _ in range(8)]
    for r in range(8):
        for t in range(8):
            art = a[r][t]
            if isinstance(art, Scalar) and art.is_zero():
                continue
            for c in range(8):
                btc = b[t][c]
                if isinstance(btc, Scalar) and btc.is_zero():
                    continue
                out[r][c] = out[r][c] + art * btc
    return out


def _build_generators():
    gens = []
    for j in range(3):
        gens.append(_mat_add(_iota_matrix(j), _wedge_matrix(j)))
    for j in range(3):
        gens.append(_mat_scale(_mat_sub(_iota_matrix(j), _wedge_matrix(j)), -I))
    return gens


GENERATORS = _build_generators()

_IDENTITY8 = [[ONE if r == c else ZERO for c in range(8)] for r in range(8)]


def _build_monomial_matrices():
    mats = {0: _IDENTITY8}
    for mask in range(1, 64):
        low = mask & (-mask)
        j = low.bit_length() - 1
        rest = mask & ~low
        # ascending product e_j e_(rest...) = M_j @ M_rest
        mats[mask] = _mat_mul(GENERATORS[j], mats[rest])
    return mats


MONOMIAL_MATRICES = _build_monomial_matrices()


class CliffordElement:
    """Element of Cl(6): {bitmask: coeff} over ascending monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = dict(terms) if terms else {}

    @staticmethod
    def monomial(indices, coeff=ONE):
        mask = 0
        sign = 1
        seq = []
        for i in indices:
            # multiply running ascending word by e_i on the right
            higher = sum(1 for s in seq if s > i)
            if higher % 2:
                sign = -sign
            if i in seq:
                seq.remove(i)
            else:
                seq.append(i)
                seq.sort()
        for s in seq:
            mask |= 1 << s
        c = coeff if sign > 0 else -coeff
        out = CliffordElement()
        out._add(mask, c)
        return out

    def _add(self, mask, coeff):
        old = self.terms.get(mask)
        new = coeff if old is None else old + coeff
        if _is_zero(new):
            self.terms.pop(mask, None)
        else:
            self.terms[mask] = new

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = CliffordElement(self.terms)
        for m, c in other.terms.items():
            out._add(m, c)
        return out

    def __sub__(self, other):
        out = CliffordElement(self.terms)
        for m, c in other.terms.items():
            out._add(m, -c)
        return out

    def __neg__(self):
        return CliffordElement({m: -c for m, c in self.terms.items()})

    def scale(self, z):
        out = CliffordElement()
        for m, c in self.terms.items():
            out._add(m, z * c)
        return out

    def __mul__(self, other):
        out = CliffordElement()
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mask, sign = _mono_mul(m1, m2)
                c = c1 * c2
                out._add(mask, c if sign > 0 else -c)
        return out

    def matrix(self):
        """8x8 action matrix on the spinor module."""
        out = [[ZERO] * 8 for _ in range(8)]
        for m, c in self.terms.items():
            mat = MONOMIAL_MATRICES[m]
            for r in range(8):
                for col in range(8):
                    e = mat[r][col]
                    if isinstance(e, Scalar) and e.is_zero():
                        continue
                    out[r][col] = out[r][col] + c * e
        return out

    @staticmethod
    def from_form(form):
        """Coefficient-wise transfer of a real-basis form.

        Ascending orthonormal wedge monomials are Clifford monomials.
        """
        if form.cx:
            raise ValueError("need a real-basis form")
        out = CliffordElement()
        for key, c in form.coeffs.items():
            mask = 0
            for i in key:
                mask |= 1 << i
            out._add(mask, c)
        return out


def _mono_mul(m1, m2):
    """Product of ascending monomials: (mask, sign)."""
    sign = 1
    acc = m1
    rem = m2
    while rem:
        low = rem & (-rem)
        rem &= ~low
        j = low.bit_length() - 1
        higher = bin(acc >> (j + 1)).count("1")
        if higher % 2:
            sign = -sign
        acc ^= low  # insert or cancel (e_j^2 = 1)
    return acc, sign


def _is_zero(v):
    if isinstance(v, (Scalar, FieldScalar)):
        return v.is_zero()
    return v == 0


class Spinor:
    """Positive chirality spinor: 8 components (Scalar/FieldScalar)."""

    __slots__ = ("comps",)

    def __init__(self, comps=None):
        if comps is None:
            comps = [ZERO] * 8
        if len(comps) != 8:
            raise ValueError("need 8 components")
        self.comps = list(comps)

    @staticmethod
    def unit():
        """The vacuum spinor (constant function 1 in degree 0)."""
        c = [ZERO] * 8
        c[0] = ONE
        return Spinor(c)

    @staticmethod
    def basis(mask):
        c = [ZERO] * 8
        c[mask] = ONE
        return Spinor(c)

    def is_zero(self):
        return all(_is_zero(c) for c in self.comps)

    def __add__(self, other):
        return Spinor([a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other):
        return Spinor([a - b for a, b in zip(self.comps, other.comps)])

    def __neg__(self):
        return Spinor([-a for a in self.comps])

    def scale(self, z):
        return Spinor([z * c for c in self.comps])

    def partial(self, j):
        out = []
        for c in self.comps:
            if isinstance(c, FieldScalar):
                out.append(c.partial(j))
            else:
                out.append(ZERO)
        return Spinor(out)

    def __eq__(self, other):
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("unhashable")


def act_matrix(mat, spinor):
    out = []
    for r in range(8):
        acc = None
        for c in range(8):
            e = mat[r][c]
            if isinstance(e, Scalar) and e.is_zero():
                continue
            sc = spinor.comps[c]
            if _is_zero(sc):
                continue
            term = e * sc
            acc = term if acc is None else acc + term
        out.append(acc if acc is not None else ZERO)
    return Spinor(out)


def act(x, spinor):
    """Clifford action of a CliffordElement or real-basis Form."""
    if isinstance(x, Form):
        x = CliffordElement.from_form(x)
    return act_matrix(x.matrix(), spinor)


_MINUS_HALF = -(ONE / Scalar(2))


def so6_embed(endo):
    """Spin lift (1/2) sum_{i<j} g(A e_i, e_j) e^j e^i of a skew
    endomorphism in the orthonormal frame (column convention)."""
    out = CliffordElement()
    for i in range(6):
        for j in range(i + 1, 6):
            a = endo[j][i]  # g(A e_i, e_j)
            if _is_zero(a):
                continue
            # e^j e^i = -e_{ij} for i < j
            out._add((1 << i) | (1 << j), _MINUS_HALF * a)
    return out
