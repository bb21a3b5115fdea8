"""Seeded random data for the verification suites.

All generators take an explicit random.Random so runs are reproducible;
coefficients are small exact rationals (denominators up to 8) and trig
modes stay within |k|_inf <= 2, keeping products well inside the degree
cap.
"""

from __future__ import annotations

from itertools import combinations
import random

from gmpy2 import mpq

from .scalars import Scalar, ZERO
from .fourier import FieldScalar
from .forms import Form, DIM


def rng_from_seed(seed):
    return random.Random(seed)


def rand_rational(rng, num_max=4, den_max=8):
    num = rng.randint(-num_max, num_max)
    den = rng.randint(1, den_max)
    return mpq(num, den)


def rand_scalar(rng, complex_=False):
    s = Scalar(rand_rational(rng))
    if complex_:
        s = s + Scalar(0, 0, rand_rational(rng))
    return s


def rand_field(rng, n_modes=2, deg=2, complex_=False, allow_constant=True):
    out = FieldScalar()
    if allow_constant and rng.random() < 0.5:
        out = out + FieldScalar.constant(rand_scalar(rng, complex_))
    for _ in range(n_modes):
        k = tuple(rng.randint(-deg, deg) for _ in range(DIM))
        out = out + FieldScalar.mode(k, rand_scalar(rng, complex_),
                                     rand_scalar(rng, complex_))
    return out


def rand_form(rng, degree, n_terms=3, complex_=False, constant=False):
    keys = list(combinations(range(DIM), degree))
    out = Form.zero(degree)
    for _ in range(n_terms):
        key = keys[rng.randrange(len(keys))]
        if constant:
            coeff = rand_scalar(rng, complex_)
        else:
            coeff = rand_field(rng, n_modes=1, complex_=complex_)
        out = out + Form.monomial(key, coeff)
    return out


def rand_vector(rng, n_modes=1):
    return [rand_field(rng, n_modes=n_modes) for _ in range(DIM)]


def rand_constant_vector(rng):
    return [rand_scalar(rng) for _ in range(DIM)]


def rand_covector_ints(rng, bound=3):
    while True:
        v = [rng.randint(-bound, bound) for _ in range(DIM)]
        if any(v):
            return [Scalar(x) for x in v]


def axis_covectors():
    out = []
    for j in range(DIM):
        v = [ZERO] * DIM
        v[j] = Scalar(1)
        out.append(v)
    return out


def rand_lie_coeffs(rng, dim, field=True, n_modes=1):
    if field:
        return [rand_field(rng, n_modes=n_modes) for _ in range(dim)]
    return [rand_scalar(rng) for _ in range(dim)]


def rand_spinor(rng, field=False):
    from .clifford import Spinor
    if field:
        comps = [rand_field(rng, n_modes=1, complex_=True) for _ in range(8)]
    else:
        comps = [rand_scalar(rng, complex_=True) for _ in range(8)]
    return Spinor(comps)
