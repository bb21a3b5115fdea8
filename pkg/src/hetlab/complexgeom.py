"""Complex-structure machinery on the 6-torus.

Holds the standard Kaehler data, the construction of a complex
structure from a decomposable complex volume form, contractions of
forms with vector-valued forms, and the degree-one structure map that
identifies (0,1)-forms with holomorphic tangent values against the
volume form (with its exact inverse).
"""

from __future__ import annotations

from itertools import combinations

from .scalars import Scalar, ZERO, ONE, HALF, I, rat
from .fourier import FieldScalar
from .forms import Form, Coframe, DIM
from . import linalg


class DegenerateOmega(Exception):
    """The complex volume form does not define a complex structure."""


# -- standard flat structure ------------------------------------------

def dz(j):
    """dz_j = dx_j + i dy_j as a real-basis Form (j in 0..2)."""
    return Form.monomial((j,), ONE) + Form.monomial((j + 3,), I)


def dzbar(j):
    return Form.monomial((j,), ONE) + Form.monomial((j + 3,), -I)


def holo_vector(j):
    """d/dz_j frame components: (1/2)(d/dx_j - i d/dy_j)."""
    v = [ZERO] * DIM
    v[j] = HALF
    v[j + 3] = -I * HALF
    return v


def antiholo_vector(j):
    v = [ZERO] * DIM
    v[j] = HALF
    v[j + 3] = I * HALF
    return v


def standard_kaehler_form():
    out = Form.zero(2)
    for j in range(3):
        out = out + Form.monomial((j, j + 3), ONE)
    return out


def standard_volume_form():
    return dz(0).wedge(dz(1)).wedge(dz(2))


# -- complex structure from a (3,0) volume form -----------------------

def cx_from_omega(omega3):
    """Coframe and J matrix whose -i eigenspace kills the given 3-form.

    The antiholomorphic tangent space is {V : i_V omega3 = 0}; it must
    be 3-dimensional and transverse to its conjugate, else
    DegenerateOmega is raised.  Coefficients must be constant.
    """
    if omega3.cx:
        omega3 = omega3.to_real()
    for c in omega3.coeffs.values():
        if isinstance(c, FieldScalar):
            raise ValueError("cx_from_omega needs constant coefficients")
    # matrix of V -> i_V omega3 over the 15 2-form monomials
    keys2 = list(combinations(range(DIM), 2))
    rows = []
    for k2 in keys2:
        row = []
        for j in range(DIM):
            vec = [ZERO] * DIM
            vec[j] = ONE
            row.append(omega3.contract(vec).get(k2))
        rows.append(row)
    kern = linalg.kernel_basis(rows)
    if len(kern) != 3:
        raise DegenerateOmega("contraction kernel has dimension %d" % len(kern))
    conj_kern = [[x.conjugate() for x in v] for v in kern]
    # columns: antiholomorphic basis then conjugates; must span C^6
    bmat = [[kern[c][r] for c in range(3)] + [conj_kern[c][r] for c in range(3)]
            for r in range(DIM)]
    if linalg.rank(bmat) != DIM:
        raise DegenerateOmega("kernel meets its conjugate")
    target = [[-I * kern[c][r] for c in range(3)]
              + [I * conj_kern[c][r] for c in range(3)] for r in range(DIM)]
    # J B = B' with B' columns scaled by -i / +i  ... solve J = B' B^-1
    binv = linalg.inverse(bmat)
    jmat = linalg.matmul(target, binv)
    for r in range(DIM):
        for c in range(DIM):
            if not jmat[r][c].is_real():
                raise DegenerateOmega("complex structure is not real")
    j2 = linalg.matmul(jmat, jmat)
    for r in range(DIM):
        for c in range(DIM):
            want = -ONE if r == c else ZERO
            if j2[r][c] != want:
                raise DegenerateOmega("square is not minus identity")
    # (1,0)-coframe rows: left null space of the antiholomorphic basis
    ann = linalg.kernel_basis(linalg.transpose(
        [[bmat[r][c] for c in range(3)] for r in range(DIM)]))
    if len(ann) != 3:
        raise DegenerateOmega("no holomorphic coframe")
    cx_rows = [list(v) for v in ann]
    cx_rows += [[x.conjugate() for x in v] for v in ann]
    return Coframe(cx_rows, jmat), jmat


# -- vector-valued one- and two-forms ---------------------------------
# gamma is a list of (Form, vector) pairs meaning sum_k alpha_k (x) Z_k.

def vcontract(sigma, gamma):
    """sigma^gamma = sum_k alpha_k ^ i_{Z_k} sigma."""
    out = None
    for alpha, vec in gamma:
        term = alpha.wedge(sigma.contract(vec))
        out = term if out is None else out + term
    if out is None:
        return Form.zero(sigma.degree)
    return out


def gamma_conjugate(gamma):
    return [(alpha.conjugate(), [x.conjugate() if isinstance(x, (Scalar, FieldScalar))
                                 else Scalar(x) for x in vec])
            for alpha, vec in gamma]


def gamma_scale(gamma, z):
    return [(alpha * z, vec) for alpha, vec in gamma]


def oneform_compose_j(alpha, coframe=None):
    """alpha o J for a 1-form: +i on the (1,0) part, -i on (0,1)."""
    parts = alpha.pq_parts(coframe)
    out = Form.zero(1, alpha.cx)
    for (p, q), f in parts.items():
        out = out + f * (I if p == 1 else -I)
    return out


def gamma_compose_j(gamma, coframe=None):
    """Precompose the form leg with J (the endomorphism gamma o J)."""
    return [(oneform_compose_j(alpha, coframe), vec) for alpha, vec in gamma]


def gamma_apply_j_vector(gamma, jmat):
    """Postcompose the vector leg with J."""
    out = []
    for alpha, vec in gamma:
        nv = []
        for r in range(DIM):
            acc = None
            for c in range(DIM):
                if jmat[r][c].is_zero() or _entry_zero(vec[c]):
                    continue
                term = jmat[r][c] * vec[c]
                acc = term if acc is None else acc + term
            nv.append(acc if acc is not None else ZERO)
        out.append((alpha, nv))
    return out


# -- structure map between (0,q) tangent-valued forms and (2,q) forms --

def _cx_coords(form, keys):
    """Complex-basis coefficients of a form on the given monomials."""
    cx = form.to_cx()
    out = []
    for k in keys:
        c = cx.coeffs.get(k)
        out.append(c if c is not None else ZERO)
    return out


def _anti_monomial(idx):
    """Wedge of dzbar factors for strictly increasing idx in 0..2."""
    out = Form.scalar(ONE)
    for i in idx:
        out = out.wedge(dzbar(i))
    return out


class StructureMap:
    """Contraction against the volume form as a linear isomorphism.

    In antiholomorphic degree q it sends sum beta_k (x) Z_k (beta_k of
    type (0,q), Z_k holomorphic) to sum beta_k ^ i_{Z_k} omega3, an
    isomorphism onto the (2,q) forms; solve() is its exact inverse.
    """

    def __init__(self, omega3=None, anti_degree=1):
        self.omega3 = omega3 if omega3 is not None else standard_volume_form()
        q = anti_degree
        self.gamma_basis = [(idx, j)
                            for idx in combinations(range(3), q)
                            for j in range(3)]
        self.target_keys = [ab + tuple(i + 3 for i in idx)
                            for ab in combinations(range(3), 2)
                            for idx in combinations(range(3), q)]
        n = len(self.gamma_basis)
        assert len(self.target_keys) == n
        mat = [[ZERO] * n for _ in range(n)]
        for col, (idx, j) in enumerate(self.gamma_basis):
            img = vcontract(self.omega3, [(_anti_monomial(idx),
                                           holo_vector(j))])
            coords = _cx_coords(img, self.target_keys)
            for row in range(n):
                mat[row][col] = coords[row]
        self.matrix = mat
        self.inverse_matrix = linalg.inverse(mat)

    def apply(self, gamma):
        return vcontract(self.omega3, gamma)

    def solve(self, alpha):
        """gamma with omega3^gamma = alpha, for alpha of type (2,q)."""
        comps = _cx_coords(alpha, self.target_keys)
        n = len(self.gamma_basis)
        gamma = []
        for col, (idx, j) in enumerate(self.gamma_basis):
            coeff = None
            for row in range(n):
                z = self.inverse_matrix[col][row]
                if z.is_zero():
                    continue
                term = z * comps[row]
                coeff = term if coeff is None else coeff + term
            if coeff is None or _entry_zero(coeff):
                continue
            gamma.append((_anti_monomial(idx) * coeff, holo_vector(j)))
        return gamma


def jdot_holo_from_volume_dot(struct, omega3_dot):
    """(1,0)-part of the complex-structure variation tied to a
    variation of the volume form: 2i * solve of the (2,1) part."""
    a21 = omega3_dot.proj(2, 1)
    gamma = struct.solve(a21)
    return gamma_scale(gamma, Scalar(0, 0, 2))


def jdot_full(jdot10):
    """J-dot as a real tensor: the (1,0) piece plus its conjugate."""
    return jdot10 + gamma_conjugate(jdot10)


# -- endomorphism-valued helpers --------------------------------------

def endo_zero():
    return [[FieldScalar() for _ in range(DIM)] for _ in range(DIM)]


def endo_from_gamma(gamma):
    """6x6 matrix of the endomorphism sum alpha_k (x) Z_k.

    Column c holds the image of the frame vector d/dx_c.
    """
    out = [[None for _ in range(DIM)] for _ in range(DIM)]
    for alpha, vec in gamma:
        al = alpha.to_real() if alpha.cx else alpha
        for c in range(DIM):
            a_c = al.get((c,))
            if isinstance(a_c, Scalar) and a_c.is_zero():
                continue
            for r in range(DIM):
                term = a_c * vec[r]
                cur = out[r][c]
                out[r][c] = term if cur is None else cur + term
    for r in range(DIM):
        for c in range(DIM):
            if out[r][c] is None:
                out[r][c] = ZERO
    return out


def endo_mul(a, b):
    out = [[None] * DIM for _ in range(DIM)]
    for r in range(DIM):
        for c in range(DIM):
            acc = None
            for t in range(DIM):
                x = a[r][t]
                y = b[t][c]
                if _entry_zero(x) or _entry_zero(y):
                    continue
                term = x * y
                acc = term if acc is None else acc + term
            out[r][c] = acc if acc is not None else ZERO
    return out


def endo_add(a, b):
    return [[a[r][c] + b[r][c] for c in range(DIM)] for r in range(DIM)]


def endo_scale(a, z):
    return [[a[r][c] * z for c in range(DIM)] for r in range(DIM)]


def _entry_zero(x):
    if isinstance(x, (Scalar, FieldScalar)):
        return x.is_zero()
    return x == 0


def form2_to_endo(b2, gram_inv=None):
    """Raise the first index of a 2-form: the endomorphism u with
    g(u X, Y) = b2(X, Y); flat orthonormal metric by default.

    Matrix columns are inputs: (u X)_r = sum_c u[r][c] X_c, so
    u[r][c] = b2(e_c, e_r).
    """
    if b2.cx:
        b2 = b2.to_real()
    out = [[ZERO for _ in range(DIM)] for _ in range(DIM)]
    for (i, j), c in b2.coeffs.items():
        out[j][i] = out[j][i] + c
        out[i][j] = out[i][j] - c
    if gram_inv is not None:
        out = linalg.matmul(gram_inv, out)
    return out


def endo_to_form2(u):
    """Lower the index with the flat metric: b(X, Y) = g(u X, Y)."""
    out = Form.zero(2)
    for cidx in range(DIM):
        for didx in range(cidx + 1, DIM):
            val = u[didx][cidx]
            if not _entry_zero(val):
                out._add((cidx, didx), val)
    return out
