"""Gauge Lie algebra data and Lie-algebra-valued forms.

A LieAlgebra is a finite basis with exact structure constants and an
invariant pairing Gram matrix.  The pairing is minus the trace form on
the compact factor (positive there) and minus the restriction of the
trace pairing on the frame factor (negative on the unitary block); the
overall string-coupling scale is absorbed into the Grams.

Lie-algebra-valued p-forms are stored as a list of Forms, one per basis
element.
"""

from __future__ import annotations

from .scalars import Scalar, ZERO, ONE, HALF, I, rat
from .fourier import FieldScalar
from .forms import Form
from . import linalg


class LieAlgebra:
    """Basis, structure constants and invariant pairing."""

    def __init__(self, name, dim, brackets, gram):
        # brackets: {(a, b): {c: Scalar}} for a < b, extended by
        # antisymmetry; gram: dim x dim Scalar matrix
        self.name = name
        self.dim = dim
        self.brackets = brackets
        self.gram = gram
        self._gram_inv = None

    def gram_inverse(self):
        if self._gram_inv is None:
            self._gram_inv = linalg.inverse(self.gram)
        return self._gram_inv

    def pair_dual(self, vals):
        """Element whose pairing against the basis gives vals."""
        if all(_zero(v) for v in vals):
            return self.zero_elt()
        ginv = self.gram_inverse()
        out = []
        for a in range(self.dim):
            acc = None
            for b in range(self.dim):
                z = ginv[a][b]
                if z.is_zero() or _zero(vals[b]):
                    continue
                term = z * vals[b]
                acc = term if acc is None else acc + term
            out.append(acc if acc is not None else ZERO)
        return out

    def bracket_basis(self, a, b):
        """[T_a, T_b] as {c: Scalar}."""
        if a == b:
            return {}
        if a < b:
            return self.brackets.get((a, b), {})
        neg = self.brackets.get((b, a), {})
        return {c: -z for c, z in neg.items()}

    def bracket(self, x, y):
        """Bracket of coefficient vectors (entries Scalar/FieldScalar)."""
        out = [None] * self.dim
        for a in range(self.dim):
            xa = x[a]
            if _zero(xa):
                continue
            for b in range(self.dim):
                yb = y[b]
                if _zero(yb):
                    continue
                for c, z in self.bracket_basis(a, b).items():
                    term = z * xa * yb
                    out[c] = term if out[c] is None else out[c] + term
        return [v if v is not None else ZERO for v in out]

    def pair(self, x, y):
        """Invariant pairing of coefficient vectors."""
        out = None
        for a in range(self.dim):
            xa = x[a]
            if _zero(xa):
                continue
            for b in range(self.dim):
                g = self.gram[a][b]
                if g.is_zero() or _zero(y[b]):
                    continue
                term = g * xa * y[b]
                out = term if out is None else out + term
        return out if out is not None else ZERO

    def is_zero_elt(self, x):
        return all(_zero(v) for v in x)

    def zero_elt(self):
        return [ZERO] * self.dim


def _zero(v):
    if isinstance(v, (Scalar, FieldScalar)):
        return v.is_zero()
    return v == 0


def check_invariance(g):
    """c([x,y],z) + c(y,[x,z]) = 0 on all basis triples."""
    for a in range(g.dim):
        for b in range(g.dim):
            for c in range(g.dim):
                x = [ONE if i == a else ZERO for i in range(g.dim)]
                y = [ONE if i == b else ZERO for i in range(g.dim)]
                z = [ONE if i == c else ZERO for i in range(g.dim)]
                lhs = g.pair(g.bracket(x, y), z) + g.pair(y, g.bracket(x, z))
                if not lhs.is_zero():
                    return False
    return True


def abelian_imaginary():
    """One-dimensional algebra of imaginary scalars i*R.

    Basis element is the imaginary unit; minus the trace form on u(1)
    gives pairing +1 on it.
    """
    return LieAlgebra("u1", 1, {}, [[ONE]])


def su2():
    """Three-dimensional compact algebra with [T1,T2] = 2 T3 cyclic,
    pairing c(Ta, Tb) = 2 delta (minus the 2x2 trace form)."""
    br = {
        (0, 1): {2: Scalar(2)},
        (1, 2): {0: Scalar(2)},
        (0, 2): {1: Scalar(-2)},
    }
    gram = [[Scalar(2) if a == b else ZERO for b in range(3)] for a in range(3)]
    return LieAlgebra("su2", 3, br, gram)


def _u3_basis_real():
    """Real 6x6 matrices for the unitary algebra of the flat structure.

    Complex u = A + iB acts on (x, y) blocks as [[A, -B], [B, A]].
    Basis: i E_jj, then E_jk - E_kj and i(E_jk + E_kj) for j < k.
    """
    mats = []

    def embed(a_rows, b_rows):
        m = [[ZERO] * 6 for _ in range(6)]
        for r in range(3):
            for c in range(3):
                m[r][c] = a_rows[r][c]
                m[r][c + 3] = -b_rows[r][c]
                m[r + 3][c] = b_rows[r][c]
                m[r + 3][c + 3] = a_rows[r][c]
        return m

    z3 = [[ZERO] * 3 for _ in range(3)]

    def unit(r, c):
        m = [[ZERO] * 3 for _ in range(3)]
        m[r][c] = ONE
        return m

    for j in range(3):
        mats.append(embed(z3, unit(j, j)))  # i E_jj
    for j in range(3):
        for k in range(j + 1, 3):
            a = [[unit(j, k)[r][c] - unit(k, j)[r][c] for c in range(3)]
                 for r in range(3)]
            mats.append(embed(a, z3))  # E_jk - E_kj
    for j in range(3):
        for k in range(j + 1, 3):
            b = [[unit(j, k)[r][c] + unit(k, j)[r][c] for c in range(3)]
                 for r in range(3)]
            mats.append(embed(z3, b))  # i (E_jk + E_kj)
    return mats


def u3():
    """Unitary algebra of the flat structure as real 6x6 matrices.

    Pairing is the trace form c(U, V) = (1/2) tr6(U V), negative
    definite on this skew-symmetric block.
    """
    mats = _u3_basis_real()
    n = len(mats)
    flat = [[m[r][c] for m in mats] for r in range(6) for c in range(6)]
    br = {}
    for a in range(n):
        for b in range(a + 1, n):
            comm = _mat_sub(_mat_mul(mats[a], mats[b]),
                            _mat_mul(mats[b], mats[a]))
            rhs = [comm[r][c] for r in range(6) for c in range(6)]
            coeffs = _solve_overdetermined(flat, rhs)
            entry = {c: z for c, z in enumerate(coeffs) if not z.is_zero()}
            if entry:
                br[(a, b)] = entry
    gram = [[HALF * _trace6(_mat_mul(mats[a], mats[b])) for b in range(n)]
            for a in range(n)]
    alg = LieAlgebra("u3", n, br, gram)
    alg.matrices = mats
    return alg


def _mat_mul(a, b):
    return [[sum((a[r][t] * b[t][c] for t in range(6)), ZERO)
             for c in range(6)] for r in range(6)]


def _mat_sub(a, b):
    return [[a[r][c] - b[r][c] for c in range(6)] for r in range(6)]


def _trace6(m):
    return sum((m[j][j] for j in range(6)), ZERO)


def _solve_overdetermined(cols, rhs):
    """Solve sum_c x_c cols[:,c] = rhs exactly; raises if inconsistent."""
    n = len(cols[0])
    aug = [cols[r][:] + [rhs[r]] for r in range(len(cols))]
    rr, pivots = linalg.row_reduce(aug)
    if n in pivots:
        raise ValueError("inconsistent system")
    x = [ZERO] * n
    for r, pc in enumerate(pivots):
        x[pc] = rr[r][n]
    # verify (columns may be rank deficient)
    for r in range(len(cols)):
        acc = ZERO
        for c in range(n):
            acc = acc + cols[r][c] * x[c]
        if acc != rhs[r]:
            raise ValueError("inconsistent system")
    return x


def direct_sum(*algebras):
    """Direct sum with block-diagonal brackets and pairing."""
    dim = sum(g.dim for g in algebras)
    brackets = {}
    gram = [[ZERO] * dim for _ in range(dim)]
    off = 0
    for g in algebras:
        for (a, b), entry in g.brackets.items():
            brackets[(a + off, b + off)] = {c + off: z for c, z in entry.items()}
        for a in range(g.dim):
            for b in range(g.dim):
                gram[a + off][b + off] = g.gram[a][b]
        off += g.dim
    name = "+".join(g.name for g in algebras)
    out = LieAlgebra(name, dim, brackets, gram)
    out.parts = list(algebras)
    return out


# -- Lie-algebra-valued forms -----------------------------------------

def lf_zero(g, degree):
    return [Form.zero(degree) for _ in range(g.dim)]


def lf_from_elt(g, r):
    """Coefficient vector -> Lie-valued 0-form."""
    return [Form.scalar(v) for v in r]


def lf_to_elt(x):
    """Lie-valued 0-form -> coefficient vector."""
    out = []
    for a in x:
        if a.degree != 0:
            raise ValueError("not a 0-form")
        out.append(a.get(()))
    return out


def lf_add(x, y):
    return [a + b for a, b in zip(x, y)]


def lf_sub(x, y):
    return [a - b for a, b in zip(x, y)]


def lf_scale(x, z):
    return [a * z for a in x]


def lf_d(x):
    return [a.d() for a in x]


def lf_contract(x, vec):
    return [a.contract(vec) for a in x]


def lf_lie(x, vec):
    return [a.lie(vec) for a in x]


def lf_is_zero(x):
    return all(a.is_zero() for a in x)


def lf_wedge_bracket(g, x, y):
    """[x ^ y]_c = sum f_ab^c x_a ^ y_b (graded bracket of Lie-valued
    forms)."""
    deg = x[0].degree + y[0].degree
    out = [Form.zero(deg) for _ in range(g.dim)]
    for a in range(g.dim):
        if x[a].is_zero():
            continue
        for b in range(g.dim):
            if y[b].is_zero():
                continue
            for c, z in g.bracket_basis(a, b).items():
                out[c] = out[c] + x[a].wedge(y[b]) * z
    return out


def lf_pair_wedge(g, x, y):
    """c(x ^ y) as an ordinary form."""
    deg = x[0].degree + y[0].degree
    out = Form.zero(deg)
    for a in range(g.dim):
        if x[a].is_zero():
            continue
        for b in range(g.dim):
            z = g.gram[a][b]
            if z.is_zero() or y[b].is_zero():
                continue
            out = out + x[a].wedge(y[b]) * z
    return out


def lf_pair_elt(g, r, x):
    """c(r, x) for a Lie element r (coefficients) and Lie-valued form x."""
    deg = x[0].degree
    out = Form.zero(deg)
    for a in range(g.dim):
        if _zero(r[a]):
            continue
        for b in range(g.dim):
            z = g.gram[a][b]
            if z.is_zero() or x[b].is_zero():
                continue
            out = out + x[b] * (z * r[a])
    return out


def curvature(g, conn):
    """F = d theta + (1/2)[theta ^ theta] for a Lie-valued 1-form."""
    return lf_add(lf_d(conn), lf_scale(lf_wedge_bracket(g, conn, conn), HALF))


def d_theta(g, conn, x):
    """Covariant exterior derivative d x + [theta ^ x]."""
    return lf_add(lf_d(x), lf_wedge_bracket(g, conn, x))


def elt_bracket_form(g, r, x):
    """[r, x] for a Lie element r and a Lie-valued form x."""
    deg = x[0].degree
    out = [Form.zero(deg) for _ in range(g.dim)]
    for a in range(g.dim):
        if _zero(r[a]):
            continue
        for b in range(g.dim):
            if x[b].is_zero():
                continue
            for c, z in g.bracket_basis(a, b).items():
                out[c] = out[c] + x[b] * (z * r[a])
    return out


def endo_extractor(mats):
    """Exact coordinates onto the span of constant 6x6 matrices.

    Returns extract(endo) -> coefficient list; raises ValueError when
    the endomorphism (Scalar or FieldScalar entries) leaves the span.
    """
    n = len(mats)
    flat = [[m[r][c] for r in range(6) for c in range(6)] for m in mats]
    gramm = [[sum((flat[a][k] * flat[b][k] for k in range(36)), ZERO)
              for b in range(n)] for a in range(n)]
    ginv = linalg.inverse(gramm)
    lmat = [[sum((ginv[a][b] * flat[b][k] for b in range(n)), ZERO)
             for k in range(36)] for a in range(n)]

    def extract(endo, check=True):
        vec = [endo[r][c] for r in range(6) for c in range(6)]
        coeffs = []
        for a in range(n):
            acc = None
            for k in range(36):
                la = lmat[a][k]
                if la.is_zero() or _zero(vec[k]):
                    continue
                term = la * vec[k]
                acc = term if acc is None else acc + term
            coeffs.append(acc if acc is not None else ZERO)
        if check:
            for k in range(36):
                recon = None
                for a in range(n):
                    fa = flat[a][k]
                    if fa.is_zero() or _zero(coeffs[a]):
                        continue
                    term = fa * coeffs[a]
                    recon = term if recon is None else recon + term
                delta = vec[k] - recon if recon is not None else vec[k]
                if not _zero(delta):
                    raise ValueError("endomorphism outside the span")
        return coeffs

    return extract
