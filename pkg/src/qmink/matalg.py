"""Dense matrices over the coefficient field (and over noncommutative
polynomials), with the tensor-leg machinery used for R-matrices.

Index conventions: a 4x4 matrix acting on C^2 (x) C^2 has row/column index
``2*i + j`` for the pair ``(i, j)``; ``(A (x) B)[ij, kl] = A[i, k] * B[j, l]``.
An 8x8 matrix on three legs uses ``4*i + 2*j + k``.
"""

from __future__ import annotations

from itertools import product

from .coeff import Coefficient, ONE, ZERO, const, PoleError

__all__ = [
    "Matrix",
    "ParamMatrix",
    "SingularMatrixError",
    "ProjectorError",
    "identity",
    "zeros",
    "perm",
    "kron",
    "leg_embed",
    "partial_transpose",
    "conj_transpose",
    "inverse",
    "projectors_from_minpoly",
    "symbolic_rank",
    "diag",
]


class SingularMatrixError(PoleError):
    pass


class ProjectorError(ValueError):
    pass


def _is_zero(x) -> bool:
    return not x


class Matrix:
    """Square matrix; entries are Coefficients or NCPolys.

    Products keep the left-to-right order of entries, so matrices of
    noncommuting entries multiply correctly.
    """

    __slots__ = ("rows", "n")

    def __init__(self, rows):
        self.rows = tuple(tuple(const(x) if isinstance(x, int) else x for x in r) for r in rows)
        self.n = len(self.rows)
        if any(len(r) != self.n for r in self.rows):
            raise ValueError("matrix must be square")

    @property
    def tag(self) -> str:
        return {2: "2", 4: "2x2", 8: "2x2x2"}.get(self.n, str(self.n))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __iter__(self):
        return iter(self.rows)

    def entries(self):
        for i, j in product(range(self.n), repeat=2):
            yield (i, j), self.rows[i][j]

    def map(self, fn) -> "Matrix":
        return Matrix([[fn(x) for x in r] for r in self.rows])

    def is_zero(self) -> bool:
        return all(_is_zero(x) for r in self.rows for x in r)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, Matrix) or other.n != self.n:
            return NotImplemented if not isinstance(other, Matrix) else False
        return all(_is_zero(a - b) for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb))

    def __hash__(self):
        return hash(tuple(hash(x) for r in self.rows for x in r))

    def __add__(self, other):
        return Matrix([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return Matrix([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __neg__(self):
        return Matrix([[-a for a in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            n = self.n
            cols = [[other.rows[k][j] for k in range(n)] for j in range(n)]
            out = []
            for i in range(n):
                row = self.rows[i]
                new = []
                for j in range(n):
                    acc = None
                    col = cols[j]
                    for k in range(n):
                        a = row[k]
                        b = col[k]
                        if _is_zero(a) or _is_zero(b):
                            continue
                        t = a * b if not isinstance(a, Coefficient) or isinstance(b, Coefficient) else b.__rmul__(a)
                        acc = t if acc is None else acc + t
                    new.append(ZERO if acc is None else acc)
                out.append(new)
            return Matrix(out)
        c = const(other) if isinstance(other, int) else other
        return Matrix([[a * c if not isinstance(a, Coefficient) or isinstance(c, Coefficient) else c.__rmul__(a)
                        for a in r] for r in self.rows])

    def __rmul__(self, other):
        c = const(other) if isinstance(other, int) else other
        return Matrix([[a.__rmul__(c) if not isinstance(a, Coefficient) else c * a for a in r] for r in self.rows])

    def __truediv__(self, c):
        inv = const(c).inverse()
        return self * inv

    def __pow__(self, k: int):
        out = identity(self.n)
        for _ in range(k):
            out = out * self
        return out

    def transpose(self) -> "Matrix":
        return Matrix([[self.rows[j][i] for j in range(self.n)] for i in range(self.n)])

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def conjugate(self, ctx=None) -> "Matrix":
        return self.map(lambda x: x.conjugate(ctx))

    def dagger(self, ctx=None) -> "Matrix":
        return self.transpose().conjugate(ctx)

    def trace(self):
        acc = self.rows[0][0]
        for i in range(1, self.n):
            acc = acc + self.rows[i][i]
        return acc

    def substitute(self, mapping) -> "Matrix":
        return self.map(lambda x: x.substitute(mapping) if isinstance(x, Coefficient) else x.substitute_parameters(mapping))

    def block(self, i: int, j: int) -> "Matrix":
        """2x2 block ``(i, j)`` of a 4x4 matrix: rows ``2i..2i+1``, cols ``2j..2j+1``."""
        if self.n != 4:
            raise ValueError("blocks are defined for 4x4 matrices")
        return Matrix([[self.rows[2 * i + a][2 * j + b] for b in range(2)] for a in range(2)])

    def is_scalar(self) -> bool:
        d = self.rows[0][0]
        return all(_is_zero(self.rows[i][j] - (d if i == j else ZERO))
                   for i, j in product(range(self.n), repeat=2))

    def variables(self) -> set:
        out = set()
        for r in self.rows:
            for x in r:
                if isinstance(x, Coefficient):
                    out |= x.variables()
        return out

    def to_strings(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.rows]

    def __str__(self):
        from .parse import format_matrix

        return format_matrix(self)

    __repr__ = __str__

    # -- field operations ---------------------------------------------------
    def inverse(self, log: list | None = None) -> "Matrix":
        return inverse(self, log)

    def rank(self, log: list | None = None) -> int:
        return symbolic_rank(self, log=log)


ParamMatrix = Matrix


def identity(n: int) -> Matrix:
    return Matrix([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])


def zeros(n: int) -> Matrix:
    return Matrix([[ZERO] * n for _ in range(n)])


def diag(*values) -> Matrix:
    n = len(values)
    return Matrix([[const(values[i]) if i == j else ZERO for j in range(n)] for i in range(n)])


def perm() -> Matrix:
    """Flip of C^2 (x) C^2: ``P[ij, kl] = delta_il delta_jk``."""
    return Matrix([[ONE if (i == l and j == k) else ZERO
                    for k in range(2) for l in range(2)]
                   for i in range(2) for j in range(2)])


def kron(a: Matrix, b: Matrix) -> Matrix:
    n, m = a.n, b.n
    rows = []
    for i in range(n):
        for j in range(m):
            row = []
            for k in range(n):
                for l in range(m):
                    x, y = a.rows[i][k], b.rows[j][l]
                    if _is_zero(x) or _is_zero(y):
                        row.append(ZERO)
                    elif isinstance(x, Coefficient) and not isinstance(y, Coefficient):
                        row.append(y.__rmul__(x))
                    else:
                        row.append(x * y)
            rows.append(row)
    return Matrix(rows)


_LEGS = {"12": (0, 1, 2), "13": (0, 2, 1), "23": (1, 2, 0)}


def leg_embed(m: Matrix, legs: str) -> Matrix:
    """Embed a 4x4 two-leg operator into three legs, identity on the third."""
    if m.n != 4:
        raise ValueError("leg_embed expects a 4x4 matrix")
    a, b, c = _LEGS[str(legs)]
    rows = []
    for I in product(range(2), repeat=3):
        row = []
        for J in product(range(2), repeat=3):
            if I[c] != J[c]:
                row.append(ZERO)
            else:
                row.append(m.rows[2 * I[a] + I[b]][2 * J[a] + J[b]])
        rows.append(row)
    return Matrix(rows)


def partial_transpose(m: Matrix, leg: int) -> Matrix:
    """Transpose the indices of one tensor factor of a 4x4 matrix."""
    if m.n != 4:
        raise ValueError("partial_transpose expects a 4x4 matrix")
    out = [[None] * 4 for _ in range(4)]
    for i, j, k, l in product(range(2), repeat=4):
        if leg == 1:
            out[2 * i + j][2 * k + l] = m.rows[2 * k + j][2 * i + l]
        elif leg == 2:
            out[2 * i + j][2 * k + l] = m.rows[2 * i + l][2 * k + j]
        else:
            raise ValueError("leg must be 1 or 2")
    return Matrix(out)


def partial_trace2(m: Matrix) -> Matrix:
    """Trace over the second factor of a 4x4 matrix."""
    return Matrix([[m.rows[2 * i][2 * k] + m.rows[2 * i + 1][2 * k + 1] for k in range(2)] for i in range(2)])


def conj_transpose(m: Matrix, ctx=None) -> Matrix:
    return m.dagger(ctx)


def inverse(m: Matrix, log: list | None = None) -> Matrix:
    """Gauss-Jordan inverse over the rational-function field.

    Each pivot used is appended to ``log`` (as a string) since inverting it
    silently assumes it is nonzero at the parameter values of interest.
    """
    n = m.n
    a = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(m.rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise SingularMatrixError("matrix is symbolically singular")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        if log is not None and not p.is_constant():
            log.append(str(p))
        inv = p.inverse()
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return Matrix([row[n:] for row in a])


def symbolic_rank(m: Matrix, ctx=None, log: list | None = None) -> int:
    """Rank over the field of rational functions (generic parameter values)."""
    a = [list(r) for r in m.rows]
    n = m.n
    rank = 0
    for col in range(n):
        piv = next((r for r in range(rank, n) if a[r][col]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        if log is not None and not p.is_constant():
            log.append(str(p))
        inv = p.inverse()
        for r in range(rank + 1, n):
            if a[r][col]:
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


def projectors_from_minpoly(rhat: Matrix, eigenvalues) -> tuple[Matrix, Matrix]:
    """Spectral projectors of ``rhat`` from its two eigenvalues.

    Requires ``(rhat - e1)(rhat - e2) = 0`` and ``e1 != e2``; returns
    ``(P+, P-)`` with ``rhat = e1 P+ + e2 P-``.
    """
    e1, e2 = (const(e) for e in eigenvalues)
    if not (e1 - e2):
        raise ProjectorError("eigenvalues coincide")
    one = identity(rhat.n)
    a = rhat - one * e1
    b = rhat - one * e2
    if not (a * b).is_zero():
        raise ProjectorError("minimal polynomial check failed")
    return b / (e1 - e2), a / (e2 - e1)
