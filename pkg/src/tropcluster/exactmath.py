"""Exact rational and integer linear algebra.

Everything here is over Fraction (arbitrary precision); no floating point.
Matrices are tiny throughout (a few dozen columns at most), so all routines
are plain dense Gaussian elimination / row reduction.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


class SingularMatrix(Exception):
    """Raised when inverting a square matrix with determinant zero."""


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class QMatrix:
    """Immutable dense matrix with Fraction entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable]):
        rows = tuple(tuple(_frac(x) for x in row) for row in entries)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged rows")
        self.entries = rows
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "QMatrix":
        cols = [list(c) for c in columns]
        return cls([[cols[j][i] for j in range(len(cols))] for i in range(len(cols[0]))])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, QMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"QMatrix({[[str(x) for x in row] for row in self.entries]})"

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> "QMatrix":
        return QMatrix(zip(*self.entries)) if self.entries else self

    def __neg__(self) -> "QMatrix":
        return QMatrix([[-x for x in row] for row in self.entries])

    def __add__(self, other: "QMatrix") -> "QMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return QMatrix(
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ]
        )

    def __mul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = other.transpose().entries
        return QMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.entries]
        )

    def matvec(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise ValueError("shape mismatch")
        return tuple(sum(a * _frac(b) for a, b in zip(row, v)) for row in self.entries)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.entries for x in row)


def rref(m: QMatrix) -> tuple[QMatrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    a = [list(row) for row in m.entries]
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        pivot = next((i for i in range(r, m.rows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return QMatrix(a), pivots


def rank(m: QMatrix) -> int:
    return len(rref(m)[1])


def invert(m: QMatrix) -> QMatrix:
    """Exact inverse of a square matrix; raises SingularMatrix if det = 0."""
    if m.rows != m.cols:
        raise SingularMatrix("matrix is not square")
    n = m.rows
    aug = QMatrix([list(m.entries[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)])
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("determinant is zero")
    return QMatrix([row[n:] for row in red.entries])


def kernel_basis(m: QMatrix) -> list[tuple]:
    """Basis of the right kernel; len = cols - rank."""
    red, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -red.entries[r][f]
        basis.append(tuple(v))
    return basis


def smith_normal_form(m) -> tuple[QMatrix, QMatrix, QMatrix]:
    """Smith normal form of an integer matrix (QMatrix or nested lists).

    Returns (U, D, V) with U*m*V = D diagonal, d_1 | d_2 | ..., and U, V
    unimodular.
    """
    if isinstance(m, QMatrix):
        if not m.is_integral():
            raise ValueError("Smith normal form needs an integer matrix")
        m = m.entries
    a = [[int(x) for x in row] for row in m]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    u = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    v = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, f):
        for row in a:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(nr, nc):
        # find a nonzero pivot in the remaining block
        pos = next(
            ((i, j) for i in range(t, nr) for j in range(t, nc) if a[i][j] != 0), None
        )
        if pos is None:
            break
        swap_rows(t, pos[0])
        swap_cols(t, pos[1])
        while True:
            done = True
            for i in range(t + 1, nr):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    add_row(t, i, -q)
                    if a[i][t] != 0:
                        swap_rows(t, i)
                    done = False
            for j in range(t + 1, nc):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    add_col(t, j, -q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                    done = False
            if done:
                # pivot must divide every entry of the remaining block
                offender = next(
                    (
                        (i, j)
                        for i in range(t + 1, nr)
                        for j in range(t + 1, nc)
                        if a[i][j] % a[t][t] != 0
                    ),
                    None,
                )
                if offender is None:
                    break
                add_row(offender[0], t, 1)
        if a[t][t] < 0:
            negate_row(t)
        t += 1
    return QMatrix(u), QMatrix(a), QMatrix(v)


class IntLattice:
    """Sublattice of Z^d given by a list of integer generator vectors."""

    __slots__ = ("generators", "dim")

    def __init__(self, generators: Iterable[Sequence[int]], dim: int | None = None):
        gens = tuple(tuple(int(x) for x in g) for g in generators)
        if gens:
            d = len(gens[0])
            if any(len(g) != d for g in gens):
                raise ValueError("generators of mixed dimension")
        else:
            d = dim if dim is not None else 0
        if dim is not None and gens and dim != d:
            raise ValueError("dimension mismatch")
        self.generators = gens
        self.dim = d if gens else (dim or 0)


def is_saturated(lattice: IntLattice, ambient_dim: int) -> bool:
    """True iff (L tensor Q) intersect Z^ambient_dim equals L.

    Decided by Smith normal form: saturated iff every nonzero elementary
    divisor is 1.
    """
    if lattice.generators and lattice.dim != ambient_dim:
        raise ValueError("generator dimension does not match ambient dimension")
    if not lattice.generators:
        return True
    _, d, _ = smith_normal_form(lattice.generators)
    for i in range(min(d.rows, d.cols)):
        if d[i, i] not in (0, 1):
            return False
    return True


def _fourier_motzkin(ineqs: list[tuple[tuple, Fraction]], nvars: int) -> bool:
    """Feasibility of {a . x + c >= 0} over the rationals."""
    for _ in range(nvars):
        pos, neg, rest = [], [], []
        for coeffs, const in ineqs:
            lead = coeffs[0]
            if lead > 0:
                pos.append((coeffs, const))
            elif lead < 0:
                neg.append((coeffs, const))
            else:
                rest.append((coeffs[1:], const))
        # x >= -(tail+c)/lead from pos, x <= ... from neg; combine pairs
        for pc, pk in pos:
            for nc, nk in neg:
                coeffs = tuple(
                    -nc[0] * a + pc[0] * b for a, b in zip(pc[1:], nc[1:])
                )
                rest.append((coeffs, -nc[0] * pk + pc[0] * nk))
        ineqs = rest
    return all(const >= 0 for _, const in ineqs)


def nonnegative_combination(columns: Sequence[Sequence], target: Sequence) -> bool:
    """Whether target lies in the rational cone generated by the columns."""
    cols = [tuple(_frac(x) for x in c) for c in columns]
    t = tuple(_frac(x) for x in target)
    if all(x == 0 for x in t):
        return True
    if not cols:
        return False
    a = QMatrix.from_columns(cols)
    aug = QMatrix([list(row) + [ti] for row, ti in zip(a.entries, t)])
    red, pivots = rref(aug)
    if len(cols) in pivots:
        return False  # inconsistent system
    # particular solution + kernel parametrization
    part = [Fraction(0)] * len(cols)
    for r, c in enumerate(pivots):
        part[c] = red.entries[r][len(cols)]
    kern = kernel_basis(a)
    if not kern:
        return all(x >= 0 for x in part)
    ineqs = [
        (tuple(k[i] for k in kern), part[i]) for i in range(len(cols))
    ]
    return _fourier_motzkin(ineqs, len(kern))
