"""Seeds, mutation, Laurent expansion, dominance order and g-vectors.

A seed is stored as its fully extended exchange matrix: an (n+m)-square
integer matrix whose first n columns are the extended exchange matrix and
whose frozen columns complete it to a full-rank lattice map.  Mutation
directions are 1-based (k in 1..n), matching the JSON/CLI encoding.

g-vectors follow the MIN convention: the g-vector of a cluster variable is
the dominance-minimal exponent of its Laurent expansion.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Sequence

from .exactmath import QMatrix, nonnegative_combination


class FrozenDirection(Exception):
    """Mutation requested in a frozen (or out-of-range) direction."""


class AmbiguousMinimum(Exception):
    """Distinct dominance-minimal exponents survive; input was not the
    expansion of a cluster monomial."""


class OracleMismatch(Exception):
    """Two independent g-vector computations disagree."""


def _pos(x):
    return x if x > 0 else 0


def _neg(x):
    return x if x < 0 else 0


class SeedData:
    """Immutable seed: size data, fully extended exchange matrix, labels."""

    __slots__ = ("n", "m", "B", "d", "labels")

    def __init__(self, n: int, m: int, B, d: Sequence[int] | None = None,
                 labels: Sequence[str] | None = None):
        if not isinstance(B, QMatrix):
            B = QMatrix(B)
        N = n + m
        if B.rows != N or B.cols != N:
            raise ValueError("matrix must be (n+m)-square")
        if not B.is_integral():
            raise ValueError("exchange matrix must be integral")
        self.n = n
        self.m = m
        self.B = B
        self.d = tuple(int(x) for x in (d if d is not None else [1] * N))
        if len(self.d) != N or any(x <= 0 for x in self.d):
            raise ValueError("need n+m positive skew-symmetrizers")
        self.labels = tuple(labels) if labels is not None else tuple(
            f"A{i + 1}" for i in range(N)
        )
        if len(self.labels) != N:
            raise ValueError("need n+m labels")
        self._validate()

    def _validate(self):
        n, B, d = self.n, self.B, self.d
        # D . B_mut skew-symmetric on the mutable block
        for i in range(n):
            for j in range(n):
                if d[i] * B[i, j] != -d[j] * B[j, i]:
                    raise ValueError("mutable block is not skew-symmetrizable")
        # top-right block determined by the frozen rows and skew-symmetrizers
        for i in range(n):
            for j in range(n, self.size()):
                if d[j] * B[i, j] != -d[i] * B[j, i]:
                    raise ValueError(
                        "top-right block inconsistent with frozen rows"
                    )

    def size(self) -> int:
        return self.n + self.m

    def __eq__(self, other):
        return (
            isinstance(other, SeedData)
            and (self.n, self.m, self.B, self.d, self.labels)
            == (other.n, other.m, other.B, other.d, other.labels)
        )

    def __hash__(self):
        return hash((self.n, self.m, self.B, self.d, self.labels))

    def __repr__(self):
        return f"SeedData(n={self.n}, m={self.m})"

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "m": self.m,
                "B": [[int(x) for x in row] for row in self.B.entries],
                "d": list(self.d),
                "labels": list(self.labels),
            },
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "SeedData":
        data = json.loads(text)
        return cls(
            data["n"],
            data["m"],
            data["B"],
            data.get("d"),
            data.get("labels"),
        )


def _check_direction(seed: SeedData, k: int) -> int:
    """1-based mutable direction -> 0-based index."""
    if not 1 <= k <= seed.n:
        raise FrozenDirection(f"direction {k} is not mutable (n={seed.n})")
    return k - 1


def mu_matrices(seed: SeedData, k: int, sign: int) -> tuple[QMatrix, QMatrix]:
    """The tropical mutation matrices (MuA, MuX) for direction k.

    sign is +1 or -1, choosing the linear region.  MuA is the identity
    except row k, which is ([sign*b_jk]_+ ... -1 ... ); MuX is the identity
    except column k, which is ([-sign*b_kj]_+ ... -1 ...).  Both square of
    size n+m and self-inverse.
    """
    kk = _check_direction(seed, k)
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    N = seed.size()
    B = seed.B
    mua = [[Fraction(1) if i == j else Fraction(0) for j in range(N)] for i in range(N)]
    mux = [row[:] for row in mua]
    for j in range(N):
        if j == kk:
            mua[kk][kk] = Fraction(-1)
            mux[kk][kk] = Fraction(-1)
        else:
            mua[kk][j] = Fraction(_pos(sign * B[j, kk]))
            mux[j][kk] = Fraction(_pos(-sign * B[kk, j]))
    return QMatrix(mua), QMatrix(mux)


def mutate_matrix(seed: SeedData, k: int) -> SeedData:
    """Matrix mutation in direction k via the tropical mutation matrices.

    Both sign choices are computed and must agree.
    """
    _check_direction(seed, k)
    results = []
    for sign in (1, -1):
        mua, mux = mu_matrices(seed, k, sign)
        results.append((mux * seed.B.transpose() * mua).transpose())
    if results[0] != results[1]:
        raise OracleMismatch("the two sign choices of matrix mutation disagree")
    return SeedData(seed.n, seed.m, results[0], seed.d, seed.labels)


def mutate_seed(seed: SeedData, word: Iterable[int]) -> SeedData:
    for k in word:
        seed = mutate_matrix(seed, k)
    return seed


def mutate_gvector(g: Sequence, seed: SeedData, k: int) -> tuple:
    """Transport a g-vector from the frame of ``seed`` to that of mu_k(seed).

    Applies MuX with the sign of the k-th coordinate (the linear region of
    the piecewise-linear tropical mutation).
    """
    kk = _check_direction(seed, k)
    sign = 1 if g[kk] >= 0 else -1
    _, mux = mu_matrices(seed, k, sign)
    return tuple(int(x) for x in mux.matvec(list(g)))


def gvector_of_exchanged_variable(seed: SeedData, k: int) -> tuple:
    """g-vector, in the current frame, of the variable created by mutating
    at k:  -f_k - sum_i [b_ik]_- f_i."""
    kk = _check_direction(seed, k)
    N = seed.size()
    g = [0] * N
    g[kk] = -1
    for i in range(N):
        if i != kk:
            g[i] = -_neg(int(seed.B[i, kk]))
    return tuple(g)


# ---------------------------------------------------------------------------
# Laurent expansion

class LaurentPoly:
    """Laurent polynomial: exponent tuple (ints, possibly negative) -> Fraction."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms):
        self.nvars = nvars
        self.terms = {tuple(e): Fraction(c) for e, c in dict(terms).items() if c != 0}

    @classmethod
    def monomial(cls, nvars: int, exponent, coeff=1) -> "LaurentPoly":
        return cls(nvars, {tuple(exponent): Fraction(coeff)})

    @classmethod
    def unit(cls, nvars: int, i: int) -> "LaurentPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    def __eq__(self, other):
        return (
            isinstance(other, LaurentPoly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly(self.nvars, out)

    def __mul__(self, other):
        out: dict[tuple, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return LaurentPoly(self.nvars, out)

    def exponents(self):
        return list(self.terms)

    def __repr__(self):
        return f"LaurentPoly({self.terms!r})"


def _laurent_key(e: tuple):
    return (sum(e), tuple(-x for x in reversed(e)))


def laurent_div(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Exact division of Laurent polynomials; raises on nonzero remainder."""
    if not g.terms:
        raise ZeroDivisionError("Laurent division by zero")
    le = max(g.terms, key=_laurent_key)
    lc = g.terms[le]
    work = dict(f.terms)
    out: dict[tuple, Fraction] = {}
    while work:
        e = max(work, key=_laurent_key)
        c = work.pop(e)
        shift = tuple(a - b for a, b in zip(e, le))
        factor = c / lc
        out[shift] = factor
        for ge, gc in g.terms.items():
            if ge == le:
                continue
            ee = tuple(a + b for a, b in zip(ge, shift))
            s = work.get(ee, Fraction(0)) - factor * gc
            if s:
                work[ee] = s
            else:
                work.pop(ee, None)
    return LaurentPoly(f.nvars, out)


def laurent_expand(seed: SeedData, word: Sequence[int], i: int) -> LaurentPoly:
    """Laurent expansion, in the initial cluster of ``seed``, of the i-th
    variable (1-based) of the seed reached by applying ``word``.

    Every expansion is checked against the positive Laurent phenomenon:
    coefficients must be positive integers, with negative exponents only in
    mutable coordinates.
    """
    N = seed.size()
    if not 1 <= i <= N:
        raise ValueError(f"variable index {i} out of range")
    variables = [LaurentPoly.unit(N, j) for j in range(N)]
    current = seed
    for k in word:
        kk = _check_direction(current, k)
        plus = LaurentPoly.monomial(N, (0,) * N)
        minus = LaurentPoly.monomial(N, (0,) * N)
        for j in range(N):
            b = int(current.B[j, kk])
            if b > 0:
                for _ in range(b):
                    plus = plus * variables[j]
            elif b < 0:
                for _ in range(-b):
                    minus = minus * variables[j]
        variables[kk] = laurent_div(plus + minus, variables[kk])
        current = mutate_matrix(current, k)
    result = variables[i - 1]
    for e, c in result.terms.items():
        if c <= 0 or c.denominator != 1:
            raise AssertionError("positive Laurent phenomenon violated")
        if any(e[j] < 0 for j in range(seed.n, N)):
            raise AssertionError("negative exponent in a frozen coordinate")
    return result


# ---------------------------------------------------------------------------
# dominance order and g-vectors

def _mutable_columns(seed: SeedData) -> list[tuple]:
    return [seed.B.column(j) for j in range(seed.n)]


def dominance_less(m1: Sequence, m2: Sequence, seed: SeedData) -> str:
    """Compare two exponent vectors in the dominance order of the seed.

    Returns "equal", "less" (m1 strictly dominated by m2), "greater" or
    "incomparable".  m1 < m2 iff m2 - m1 is a nonnegative rational
    combination of the mutable exchange-matrix columns.
    """
    m1 = tuple(m1)
    m2 = tuple(m2)
    if m1 == m2:
        return "equal"
    cols = _mutable_columns(seed)
    diff = tuple(b - a for a, b in zip(m1, m2))
    if nonnegative_combination(cols, diff):
        return "less"
    if nonnegative_combination(cols, tuple(-x for x in diff)):
        return "greater"
    return "incomparable"


def gvector_from_laurent(p: LaurentPoly, seed: SeedData, tiebreak=None) -> tuple:
    """The dominance-minimal exponent of a cluster-monomial expansion.

    ``tiebreak`` (a sort key on exponent tuples) only fixes the order in
    which candidates are inspected; if more than one minimal exponent
    survives the dominance comparison, AmbiguousMinimum is raised.
    """
    exps = p.exponents()
    if not exps:
        raise ValueError("zero Laurent polynomial has no g-vector")
    if tiebreak is None:
        tiebreak = _laurent_key
    exps.sort(key=tiebreak)
    minimal = []
    for e in exps:
        if not any(
            dominance_less(other, e, seed) == "less" for other in exps if other != e
        ):
            minimal.append(e)
    if len(minimal) != 1:
        raise AmbiguousMinimum(f"{len(minimal)} dominance-minimal exponents")
    return tuple(int(x) for x in minimal[0])


def _gvector_by_transport(seed: SeedData, word: Sequence[int], i: int,
                          frame: Sequence[int]) -> tuple:
    """Transport the standard-basis g-vector of the target variable from its
    home seed back to the frame seed."""
    home = mutate_seed(seed, word)
    g = tuple(1 if j == i - 1 else 0 for j in range(seed.size()))
    current = home
    for k in reversed(list(word)):
        g = mutate_gvector(g, current, k)
        current = mutate_matrix(current, k)
    # current == seed; now walk to the frame
    for k in frame:
        g = mutate_gvector(g, current, k)
        current = mutate_matrix(current, k)
    return g


def gmatrix(seed: SeedData, basis: Sequence[tuple[Sequence[int], int]],
            frame: Sequence[int] = ()) -> QMatrix:
    """Matrix whose columns are the g-vectors, in the frame seed, of the
    listed variables (each given as (mutation word, 1-based index)).

    Each column is computed twice -- by Laurent expansion in the frame seed
    and by transporting standard basis vectors through tropical mutation --
    and the two answers must agree.
    """
    frame = list(frame)
    frame_seed = mutate_seed(seed, frame)
    columns = []
    for word, i in basis:
        word = list(word)
        expansion_word = list(reversed(frame)) + word
        expansion = laurent_expand(frame_seed, expansion_word, i)
        g_laurent = gvector_from_laurent(expansion, frame_seed)
        g_transport = _gvector_by_transport(seed, word, i, frame)
        if g_laurent != g_transport:
            raise OracleMismatch(
                f"g-vector routes disagree for word={word}, i={i}: "
                f"{g_laurent} vs {g_transport}"
            )
        columns.append(g_laurent)
    return QMatrix.from_columns(columns)
