"""Exact rational linear algebra: matrices, canonical subspaces, decompositions.

Scalars are :class:`fractions.Fraction`.  Every value here is immutable and
every operation is exact, so equality tests are exact zero tests.

A :class:`Subspace` is stored by its reduced row echelon basis (equivalently
the reduced column-echelon form of the basis matrix), which makes the
representation canonical: two equal subspaces compare equal field by field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def as_scalar(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, str or Fraction")
    return Fraction(x)


@dataclass(frozen=True)
class FieldConfig:
    """The deformation parameter ``q``; must avoid 0, 1 and -1."""

    q: Fraction = Fraction(2)

    def __post_init__(self):
        q = as_scalar(self.q)
        if q in (0, 1, -1):
            raise ValueError(f"q must not be 0, 1 or -1 (got {q})")
        object.__setattr__(self, "q", q)

    def qpow(self, k: int) -> Fraction:
        return self.q ** k

    def bracket(self, n: int) -> Fraction:
        return q_bracket(n, self)


def q_bracket(n: int, cfg: FieldConfig) -> Fraction:
    """``[n]_q = (q^n - q^-n) / (q - q^-1)``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    q = cfg.q
    return (q ** n - q ** -n) / (q - 1 / q)


# ---------------------------------------------------------------------------
# Row reduction


def rref(rows: Sequence[Sequence[Fraction]], ncols: int | None = None):
    """Reduced row echelon form.  Returns ``(rows, pivot_columns)``; zero rows dropped."""
    m = [list(r) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            m[r] = [x / piv for x in m[r]]
        prow = m[r]
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f != 0:
                    row = m[i]
                    m[i] = [x - f * y for x, y in zip(row, prow)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


class EchelonBasis:
    """Incrementally maintained reduced echelon basis, for span-membership tests.

    Used by the word-span closure and anywhere vectors are adjoined one at a
    time; :meth:`add` returns whether the vector enlarged the span.
    """

    def __init__(self, length: int):
        self.length = length
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: Sequence[Fraction]) -> list[Fraction]:
        w = list(v)
        for row, c in zip(self.rows, self.pivots):
            f = w[c]
            if f != 0:
                w = [x - f * y for x, y in zip(w, row)]
        return w

    def contains(self, v: Sequence[Fraction]) -> bool:
        return not any(self.reduce(v))

    def add(self, v: Sequence[Fraction]) -> bool:
        w = self.reduce(v)
        c = next((j for j, x in enumerate(w) if x != 0), None)
        if c is None:
            return False
        piv = w[c]
        w = [x / piv for x in w]
        for k, row in enumerate(self.rows):
            f = row[c]
            if f != 0:
                self.rows[k] = [x - f * y for x, y in zip(row, w)]
        self.rows.append(w)
        self.pivots.append(c)
        return True


# ---------------------------------------------------------------------------
# Matrices


class Matrix:
    """Dense immutable matrix of Fractions, stored row-major."""

    __slots__ = ("nrows", "ncols", "rows", "_hash")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        rs = tuple(tuple(as_scalar(x) for x in r) for r in rows)
        if ncols is None:
            if not rs:
                raise ValueError("cannot infer column count of an empty matrix")
            ncols = len(rs[0])
        if any(len(r) != ncols for r in rs):
            raise ValueError("ragged matrix rows")
        object.__setattr__(self, "nrows", len(rs))
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "rows", rs)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, rows: tuple, ncols: int) -> "Matrix":
        # trusted constructor: rows already tuples of Fractions
        m = object.__new__(cls)
        object.__setattr__(m, "nrows", len(rows))
        object.__setattr__(m, "ncols", ncols)
        object.__setattr__(m, "rows", rows)
        object.__setattr__(m, "_hash", None)
        return m

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # construction helpers
    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw(tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> "Matrix":
        ncols = nrows if ncols is None else ncols
        return cls._raw(tuple((ZERO,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def diag(cls, entries: Sequence) -> "Matrix":
        e = [as_scalar(x) for x in entries]
        n = len(e)
        return cls._raw(tuple(tuple(e[i] if i == j else ZERO for j in range(n)) for i in range(n)), n)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int) -> "Matrix":
        if not cols:
            return cls._raw(tuple(() for _ in range(nrows)), 0)
        return cls(zip(*cols), len(cols))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    def flat(self) -> tuple:
        return tuple(x for r in self.rows for x in r)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.ncols == other.ncols and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.ncols, self.rows)))
        return self._hash

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows)
        return f"Matrix([{body}])"

    # arithmetic
    def _check_same(self, other: "Matrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw(
            tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows)), self.ncols
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw(
            tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows)), self.ncols
        )

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-x for x in r) for r in self.rows), self.ncols)

    def scale(self, c) -> "Matrix":
        c = as_scalar(c)
        return Matrix._raw(tuple(tuple(c * x for x in r) for r in self.rows), self.ncols)

    def __mul__(self, c):
        if isinstance(c, Matrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
            return Matrix._raw(
                tuple(
                    tuple(sum((x * y for x, y in zip(r, c) if x and y), ZERO) for c in cols)
                    for r in self.rows
                ),
                other.ncols,
            )
        # vector
        v = tuple(other)
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(sum((x * y for x, y in zip(r, v) if x and y), ZERO) for r in self.rows)

    def __pow__(self, k: int) -> "Matrix":
        if not self.is_square:
            raise ValueError("power of a non-square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        result = Matrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def shift(self, c) -> "Matrix":
        """``self - c*I``."""
        c = as_scalar(c)
        if c == 0:
            return self
        return Matrix._raw(
            tuple(tuple(x - c if i == j else x for j, x in enumerate(r)) for i, r in enumerate(self.rows)),
            self.ncols,
        )

    def transpose(self) -> "Matrix":
        if not self.rows:
            return Matrix._raw(tuple(() for _ in range(self.ncols)), 0)
        return Matrix._raw(tuple(zip(*self.rows)), self.nrows)

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    def scalar_value(self):
        """The ``c`` with ``self == c*I``, or None."""
        if not self.is_square:
            return None
        c = self.rows[0][0] if self.nrows else ZERO
        return c if self == Matrix.identity(self.nrows).scale(c) else None

    def rank(self) -> int:
        return len(rref(self.rows, self.ncols)[1])

    def inverse(self) -> "Matrix":
        if not self.is_square:
            raise ValueError("inverse of a non-square matrix")
        n = self.nrows
        aug = [r + tuple(ONE if i == j else ZERO for j in range(n)) for i, r in enumerate(self.rows)]
        red, piv = rref(aug, 2 * n)
        if piv[:n] != list(range(n)) or len(piv) < n:
            raise ZeroDivisionError("matrix is singular")
        return Matrix._raw(tuple(tuple(r[n:]) for r in red[:n]), n)

    def kron(self, other: "Matrix") -> "Matrix":
        rows = []
        for r in self.rows:
            for s in other.rows:
                rows.append(tuple(x * y for x in r for y in s))
        return Matrix._raw(tuple(rows), self.ncols * other.ncols)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        return Matrix._raw(tuple(r + s for r, s in zip(self.rows, other.rows)), self.ncols + other.ncols)


def commutator(x: Matrix, y: Matrix) -> Matrix:
    return x @ y - y @ x


# ---------------------------------------------------------------------------
# Subspaces


class Subspace:
    """A subspace of ``Q^n`` held in canonical reduced echelon form.

    ``echelon`` is the tuple of reduced row echelon basis vectors, ordered by
    strictly increasing pivot position; :attr:`basis` is the same data as a
    column matrix.
    """

    __slots__ = ("ambient_dim", "echelon", "pivots")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        vs = [tuple(as_scalar(x) for x in v) for v in vectors]
        if any(len(v) != ambient_dim for v in vs):
            raise ValueError("vector length does not match ambient dimension")
        red, piv = rref(vs, ambient_dim)
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "echelon", tuple(red))
        object.__setattr__(self, "pivots", tuple(piv))

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, Matrix.identity(n).rows)

    @classmethod
    def span_of_columns(cls, m: Matrix) -> "Subspace":
        return cls(m.nrows, m.columns())

    @property
    def dim(self) -> int:
        return len(self.echelon)

    def __len__(self):
        return self.dim

    @property
    def basis(self) -> Matrix:
        return Matrix.from_columns(self.echelon, self.ambient_dim)

    def __iter__(self):
        return iter(self.echelon)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.echelon == other.echelon

    def __hash__(self):
        return hash((self.ambient_dim, self.echelon))

    def __repr__(self):
        vs = ", ".join("(" + ", ".join(str(x) for x in v) + ")" for v in self.echelon)
        return f"Subspace({self.ambient_dim}, [{vs}])"

    def contains(self, v: Sequence) -> bool:
        w = [as_scalar(x) for x in v]
        for row, c in zip(self.echelon, self.pivots):
            f = w[c]
            if f != 0:
                w = [x - f * y for x, y in zip(w, row)]
        return not any(w)

    def __contains__(self, v):
        return self.contains(v)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.echelon)

    def __le__(self, other: "Subspace") -> bool:
        return other.contains_subspace(self)

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum([self, other])

    def __and__(self, other: "Subspace") -> "Subspace":
        return subspace_intersect(self, other)

    def image(self, m: Matrix) -> "Subspace":
        return Subspace(m.nrows, (m @ v for v in self.echelon))


def kernel(m: Matrix) -> Subspace:
    """Canonical basis of ``{v : m v = 0}``."""
    n = m.ncols
    red, piv = rref(m.rows, n)
    free = [j for j in range(n) if j not in piv]
    vecs = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for row, c in zip(red, piv):
            v[c] = -row[f]
        vecs.append(v)
    return Subspace(n, vecs)


def eigenspace(m: Matrix, theta) -> Subspace:
    """``kernel(m - theta*I)``; the zero subspace when theta is not an eigenvalue."""
    if not m.is_square:
        raise ValueError("eigenspace of a non-square matrix")
    return kernel(m.shift(theta))


def subspace_sum(ws: Sequence[Subspace], ambient_dim: int | None = None) -> Subspace:
    if not ws:
        if ambient_dim is None:
            raise ValueError("empty sum needs ambient_dim")
        return Subspace.zero(ambient_dim)
    n = ws[0].ambient_dim
    if any(w.ambient_dim != n for w in ws):
        raise ValueError("ambient dimension mismatch")
    return Subspace(n, (v for w in ws for v in w.echelon))


def subspace_intersect(w1: Subspace, w2: Subspace) -> Subspace:
    """``w1 ∩ w2`` as the image under ``[B1]`` of the kernel of ``[B1 | -B2]``."""
    n = w1.ambient_dim
    if w2.ambient_dim != n:
        raise ValueError("ambient dimension mismatch")
    if w1.dim == 0 or w2.dim == 0:
        return Subspace.zero(n)
    stacked = w1.basis.hstack(-w2.basis)
    ker = kernel(stacked)
    b1 = w1.basis
    k1 = w1.dim
    return Subspace(n, (b1 @ v[:k1] for v in ker.echelon))


def direct_sum_check(ws: Sequence[Subspace]) -> bool:
    """True iff the subspaces are independent and together span the ambient space."""
    if not ws:
        return False
    n = ws[0].ambient_dim
    if any(w.ambient_dim != n for w in ws):
        raise ValueError("ambient dimension mismatch")
    if sum(w.dim for w in ws) != n:
        return False
    return subspace_sum(ws).dim == n


def maps_into(m: Matrix, source: Subspace, target: Subspace) -> bool:
    """Whether ``m`` sends every basis vector of ``source`` into ``target``."""
    return all(target.contains(m @ v) for v in source.echelon)


# ---------------------------------------------------------------------------
# Decompositions


@dataclass(frozen=True)
class Decomposition:
    """An ordered direct-sum decomposition ``U_0, ..., U_d`` of the ambient space."""

    name: str
    subspaces: tuple[Subspace, ...]

    def __post_init__(self):
        object.__setattr__(self, "subspaces", tuple(self.subspaces))

    @property
    def d(self) -> int:
        return len(self.subspaces) - 1

    @property
    def ambient_dim(self) -> int:
        return self.subspaces[0].ambient_dim

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(u.dim for u in self.subspaces)

    def __getitem__(self, i: int) -> Subspace:
        # U_{-1} = U_{d+1} = 0
        if 0 <= i <= self.d:
            return self.subspaces[i]
        return Subspace.zero(self.ambient_dim)

    def span(self, lo: int, hi: int) -> Subspace:
        """``U_lo + ... + U_hi`` with out-of-range indices dropped."""
        lo, hi = max(lo, 0), min(hi, self.d)
        return subspace_sum(self.subspaces[lo : hi + 1] if lo <= hi else [], self.ambient_dim)

    def is_valid(self) -> bool:
        return all(u.dim > 0 for u in self.subspaces) and direct_sum_check(self.subspaces)

    def change_of_basis(self) -> Matrix:
        """Columns are the stacked bases of ``U_0, ..., U_d``."""
        return Matrix.from_columns([v for u in self.subspaces for v in u.echelon], self.ambient_dim)


def operator_from_eigendata(dec: Decomposition, eigenvalues: Sequence) -> Matrix:
    """The matrix acting as ``eigenvalues[i]`` on ``dec[i]``: ``P diag(...) P^-1``."""
    if len(eigenvalues) != len(dec.subspaces):
        raise ValueError("need one eigenvalue per subspace")
    p = dec.change_of_basis()
    entries = [as_scalar(lam) for lam, u in zip(eigenvalues, dec.subspaces) for _ in range(u.dim)]
    return p @ Matrix.diag(entries) @ p.inverse()


def rational_eigenvalues(m: Matrix) -> dict[Fraction, int]:
    """Rational roots of the characteristic polynomial with their multiplicities.

    Irrational eigenvalues are silently absent; callers compare the total
    multiplicity against ``m.nrows`` when that matters.
    """
    from sympy import Poly, QQ, Symbol
    from sympy.polys.matrices import DomainMatrix

    if not m.is_square:
        raise ValueError("eigenvalues of a non-square matrix")
    dm = DomainMatrix([[QQ(x.numerator, x.denominator) for x in r] for r in m.rows], m.shape, QQ)
    coeffs = dm.charpoly()
    roots = Poly(coeffs, Symbol("x"), domain=QQ).ground_roots()
    return {Fraction(int(r.p), int(r.q)): k for r, k in roots.items()}
