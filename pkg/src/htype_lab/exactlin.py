"""Exact rational linear algebra.

Matrices are stored row-sparse: each row is a ``dict`` mapping column index to
a nonzero entry.  Entries are ``int`` or ``fractions.Fraction``; a Fraction
with denominator 1 is always stored as an ``int`` so the common signed
permutation matrices never touch Fraction arithmetic.

Subspaces are kept in reduced row echelon form, which makes subspace equality
an entry-wise comparison.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

Rational = Union[int, Fraction]
SparseVec = Dict[int, Rational]


def clean(x) -> Rational:
    """Return ``x`` as an int when it is integral, otherwise as a Fraction."""
    if isinstance(x, int):
        return x
    x = Fraction(x)
    if x.denominator == 1:
        return x.numerator
    return x


def to_scalar(x) -> Rational:
    """Parse ints, Fractions and ``"num/den"`` strings."""
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, str):
        return clean(Fraction(x))
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass an int, Fraction or 'num/den' string")
    return clean(x)


def scalar_str(x: Rational) -> str:
    x = clean(x)
    if isinstance(x, int):
        return str(x)
    return f"{x.numerator}/{x.denominator}"


def _div(a: Rational, b: Rational) -> Rational:
    if b == 1:
        return a
    if b == -1:
        return -a
    return clean(Fraction(a) / b)


# -- sparse vectors ---------------------------------------------------------

def as_sparse(v: Union[Mapping[int, Rational], Sequence]) -> SparseVec:
    if isinstance(v, Mapping):
        return {int(k): to_scalar(x) for k, x in v.items() if x != 0}
    return {i: to_scalar(x) for i, x in enumerate(v) if x != 0}


def to_dense(v: Mapping[int, Rational], n: int) -> List[Rational]:
    out: List[Rational] = [0] * n
    for k, x in v.items():
        out[k] = x
    return out


def dot(u: Mapping[int, Rational], v: Mapping[int, Rational]) -> Rational:
    if len(u) > len(v):
        u, v = v, u
    s = 0
    for k, x in u.items():
        y = v.get(k)
        if y is not None:
            s += x * y
    return clean(s) if isinstance(s, Fraction) else s


def axpy(acc: SparseVec, a: Rational, x: Mapping[int, Rational]) -> None:
    """In place ``acc += a * x``, dropping entries that cancel."""
    if a == 0:
        return
    for k, v in x.items():
        s = acc.get(k, 0) + a * v
        if s == 0:
            acc.pop(k, None)
        else:
            acc[k] = clean(s) if isinstance(s, Fraction) else s


def vec_scale(a: Rational, x: Mapping[int, Rational]) -> SparseVec:
    if a == 0:
        return {}
    return {k: clean(a * v) for k, v in x.items()}


def vec_add(x: Mapping[int, Rational], y: Mapping[int, Rational], b: Rational = 1) -> SparseVec:
    out = dict(x)
    axpy(out, b, y)
    return out


def norm2(v: Mapping[int, Rational]) -> Rational:
    return clean(sum(x * x for x in v.values()))


# -- matrices ---------------------------------------------------------------

class Matrix:
    """Immutable rational matrix with sparse rows."""

    __slots__ = ("rows", "cols", "_data", "_hash", "_cols")

    def __init__(self, rows: int, cols: int, data: Sequence[Mapping[int, Rational]] = ()):
        if rows < 0 or cols < 0:
            raise ValueError("negative shape")
        data = tuple(data) if data else tuple({} for _ in range(rows))
        if len(data) != rows:
            raise ValueError(f"expected {rows} rows, got {len(data)}")
        clean_rows = []
        for r in data:
            row = {}
            for k, x in r.items():
                if not 0 <= k < cols:
                    raise IndexError(f"column {k} out of range for {cols} columns")
                if x != 0:
                    row[k] = clean(x)
            clean_rows.append(row)
        self.rows = rows
        self.cols = cols
        self._data: Tuple[SparseVec, ...] = tuple(clean_rows)
        self._hash = None
        self._cols = None

    @classmethod
    def _raw(cls, rows: int, cols: int, data: Sequence[SparseVec]) -> "Matrix":
        # Trusted constructor: rows are already cleaned and in range.
        m = object.__new__(cls)
        m.rows, m.cols, m._data, m._hash, m._cols = rows, cols, tuple(data), None, None
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls._raw(len(rows), cols, [as_sparse(r) for r in rows])

    @classmethod
    def from_sparse_rows(cls, rows: Sequence[Mapping[int, Rational]], cols: int) -> "Matrix":
        return cls(len(rows), cols, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Mapping[int, Rational]], rows: int) -> "Matrix":
        return cls.from_sparse_rows(columns, rows).T

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw(n, n, [{i: 1} for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls._raw(rows, cols, [{} for _ in range(rows)])

    @classmethod
    def diag(cls, values: Sequence) -> "Matrix":
        n = len(values)
        return cls(n, n, [{i: to_scalar(v)} for i, v in enumerate(values)])

    @staticmethod
    def block_diag(blocks: Sequence["Matrix"]) -> "Matrix":
        rows, cols, data = 0, 0, []
        for b in blocks:
            for r in b._data:
                data.append({k + cols: x for k, x in r.items()})
            rows += b.rows
            cols += b.cols
        return Matrix._raw(rows, cols, data)

    # access

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def row(self, i: int) -> SparseVec:
        return dict(self._data[i])

    def row_view(self, i: int) -> Mapping[int, Rational]:
        return self._data[i]

    def sparse_rows(self) -> Tuple[SparseVec, ...]:
        return self._data

    def __getitem__(self, ij: Tuple[int, int]) -> Rational:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self._data[i].get(j, 0)

    def tolist(self) -> List[List[Rational]]:
        return [to_dense(r, self.cols) for r in self._data]

    def nnz(self) -> int:
        return sum(len(r) for r in self._data)

    # structure

    def _columns(self) -> Tuple[SparseVec, ...]:
        if self._cols is None:
            cols: List[SparseVec] = [{} for _ in range(self.cols)]
            for i, r in enumerate(self._data):
                for k, x in r.items():
                    cols[k][i] = x
            self._cols = tuple(cols)
        return self._cols

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(self.cols, self.rows, [dict(c) for c in self._columns()])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, tuple(tuple(sorted(r.items())) for r in self._data)))
        return self._hash

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols}, nnz={self.nnz()})"

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(not r for r in self._data)

    def is_identity(self) -> bool:
        return self.is_square() and all(r == {i: 1} for i, r in enumerate(self._data))

    # arithmetic

    def _check_same_shape(self, other: "Matrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        data = []
        for a, b in zip(self._data, other._data):
            r = dict(a)
            axpy(r, 1, b)
            data.append(r)
        return Matrix._raw(self.rows, self.cols, data)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        data = []
        for a, b in zip(self._data, other._data):
            r = dict(a)
            axpy(r, -1, b)
            data.append(r)
        return Matrix._raw(self.rows, self.cols, data)

    def __neg__(self) -> "Matrix":
        return Matrix._raw(self.rows, self.cols, [{k: -x for k, x in r.items()} for r in self._data])

    def scale(self, c) -> "Matrix":
        c = to_scalar(c)
        if c == 0:
            return Matrix.zeros(self.rows, self.cols)
        return Matrix._raw(self.rows, self.cols, [vec_scale(c, r) for r in self._data])

    def __mul__(self, c) -> "Matrix":
        if isinstance(c, Matrix):
            raise TypeError("use @ for matrix products")
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        od = other._data
        data = []
        for r in self._data:
            acc: SparseVec = {}
            for k, x in r.items():
                axpy(acc, x, od[k])
            data.append(acc)
        return Matrix._raw(self.rows, other.cols, data)

    def apply(self, v: Mapping[int, Rational]) -> SparseVec:
        """Matrix times column vector, both sparse."""
        cols = self._columns()
        acc: SparseVec = {}
        for k, x in v.items():
            axpy(acc, x, cols[k])
        return acc

    def apply_rows(self, vectors: Iterable[Mapping[int, Rational]]) -> List[SparseVec]:
        """Images ``M v`` for a batch of sparse vectors."""
        return [self.apply(v) for v in vectors]

    def kron(self, other: "Matrix") -> "Matrix":
        data = []
        for r in self._data:
            for q in other._data:
                row = {}
                for k, x in r.items():
                    base = k * other.cols
                    for l, y in q.items():
                        row[base + l] = clean(x * y)
                data.append(row)
        return Matrix._raw(self.rows * other.rows, self.cols * other.cols, data)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "Matrix":
        pos = {c: j for j, c in enumerate(col_idx)}
        data = []
        for i in row_idx:
            data.append({pos[k]: x for k, x in self._data[i].items() if k in pos})
        return Matrix._raw(len(row_idx), len(col_idx), data)

    def trace(self) -> Rational:
        if not self.is_square():
            raise ValueError("trace of a non-square matrix")
        return clean(sum(r.get(i, 0) for i, r in enumerate(self._data)))

    def to_json(self) -> List[List[str]]:
        return [[scalar_str(x) for x in to_dense(r, self.cols)] for r in self._data]

    @classmethod
    def from_json(cls, rows: Sequence[Sequence[str]]) -> "Matrix":
        return cls.from_rows([[to_scalar(x) for x in r] for r in rows], cols=len(rows[0]) if rows else 0)


# -- row reduction ----------------------------------------------------------

class Echelon:
    """Incrementally maintained reduced row echelon basis.

    Rows are keyed by pivot column; every stored row has a 1 at its pivot and
    zeros at every other pivot column.
    """

    __slots__ = ("n", "rows")

    def __init__(self, n: int):
        self.n = n
        self.rows: Dict[int, SparseVec] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: Mapping[int, Rational]) -> SparseVec:
        r = {k: x for k, x in v.items() if x}
        for p in [k for k in r if k in self.rows]:
            c = r.get(p)
            if c:
                axpy(r, -c, self.rows[p])
        return r

    def add(self, v: Mapping[int, Rational]) -> bool:
        """Insert ``v``; return False if it was already in the span."""
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        c = r[p]
        if c != 1:
            r = {k: _div(x, c) for k, x in r.items()}
        for q, row in self.rows.items():
            a = row.get(p)
            if a:
                axpy(row, -a, r)
        self.rows[p] = r
        return True

    def contains(self, v: Mapping[int, Rational]) -> bool:
        return not self.reduce(v)

    def pivots(self) -> List[int]:
        return sorted(self.rows)

    def to_matrix(self) -> Matrix:
        return Matrix._raw(len(self.rows), self.n, [self.rows[p] for p in sorted(self.rows)])


def rank(M: Matrix) -> int:
    e = Echelon(M.cols)
    for r in M.sparse_rows():
        e.add(r)
    return len(e)


class Subspace:
    """Row space of a matrix, held as its reduced row echelon basis."""

    __slots__ = ("ambient_dim", "basis", "pivots", "_echelon")

    def __init__(self, basis: Matrix, pivots: Sequence[int]):
        # Use canonicalize() to build one; this trusts its inputs.
        self.ambient_dim = basis.cols
        self.basis = basis
        self.pivots = tuple(pivots)
        self._echelon: Optional[Echelon] = None

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(Matrix.zeros(0, n), ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(Matrix.identity(n), range(n))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def vectors(self) -> Tuple[SparseVec, ...]:
        return self.basis.sparse_rows()

    def echelon(self) -> Echelon:
        if self._echelon is None:
            e = Echelon(self.ambient_dim)
            e.rows = {p: r for p, r in zip(self.pivots, self.basis.sparse_rows())}
            self._echelon = e
        return self._echelon

    def contains(self, v) -> bool:
        v = as_sparse(v) if not isinstance(v, dict) else v
        return self.echelon().contains(v)

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check_ambient(other)
        e = self.echelon()
        return all(e.contains(r) for r in other.vectors())

    def _check_ambient(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise ValueError(f"ambient dimension mismatch {self.ambient_dim} vs {other.ambient_dim}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self) -> int:
        return hash(self.basis)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def key(self) -> Tuple:
        """Hashable canonical form, used for deduplication."""
        return (self.ambient_dim,) + tuple(tuple(sorted(r.items())) for r in self.vectors())

    def to_json(self) -> List[List[str]]:
        return self.basis.to_json()


def canonicalize(vectors, ambient_dim: Optional[int] = None) -> Subspace:
    """Reduced row echelon basis of the span of ``vectors``.

    ``vectors`` is a Matrix (its rows are used) or an iterable of sparse or
    dense vectors; ``ambient_dim`` is required when the iterable may be empty
    or holds sparse vectors.
    """
    if isinstance(vectors, Matrix):
        n = vectors.cols
        rows: Iterable = vectors.sparse_rows()
    else:
        rows = [v if isinstance(v, dict) else as_sparse(v) for v in vectors]
        if ambient_dim is None:
            dense = [v for v in vectors if not isinstance(v, dict)]
            if not dense:
                raise ValueError("ambient_dim is required for sparse or empty input")
            ambient_dim = len(dense[0])
        n = ambient_dim
    if ambient_dim is not None and ambient_dim != n:
        raise ValueError("ambient_dim does not match the matrix width")
    e = Echelon(n)
    for r in rows:
        if r and max(r) >= n:
            raise ValueError("vector longer than the ambient dimension")
        e.add(r)
    piv = e.pivots()
    return Subspace(Matrix._raw(len(piv), n, [e.rows[p] for p in piv]), piv)


def orth_complement(S: Subspace) -> Subspace:
    """Orthogonal complement for the standard dot product (= null space of the basis)."""
    n = S.ambient_dim
    pivset = set(S.pivots)
    free = [j for j in range(n) if j not in pivset]
    # column view of the echelon basis restricted to free columns
    col_entries: Dict[int, List[Tuple[int, Rational]]] = {}
    for p, r in zip(S.pivots, S.vectors()):
        for k, x in r.items():
            if k != p:
                col_entries.setdefault(k, []).append((p, x))
    vecs = []
    for f in free:
        v: SparseVec = {f: 1}
        for p, x in col_entries.get(f, ()):
            v[p] = -x
        vecs.append(v)
    return canonicalize(vecs, n)


def kernel(M: Matrix) -> Subspace:
    """{x : M x = 0}."""
    return orth_complement(canonicalize(M))


def pm1_eigenspace(M: Matrix, sign: int) -> Subspace:
    """Eigenspace of the involution ``M`` for eigenvalue ``sign`` (+1 or -1)."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if not M.is_square():
        raise ValueError("matrix must be square")
    if not (M @ M).is_identity():
        raise ValueError("matrix is not an involution (M·M != I)")
    return kernel(M - Matrix.identity(M.rows).scale(sign))


def span_sum(S: Subspace, T: Subspace) -> Subspace:
    S._check_ambient(T)
    return canonicalize(list(S.vectors()) + list(T.vectors()), S.ambient_dim)


def intersect(S: Subspace, T: Subspace) -> Subspace:
    S._check_ambient(T)
    return orth_complement(span_sum(orth_complement(S), orth_complement(T)))


def contains(S: Subspace, v) -> bool:
    return S.contains(v)


def image(M: Matrix, S: Subspace) -> Subspace:
    """canonicalize(M · basis of S)."""
    if M.cols != S.ambient_dim:
        raise ValueError("operator and subspace dimensions differ")
    return canonicalize(M.apply_rows(S.vectors()), M.rows)


def solve(M: Matrix, b) -> Optional[List[Rational]]:
    """One solution of ``M x = b`` (free variables set to 0), or None."""
    b = as_sparse(b) if not isinstance(b, dict) else b
    if b and max(b) >= M.rows:
        raise ValueError("right-hand side longer than the row count")
    n = M.cols
    e = Echelon(n + 1)
    for i, r in enumerate(M.sparse_rows()):
        aug = dict(r)
        if i in b:
            aug[n] = b[i]
        e.add(aug)
    if n in e.rows:
        return None
    x: List[Rational] = [0] * n
    for p, r in e.rows.items():
        x[p] = r.get(n, 0)
    return x


def inverse(M: Matrix) -> Matrix:
    """Exact inverse by Gauss-Jordan on [M | I]; raises ValueError if singular."""
    if not M.is_square():
        raise ValueError("matrix must be square")
    n = M.rows
    e = Echelon(2 * n)
    for i, r in enumerate(M.sparse_rows()):
        aug = dict(r)
        aug[n + i] = 1
        e.add(aug)
    piv = e.pivots()
    if len(piv) < n or piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return Matrix._raw(n, n, [{k - n: x for k, x in e.rows[i].items() if k >= n} for i in range(n)])
