"""The real composition algebras R, C, H and O as coordinate vectors.

Every algebra is obtained from R by Cayley-Dickson doubling

    (a, b)(c, d) = (ac - conj(d) b,  d a + b conj(c)),   conj(a, b) = (conj(a), -b)

so an element of the doubled algebra has the coordinates of ``a`` followed by
those of ``b``.  Basis products are signed basis elements; they are tabulated
once per algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .exactlin import Matrix, Rational, clean, to_scalar

DIMS: Dict[str, int] = {"R": 1, "C": 2, "H": 4, "O": 8}
_ORDER = ["R", "C", "H", "O"]


def _cd_conj(x: List[int]) -> List[int]:
    return [x[0]] + [-c for c in x[1:]]


def _cd_mul(x: List[int], y: List[int]) -> List[int]:
    n = len(x)
    if n == 1:
        return [x[0] * y[0]]
    h = n // 2
    a, b, c, d = x[:h], x[h:], y[:h], y[h:]
    ac = _cd_mul(a, c)
    db = _cd_mul(_cd_conj(d), b)
    da = _cd_mul(d, a)
    bc = _cd_mul(b, _cd_conj(c))
    return [p - q for p, q in zip(ac, db)] + [p + q for p, q in zip(da, bc)]


@lru_cache(maxsize=None)
def mult_table(alg: str) -> Tuple[Tuple[Tuple[int, int], ...], ...]:
    """``table[i][j] = (k, s)`` meaning e_i e_j = s e_k."""
    n = DIMS[alg]
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            ei = [int(t == i) for t in range(n)]
            ej = [int(t == j) for t in range(n)]
            prod = _cd_mul(ei, ej)
            (k,) = [t for t, c in enumerate(prod) if c]
            row.append((k, prod[k]))
        rows.append(tuple(row))
    return tuple(rows)


@dataclass(frozen=True)
class AlgebraElement:
    algebra: str
    coords: Tuple[Rational, ...]

    def __post_init__(self):
        if self.algebra not in DIMS:
            raise ValueError(f"unknown algebra {self.algebra!r}; expected one of R, C, H, O")
        coords = tuple(to_scalar(c) for c in self.coords)
        if len(coords) != DIMS[self.algebra]:
            raise ValueError(f"{self.algebra} elements have {DIMS[self.algebra]} coordinates, got {len(coords)}")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def basis(cls, algebra: str, i: int) -> "AlgebraElement":
        n = DIMS.get(algebra, 0)
        if not 0 <= i < n:
            raise ValueError(f"no basis element {i} in algebra {algebra!r}")
        return cls(algebra, tuple(int(t == i) for t in range(n)))

    @classmethod
    def one(cls, algebra: str) -> "AlgebraElement":
        return cls.basis(algebra, 0)

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return multiply(self, other)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        _same(self, other)
        return AlgebraElement(self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        _same(self, other)
        return AlgebraElement(self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def norm2(self) -> Rational:
        return clean(sum(c * c for c in self.coords))

    @property
    def real(self) -> Rational:
        return self.coords[0]

    def imag(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, (0,) + self.coords[1:])


def _same(a: AlgebraElement, b: AlgebraElement) -> None:
    if a.algebra != b.algebra:
        raise ValueError(f"algebra mismatch: {a.algebra} vs {b.algebra}")


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    _same(a, b)
    table = mult_table(a.algebra)
    out = [0] * DIMS[a.algebra]
    for i, x in enumerate(a.coords):
        if x == 0:
            continue
        for j, y in enumerate(b.coords):
            if y == 0:
                continue
            k, s = table[i][j]
            out[k] += s * x * y
    return AlgebraElement(a.algebra, tuple(out))


def conjugate(a: AlgebraElement) -> AlgebraElement:
    return AlgebraElement(a.algebra, (a.coords[0],) + tuple(-c for c in a.coords[1:]))


def left_mult_matrix(a: AlgebraElement) -> Matrix:
    """Matrix of x -> a x; column j is a e_j."""
    n = DIMS[a.algebra]
    cols = [multiply(a, AlgebraElement.basis(a.algebra, j)).coords for j in range(n)]
    return Matrix.from_rows([[cols[j][i] for j in range(n)] for i in range(n)])


def right_mult_matrix(a: AlgebraElement) -> Matrix:
    """Matrix of x -> x a."""
    n = DIMS[a.algebra]
    cols = [multiply(AlgebraElement.basis(a.algebra, j), a).coords for j in range(n)]
    return Matrix.from_rows([[cols[j][i] for j in range(n)] for i in range(n)])


def conjugation_matrix(algebra: str) -> Matrix:
    n = DIMS[algebra]
    return Matrix.diag([1] + [-1] * (n - 1))


def element(algebra: str, coords: Sequence) -> AlgebraElement:
    return AlgebraElement(algebra, tuple(coords))


class AlgMatrix:
    """Small square or rectangular matrix with entries in R, C or H."""

    __slots__ = ("algebra", "rows")

    def __init__(self, algebra: str, rows: Sequence[Sequence[AlgebraElement]]):
        self.algebra = algebra
        self.rows = tuple(tuple(x if isinstance(x, AlgebraElement) else element(algebra, x) for x in r)
                          for r in rows)
        for r in self.rows:
            for x in r:
                _same(x, AlgebraElement.one(algebra))

    @classmethod
    def from_coords(cls, algebra: str, rows) -> "AlgMatrix":
        """Entries given as coordinate tuples (or plain scalars for R)."""
        d = DIMS[algebra]
        conv = lambda x: element(algebra, (x,) if d == 1 and not isinstance(x, (tuple, list)) else x)
        return cls(algebra, [[conv(x) for x in r] for r in rows])

    @classmethod
    def identity(cls, algebra: str, p: int) -> "AlgMatrix":
        z, o = AlgebraElement(algebra, (0,) * DIMS[algebra]), AlgebraElement.one(algebra)
        return cls(algebra, [[o if i == j else z for j in range(p)] for i in range(p)])

    @classmethod
    def zeros(cls, algebra: str, p: int, q: Optional[int] = None) -> "AlgMatrix":
        z = AlgebraElement(algebra, (0,) * DIMS[algebra])
        return cls(algebra, [[z] * (p if q is None else q) for _ in range(p)])

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, ij) -> AlgebraElement:
        return self.rows[ij[0]][ij[1]]

    def __eq__(self, other) -> bool:
        return isinstance(other, AlgMatrix) and self.algebra == other.algebra and self.rows == other.rows

    def __hash__(self):
        return hash((self.algebra, self.rows))

    def __repr__(self) -> str:
        return f"AlgMatrix({self.algebra}, {[[list(x.coords) for x in r] for r in self.rows]})"

    def __add__(self, other: "AlgMatrix") -> "AlgMatrix":
        return AlgMatrix(self.algebra, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "AlgMatrix") -> "AlgMatrix":
        return AlgMatrix(self.algebra, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __matmul__(self, other: "AlgMatrix") -> "AlgMatrix":
        if self.algebra != other.algebra:
            raise ValueError("algebra mismatch")
        p, q = self.shape
        q2, r = other.shape
        if q != q2:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for i in range(p):
            row = []
            for j in range(r):
                acc = AlgebraElement(self.algebra, (0,) * DIMS[self.algebra])
                for k in range(q):
                    acc = acc + multiply(self.rows[i][k], other.rows[k][j])
                row.append(acc)
            out.append(row)
        return AlgMatrix(self.algebra, out)

    def transpose(self) -> "AlgMatrix":
        p, q = self.shape
        return AlgMatrix(self.algebra, [[self.rows[i][j] for i in range(p)] for j in range(q)])

    def conj(self) -> "AlgMatrix":
        return AlgMatrix(self.algebra, [[conjugate(x) for x in r] for r in self.rows])

    def star(self) -> "AlgMatrix":
        """Conjugate transpose."""
        return self.conj().transpose()

    def scale(self, c) -> "AlgMatrix":
        return AlgMatrix(self.algebra, [[AlgebraElement(self.algebra, tuple(c * t for t in x.coords)) for x in r]
                                        for r in self.rows])

    def is_zero(self) -> bool:
        return all(c == 0 for r in self.rows for x in r for c in x.coords)

    def to_json(self) -> list:
        from .exactlin import scalar_str
        return [[[scalar_str(c) for c in x.coords] for x in r] for r in self.rows]
