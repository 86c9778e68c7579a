"""
Exact coefficient rings and sparse linear algebra over them.

Three rings are supported: the integers Z, prime fields F_p and the rationals Q.
Elements are plain Python values (``int`` for Z and F_p, ``Fraction`` for Q) and are
always kept in normal form by :meth:`Ring.norm`.

Usage:
    ring = Ring.parse("F5")
    M = SparseMatrix.from_rows(ring, [[1, 2], [2, 4]])
    rank(M)                       # 1
    kernel_basis(M)               # [{0: 3, 1: 1}]
    smith_normal_form(SparseMatrix.from_rows(Ring.parse("Z"), [[2, 4], [6, 8]]))
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel
from sympy import isprime

from ainfty_toolkit.errors import InfeasibleSizeError, ParseError, UsageError

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]
Vector = Dict[int, Scalar]


class RingKind(str, Enum):
    INTEGERS = "Z"
    PRIME_FIELD = "F_p"
    RATIONALS = "Q"


_RING_PATTERN = re.compile(r"^\s*(?:(Z|ZZ|integers)|(Q|QQ|rationals)|(?:F_?|GF\(?)(\d+)\)?)\s*$", re.IGNORECASE)


@dataclass(frozen=True)
class Ring:
    """
    A coefficient ring.

    Parameters
    ----------
    kind : RingKind
        Z, F_p or Q.
    p : int, optional
        The characteristic of a prime field; must be prime.
    """
    kind: RingKind
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind == RingKind.PRIME_FIELD:
            if self.p is None or not isprime(self.p):
                raise ValueError(f"F_p requires a prime p, got {self.p}")
        elif self.p is not None:
            raise ValueError(f"{self.kind.value} takes no characteristic")

    @classmethod
    def parse(cls, text: str) -> "Ring":
        match = _RING_PATTERN.match(str(text))
        if not match:
            raise ParseError(f"unknown ring '{text}' (expected Z, Q or F<p>)")
        if match.group(1):
            return cls(RingKind.INTEGERS)
        if match.group(2):
            return cls(RingKind.RATIONALS)
        p = int(match.group(3))
        if not isprime(p):
            raise ParseError(f"F_{p}: {p} is not prime")
        return cls(RingKind.PRIME_FIELD, p)

    @property
    def name(self) -> str:
        if self.kind == RingKind.PRIME_FIELD:
            return f"F_{self.p}"
        return self.kind.value

    def __str__(self) -> str:
        return self.name

    @property
    def is_field(self) -> bool:
        return self.kind != RingKind.INTEGERS

    @property
    def is_finite(self) -> bool:
        return self.kind == RingKind.PRIME_FIELD

    @property
    def size(self) -> Optional[int]:
        return self.p if self.is_finite else None

    @property
    def zero(self) -> Scalar:
        return Fraction(0) if self.kind == RingKind.RATIONALS else 0

    @property
    def one(self) -> Scalar:
        return Fraction(1) if self.kind == RingKind.RATIONALS else 1

    def norm(self, value: Scalar) -> Scalar:
        if self.kind == RingKind.PRIME_FIELD:
            return int(value) % self.p
        if self.kind == RingKind.RATIONALS:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise UsageError(f"{value} is not an integer")
            return int(value)
        return int(value)

    def coerce(self, value) -> Scalar:
        """Read an int, Fraction or "a/b" string into the ring."""
        if isinstance(value, str):
            try:
                value = Fraction(value.strip())
            except ValueError as exc:
                raise ParseError(f"not a coefficient: '{value}'") from exc
        if isinstance(value, Fraction) and value.denominator != 1:
            if self.kind == RingKind.RATIONALS:
                return value
            if self.kind == RingKind.PRIME_FIELD:
                if value.denominator % self.p == 0:
                    raise ParseError(f"{value} has no image in {self.name}")
                return (value.numerator * pow(value.denominator, -1, self.p)) % self.p
            raise ParseError(f"{value} is not an integer")
        return self.norm(int(value) if not isinstance(value, Fraction) else value)

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return self.norm(a + b)

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return self.norm(a - b)

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return self.norm(a * b)

    def neg(self, a: Scalar) -> Scalar:
        return self.norm(-a)

    def is_unit(self, a: Scalar) -> bool:
        a = self.norm(a)
        if self.kind == RingKind.INTEGERS:
            return a in (1, -1)
        return a != 0

    def inverse(self, a: Scalar) -> Scalar:
        a = self.norm(a)
        if not self.is_unit(a):
            raise ZeroDivisionError(f"{a} is not invertible in {self.name}")
        if self.kind == RingKind.PRIME_FIELD:
            return pow(a, -1, self.p)
        if self.kind == RingKind.RATIONALS:
            return 1 / a
        return a

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inverse(b))

    def elements(self) -> List[Scalar]:
        if not self.is_finite:
            raise UsageError(f"{self.name} is infinite")
        return list(range(self.p))

    def format(self, value: Scalar):
        """JSON friendly rendering: ints stay ints, fractions become "a/b"."""
        value = self.norm(value)
        if isinstance(value, Fraction):
            return int(value) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
        return value


def vector_add(ring: Ring, target: Vector, source: Vector, coefficient: Scalar = 1) -> Vector:
    """target += coefficient * source, in place."""
    for key, value in source.items():
        new = ring.norm(target.get(key, 0) + coefficient * value)
        if new:
            target[key] = new
        else:
            target.pop(key, None)
    return target


def enumerate_span(ring: Ring, basis: Sequence[Vector], limit: Optional[int] = None) -> Iterator[Vector]:
    """All linear combinations of ``basis`` over a finite ring."""
    count = ring.p ** len(basis)
    if limit is not None and count > limit:
        raise InfeasibleSizeError("span too large to enumerate", count)
    for coefficients in product(ring.elements(), repeat=len(basis)):
        vector: Vector = {}
        for c, b in zip(coefficients, basis):
            if c:
                vector_add(ring, vector, b, c)
        yield vector


@dataclass(frozen=True, eq=False)
class SparseMatrix:
    """
    Matrix over a ring keeping only nonzero entries.

    ``entries`` maps (row, column) to a nonzero ring element.
    """
    ring: Ring
    rows: int
    cols: int
    entries: Dict[Tuple[int, int], Scalar] = field(default_factory=dict)

    @classmethod
    def zero(cls, ring: Ring, rows: int, cols: int) -> "SparseMatrix":
        return cls(ring, rows, cols, {})

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "SparseMatrix":
        return cls(ring, n, n, {(i, i): ring.one for i in range(n)})

    @classmethod
    def from_rows(cls, ring: Ring, data: Sequence[Sequence], cols: Optional[int] = None) -> "SparseMatrix":
        rows = len(data)
        if cols is None:
            cols = len(data[0]) if rows else 0
        entries = {}
        for i, row in enumerate(data):
            if len(row) != cols:
                raise UsageError(f"row {i} has length {len(row)}, expected {cols}")
            for j, value in enumerate(row):
                value = ring.coerce(value)
                if value:
                    entries[(i, j)] = value
        return cls(ring, rows, cols, entries)

    @classmethod
    def from_columns(cls, ring: Ring, rows: int, columns: Sequence[Vector]) -> "SparseMatrix":
        entries = {}
        for j, column in enumerate(columns):
            for i, value in column.items():
                value = ring.norm(value)
                if value:
                    if not 0 <= i < rows:
                        raise UsageError(f"row index {i} outside 0..{rows - 1}")
                    entries[(i, j)] = value
        return cls(ring, rows, len(columns), entries)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __repr__(self) -> str:
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={len(self.entries)}, ring={self.ring})"

    def get(self, i: int, j: int) -> Scalar:
        return self.entries.get((i, j), self.ring.zero)

    def is_zero(self) -> bool:
        return not self.entries

    def column(self, j: int) -> Vector:
        return {i: v for (i, jj), v in self.entries.items() if jj == j}

    def columns(self) -> List[Vector]:
        result: List[Vector] = [dict() for _ in range(self.cols)]
        for (i, j), v in self.entries.items():
            result[j][i] = v
        return result

    def row_dicts(self) -> List[Vector]:
        result: List[Vector] = [dict() for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            result[i][j] = v
        return result

    def to_dense(self) -> List[List[Scalar]]:
        dense = [[self.ring.zero] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            dense[i][j] = v
        return dense

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.ring, self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def scale(self, c: Scalar) -> "SparseMatrix":
        ring = self.ring
        out = {}
        for key, v in self.entries.items():
            w = ring.norm(c * v)
            if w:
                out[key] = w
        return SparseMatrix(ring, self.rows, self.cols, out)

    def __neg__(self) -> "SparseMatrix":
        return self.scale(-1)

    def _check_same_shape(self, other: "SparseMatrix"):
        if self.shape != other.shape:
            raise UsageError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        self._check_same_shape(other)
        ring = self.ring
        out = dict(self.entries)
        for key, v in other.entries.items():
            w = ring.norm(out.get(key, 0) + v)
            if w:
                out[key] = w
            else:
                out.pop(key, None)
        return SparseMatrix(ring, self.rows, self.cols, out)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + (-other)

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise UsageError(f"cannot multiply {self.shape} by {other.shape}")
        ring = self.ring
        by_row: Dict[int, Dict[int, Scalar]] = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, {})[j] = v
        out: Dict[Tuple[int, int], Scalar] = {}
        for (i, k), a in self.entries.items():
            row = by_row.get(k)
            if not row:
                continue
            for j, b in row.items():
                out[(i, j)] = out.get((i, j), 0) + a * b
        cleaned = {}
        for key, v in out.items():
            v = ring.norm(v)
            if v:
                cleaned[key] = v
        return SparseMatrix(ring, self.rows, other.cols, cleaned)

    def apply(self, vector: Vector) -> Vector:
        ring = self.ring
        out: Dict[int, Scalar] = {}
        for (i, j), v in self.entries.items():
            x = vector.get(j)
            if x:
                out[i] = out.get(i, 0) + v * x
        return {i: w for i, w in ((i, ring.norm(v)) for i, v in out.items()) if w}

    @staticmethod
    def block(ring: Ring, blocks: Sequence[Sequence[Optional["SparseMatrix"]]],
              row_sizes: Sequence[int], col_sizes: Sequence[int]) -> "SparseMatrix":
        """Assemble a block matrix; ``None`` blocks are zero."""
        entries = {}
        row_offset = 0
        for bi, block_row in enumerate(blocks):
            col_offset = 0
            for bj, blk in enumerate(block_row):
                if blk is not None:
                    if blk.shape != (row_sizes[bi], col_sizes[bj]):
                        raise UsageError(f"block ({bi},{bj}) has shape {blk.shape}")
                    for (i, j), v in blk.entries.items():
                        entries[(row_offset + i, col_offset + j)] = v
                col_offset += col_sizes[bj]
            row_offset += row_sizes[bi]
        return SparseMatrix(ring, sum(row_sizes), sum(col_sizes), entries)

    def hstack(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.rows != other.rows:
            raise UsageError("hstack needs equal row counts")
        entries = dict(self.entries)
        for (i, j), v in other.entries.items():
            entries[(i, self.cols + j)] = v
        return SparseMatrix(self.ring, self.rows, self.cols + other.cols, entries)


# ---------------------------------------------------------------------------
# Field elimination
# ---------------------------------------------------------------------------

class _Echelon:
    """Incremental fully reduced row echelon form over a field."""

    def __init__(self, ring: Ring):
        self.ring = ring
        self.pivots: Dict[int, Vector] = {}

    def reduce(self, row: Vector) -> Vector:
        ring = self.ring
        row = dict(row)
        for col in [c for c in row if c in self.pivots]:
            factor = row.get(col)
            if factor:
                vector_add(ring, row, self.pivots[col], -factor)
        return row

    def add(self, row: Vector) -> bool:
        ring = self.ring
        row = self.reduce(row)
        if not row:
            return False
        col = min(row)
        inv = ring.inverse(row[col])
        row = {k: ring.norm(v * inv) for k, v in row.items()}
        for other in self.pivots.values():
            factor = other.get(col)
            if factor:
                vector_add(ring, other, row, -factor)
        self.pivots[col] = row
        return True


def _as_field(ring: Ring) -> Ring:
    return ring if ring.is_field else Ring(RingKind.RATIONALS)


def rank(matrix: SparseMatrix) -> int:
    """Rank over the ring (for Z this is the rank over Q)."""
    echelon = _Echelon(_as_field(matrix.ring))
    count = 0
    for row in matrix.row_dicts():
        if row and echelon.add(row):
            count += 1
    return count


def kernel_basis(matrix: SparseMatrix) -> List[Vector]:
    """
    Basis of {x : M x = 0}. Over Z the basis generates the integral kernel lattice.
    """
    if not matrix.ring.is_field:
        form = smith_normal_form(matrix)
        r = len(form.diagonal)
        return [form.V.column(j) for j in range(r, matrix.cols)]
    echelon = _Echelon(matrix.ring)
    for row in matrix.row_dicts():
        if row:
            echelon.add(row)
    ring = matrix.ring
    basis = []
    for free in range(matrix.cols):
        if free in echelon.pivots:
            continue
        vec = {free: ring.one}
        for col, prow in echelon.pivots.items():
            v = prow.get(free)
            if v:
                vec[col] = ring.neg(v)
        basis.append(vec)
    return basis


def solve_linear(matrix: SparseMatrix, b: Vector) -> Optional[Vector]:
    """Some x with M x = b, or None when the system has no solution over the ring."""
    outside = [i for i in b if not 0 <= i < matrix.rows]
    if outside:
        raise UsageError(f"right-hand side index {outside[0]} outside a matrix with {matrix.rows} rows")
    ring = matrix.ring
    if not ring.is_field:
        return _solve_integral(matrix, b)
    n = matrix.cols
    echelon = _Echelon(ring)
    rows = matrix.row_dicts()
    for i, row in enumerate(rows):
        aug = dict(row)
        if b.get(i):
            aug[n] = ring.norm(b[i])
        if aug:
            echelon.add(aug)
    if n in echelon.pivots:
        return None
    solution = {}
    for col, prow in echelon.pivots.items():
        v = prow.get(n)
        if v:
            solution[col] = v
    return solution


def reduce_modulo(ring: Ring, spanning: Sequence[Vector], vector: Vector) -> Vector:
    """The canonical representative of ``vector`` modulo the span of ``spanning`` (fields)."""
    echelon = _Echelon(ring)
    for v in spanning:
        echelon.add(v)
    return {k: v for k, v in echelon.reduce(vector).items() if ring.norm(v)}


def in_column_span(matrix: SparseMatrix, b: Vector) -> bool:
    return solve_linear(matrix, b) is not None


# ---------------------------------------------------------------------------
# Smith normal form over Z
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SmithForm:
    """U M V = D with U, V unimodular and D diagonal; ``diagonal`` lists d_1 | d_2 | ... > 0."""
    U: Optional[SparseMatrix]
    D: SparseMatrix
    V: Optional[SparseMatrix]
    diagonal: Tuple[int, ...]


def _snf_dense(A: List[List[int]], m: int, n: int, track: bool):
    U = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if track else None

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        if track:
            U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in A:
            row[j], row[k] = row[k], row[j]
        if track:
            for row in V:
                row[j], row[k] = row[k], row[j]

    def add_row(target, source, q):
        # row_target += q * row_source
        rt, rs = A[target], A[source]
        for j in range(n):
            if rs[j]:
                rt[j] += q * rs[j]
        if track:
            ut, us = U[target], U[source]
            for j in range(m):
                if us[j]:
                    ut[j] += q * us[j]

    def add_col(target, source, q):
        for row in A:
            if row[source]:
                row[target] += q * row[source]
        if track:
            for row in V:
                if row[source]:
                    row[target] += q * row[source]

    diagonal = []
    t = 0
    while t < m and t < n:
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                a = row[j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i0, j0 = best
        if i0 != t:
            swap_rows(t, i0)
        if j0 != t:
            swap_cols(t, j0)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                a = A[i][t]
                if a:
                    q = a // p
                    if q:
                        add_row(i, t, -q)
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                a = A[t][j]
                if a:
                    q = a // p
                    if q:
                        add_col(j, t, -q)
                    if A[t][j]:
                        dirty = True
            if dirty:
                best = None
                for i in range(t + 1, m):
                    a = A[i][t]
                    if a and (best is None or abs(a) < best[0]):
                        best = (abs(a), "row", i)
                for j in range(t + 1, n):
                    a = A[t][j]
                    if a and (best is None or abs(a) < best[0]):
                        best = (abs(a), "col", j)
                if best[1] == "row":
                    swap_rows(t, best[2])
                else:
                    swap_cols(t, best[2])
                continue
            if abs(p) == 1:
                break
            offender = None
            for i in range(t + 1, m):
                row = A[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            add_row(t, offender, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if track:
                U[t] = [-x for x in U[t]]
        diagonal.append(A[t][t])
        t += 1
    return U, V, diagonal


def smith_normal_form(matrix: SparseMatrix, track: bool = True) -> SmithForm:
    """
    Smith normal form of an integer matrix by minimal-absolute-value pivoting.

    With ``track`` the unimodular transforms are returned so that U·M·V = D.
    """
    ring = matrix.ring
    if ring.kind != RingKind.INTEGERS:
        raise UsageError("Smith normal form is computed over Z only")
    m, n = matrix.shape
    A = [[int(x) for x in row] for row in matrix.to_dense()]
    if m * n > 250_000:
        logger.debug("Smith normal form of a %dx%d integer matrix", m, n)
    U, V, diagonal = _snf_dense(A, m, n, track)
    D = SparseMatrix(ring, m, n, {(i, i): d for i, d in enumerate(diagonal)})
    return SmithForm(
        U=SparseMatrix.from_rows(ring, U, m) if track else None,
        D=D,
        V=SparseMatrix.from_rows(ring, V, n) if track else None,
        diagonal=tuple(diagonal),
    )


def invariant_factors(matrix: SparseMatrix) -> Tuple[int, ...]:
    return smith_normal_form(matrix, track=False).diagonal


def _solve_integral(matrix: SparseMatrix, b: Vector) -> Optional[Vector]:
    form = smith_normal_form(matrix)
    ub = form.U.apply(b)
    r = len(form.diagonal)
    y = {}
    for i, value in ub.items():
        if i >= r:
            return None
        d = form.diagonal[i]
        if value % d:
            return None
        y[i] = value // d
    return form.V.apply(y)


def nullity(matrix: SparseMatrix) -> int:
    return matrix.cols - rank(matrix)


class GroupDescriptor(BaseModel):
    """
    A finitely generated module over the ring, as free rank plus torsion invariants.

    ``partial`` marks degrees at the edge of a truncation window where the value is a
    bound rather than the exact answer.
    """
    ring: str
    rank: int = 0
    torsion: List[int] = []
    partial: bool = False

    @property
    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def order(self) -> Optional[int]:
        if self.rank and not self.ring.startswith("F_"):
            return None
        size = 1
        if self.ring.startswith("F_"):
            size = int(self.ring[2:]) ** self.rank
        for t in self.torsion:
            size *= t
        return size

    def __str__(self) -> str:
        if self.is_zero:
            text = "0"
        else:
            parts = []
            if self.rank:
                parts.append(self.ring if self.rank == 1 else f"{self.ring}^{self.rank}")
            parts.extend(f"Z/{t}" for t in self.torsion)
            text = " + ".join(parts)
        return text + (" (partial)" if self.partial else "")

    def same_group(self, other: "GroupDescriptor") -> bool:
        return self.ring == other.ring and self.rank == other.rank and sorted(self.torsion) == sorted(other.torsion)
