"""
Bounded cochain complexes of free modules over a coefficient ring.

The differential in degree d is a matrix of shape (rank C^{d+1}, rank C^d). Every
complex checks d ∘ d = 0 when it is built. Cohomology over Z carries free rank and
torsion read off the Smith normal form; over a field it is a dimension.

Usage:
    C = CochainComplex.build(ring, {0: ["x"], 1: ["y"]}, {0: [[2]]})
    cohomology(C)            # {0: 0, 1: Z/2}
    cone(ChainMap.identity(C))
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from ainfty_toolkit.coefficients import (
    GroupDescriptor,
    _Echelon,
    Ring,
    Scalar,
    SparseMatrix,
    Vector,
    invariant_factors,
    kernel_basis,
    rank,
    smith_normal_form,
    solve_linear,
    vector_add,
)
from ainfty_toolkit.errors import InvariantViolation, PreconditionError, UsageError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class GradedModule:
    """Free graded module given by labelled bases in finitely many degrees."""
    ring: Ring
    basis: Mapping[int, Tuple[Hashable, ...]]
    _index: Dict[int, Dict[Hashable, int]] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        cleaned = {d: tuple(labels) for d, labels in self.basis.items() if len(labels)}
        object.__setattr__(self, "basis", cleaned)
        for d, labels in cleaned.items():
            index = {label: i for i, label in enumerate(labels)}
            if len(index) != len(labels):
                raise UsageError(f"duplicate basis labels in degree {d}")
            self._index[d] = index

    def rank(self, degree: int) -> int:
        return len(self.basis.get(degree, ()))

    def labels(self, degree: int) -> Tuple[Hashable, ...]:
        return self.basis.get(degree, ())

    def index(self, degree: int, label: Hashable) -> int:
        try:
            return self._index[degree][label]
        except KeyError as exc:
            raise UsageError(f"no basis element {label!r} in degree {degree}") from exc

    def degrees(self) -> List[int]:
        return sorted(self.basis)

    @property
    def total_rank(self) -> int:
        return sum(len(v) for v in self.basis.values())


@dataclass(frozen=True, eq=False)
class CochainComplex:
    """
    Parameters
    ----------
    module : GradedModule
    differential : dict
        degree d -> matrix C^d -> C^{d+1}; missing degrees are zero.
    window : (int, int), optional
        Degrees in which the complex is trusted. Cohomology outside the window is
        flagged partial. ``None`` means the complex is exact everywhere.
    """
    module: GradedModule
    differential: Mapping[int, SparseMatrix]
    window: Optional[Tuple[int, int]] = None
    check: bool = True

    def __post_init__(self):
        for d, matrix in self.differential.items():
            expected = (self.module.rank(d + 1), self.module.rank(d))
            if matrix.shape != expected:
                raise UsageError(f"differential in degree {d} has shape {matrix.shape}, expected {expected}")
        if self.check:
            for d in self.differential:
                nxt = self.differential.get(d + 1)
                if nxt is not None and not (nxt @ self.differential[d]).is_zero():
                    raise InvariantViolation(f"d∘d ≠ 0 starting in degree {d}")

    @classmethod
    def build(cls, ring: Ring, basis: Mapping[int, Sequence[Hashable]],
              differential: Mapping[int, Sequence[Sequence]], window=None) -> "CochainComplex":
        """Build from labels and dense integer matrices (rows index degree d+1)."""
        module = GradedModule(ring, {d: tuple(v) for d, v in basis.items()})
        matrices = {}
        for d, rows in differential.items():
            matrices[d] = SparseMatrix.from_rows(ring, rows, module.rank(d)) if rows else \
                SparseMatrix.zero(ring, module.rank(d + 1), module.rank(d))
        return cls(module, matrices, window)

    @property
    def ring(self) -> Ring:
        return self.module.ring

    def rank(self, degree: int) -> int:
        return self.module.rank(degree)

    def labels(self, degree: int):
        return self.module.labels(degree)

    def d(self, degree: int) -> SparseMatrix:
        matrix = self.differential.get(degree)
        if matrix is None:
            return SparseMatrix.zero(self.ring, self.rank(degree + 1), self.rank(degree))
        return matrix

    def degrees(self) -> List[int]:
        return self.module.degrees()

    def is_trusted(self, degree: int) -> bool:
        return self.window is None or self.window[0] <= degree <= self.window[1]


def _compatible(C: CochainComplex, D: CochainComplex):
    if C.ring != D.ring:
        raise UsageError(f"complexes over different rings: {C.ring} and {D.ring}")


@dataclass(frozen=True, eq=False)
class ChainMap:
    """A graded map of the given degree; ``components[d]`` maps C^d to D^{d+degree}."""
    source: CochainComplex
    target: CochainComplex
    components: Mapping[int, SparseMatrix]
    degree: int = 0

    def __post_init__(self):
        _compatible(self.source, self.target)
        for d, m in self.components.items():
            expected = (self.target.rank(d + self.degree), self.source.rank(d))
            if m.shape != expected:
                raise UsageError(f"component in degree {d} has shape {m.shape}, expected {expected}")

    @classmethod
    def identity(cls, C: CochainComplex) -> "ChainMap":
        return cls(C, C, {d: SparseMatrix.identity(C.ring, C.rank(d)) for d in C.degrees()})

    @classmethod
    def zero(cls, C: CochainComplex, D: CochainComplex, degree: int = 0) -> "ChainMap":
        return cls(C, D, {}, degree)

    @classmethod
    def from_function(cls, C: CochainComplex, D: CochainComplex, fn, degree: int = 0) -> "ChainMap":
        """``fn(d, label)`` returns a dict label -> coefficient in D^{d+degree}."""
        comps = {}
        for d in C.degrees():
            columns = []
            for label in C.labels(d):
                image = fn(d, label)
                columns.append({D.module.index(d + degree, k): v for k, v in image.items()})
            comps[d] = SparseMatrix.from_columns(C.ring, D.rank(d + degree), columns)
        return cls(C, D, comps, degree)

    def component(self, degree: int) -> SparseMatrix:
        m = self.components.get(degree)
        if m is None:
            return SparseMatrix.zero(self.source.ring, self.target.rank(degree + self.degree),
                                     self.source.rank(degree))
        return m

    def apply(self, degree: int, vector: Vector) -> Vector:
        return self.component(degree).apply(vector)

    def _degrees(self) -> List[int]:
        return sorted(set(self.source.degrees()) | {d - self.degree for d in self.target.degrees()})

    def is_closed(self) -> bool:
        """d_D f = (−1)^{deg f} f d_C in every degree."""
        sign = -1 if self.degree % 2 else 1
        for d in self._degrees():
            left = self.target.d(d + self.degree) @ self.component(d)
            right = (self.component(d + 1) @ self.source.d(d)).scale(sign)
            if left != right:
                return False
        return True

    def compose(self, other: "ChainMap") -> "ChainMap":
        """self ∘ other."""
        if other.target is not self.source and other.target.module.basis != self.source.module.basis:
            raise UsageError("maps are not composable")
        comps = {}
        for d in other.source.degrees():
            comps[d] = self.component(d + other.degree) @ other.component(d)
        return ChainMap(other.source, self.target, comps, self.degree + other.degree)

    def _combine(self, other: "ChainMap", sign: int) -> "ChainMap":
        if self.degree != other.degree:
            raise UsageError("maps of different degrees")
        comps = {}
        for d in set(self.components) | set(other.components):
            comps[d] = self.component(d) + other.component(d).scale(sign)
        return ChainMap(self.source, self.target, comps, self.degree)

    def __add__(self, other: "ChainMap") -> "ChainMap":
        return self._combine(other, 1)

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        return self._combine(other, -1)

    def scale(self, c: Scalar) -> "ChainMap":
        return ChainMap(self.source, self.target, {d: m.scale(c) for d, m in self.components.items()}, self.degree)

    def equals(self, other: "ChainMap") -> bool:
        return all(self.component(d) == other.component(d)
                   for d in set(self.components) | set(other.components))


@dataclass(frozen=True, eq=False)
class Homotopy:
    """h with d h − (−1)^{deg h} h d = g − f; for degree 0 maps this reads dh + hd = g − f."""
    f: ChainMap
    g: ChainMap
    components: Mapping[int, SparseMatrix]

    @property
    def degree(self) -> int:
        return self.f.degree - 1

    def as_map(self) -> ChainMap:
        return ChainMap(self.f.source, self.f.target, self.components, self.degree)

    def verify(self) -> bool:
        h = self.as_map()
        sign = -1 if self.degree % 2 else 1
        diff = self.g - self.f
        for d in diff._degrees():
            lhs = (self.f.target.d(d + self.degree) @ h.component(d)) - \
                (h.component(d + 1) @ self.f.source.d(d)).scale(sign)
            if lhs != diff.component(d):
                return False
        return True


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------

def shift(C: CochainComplex, n: int) -> CochainComplex:
    """(s^n C)^d = C^{d+n} with differential (−1)^n d."""
    sign = -1 if n % 2 else 1
    module = GradedModule(C.ring, {d - n: labels for d, labels in C.module.basis.items()})
    diff = {d - n: m.scale(sign) for d, m in C.differential.items()}
    window = None if C.window is None else (C.window[0] - n, C.window[1] - n)
    return CochainComplex(module, diff, window, check=False)


def cone(f: ChainMap, alternate: bool = False) -> CochainComplex:
    """
    Mapping cone of f: U -> T. Degree d is T^d ⊕ U^{d+1} with differential
    [[d_T, f], [0, −d_U]]; ``alternate`` uses [[d_T, −f], [0, −d_U]].
    Basis labels are ("T", label) and ("U", label).
    """
    if f.degree != 0:
        raise PreconditionError("cone needs a degree 0 map")
    if not f.is_closed():
        raise PreconditionError("cone needs a closed map (f d = d f)")
    U, T = f.source, f.target
    ring = T.ring
    degrees = sorted(set(T.degrees()) | {d - 1 for d in U.degrees()})
    basis = {d: tuple(("T", x) for x in T.labels(d)) + tuple(("U", x) for x in U.labels(d + 1)) for d in degrees}
    sign = -1 if alternate else 1
    diff = {}
    for d in degrees:
        diff[d] = SparseMatrix.block(
            ring,
            [[T.d(d), f.component(d + 1).scale(sign)], [None, -U.d(d + 1)]],
            [T.rank(d + 1), U.rank(d + 2)],
            [T.rank(d), U.rank(d + 1)],
        )
    window = None
    if T.window is not None or U.window is not None:
        lo_t, hi_t = T.window or (min(degrees, default=0), max(degrees, default=0))
        lo_u, hi_u = U.window or (min(degrees, default=0) + 1, max(degrees, default=0) + 1)
        window = (max(lo_t, lo_u - 1), min(hi_t, hi_u - 1))
    return CochainComplex(GradedModule(ring, basis), diff, window)


def cone_comparison(f: ChainMap) -> ChainMap:
    """The isomorphism diag(1, −1) from cone(f) to cone(f, alternate=True)."""
    A, B = cone(f), cone(f, alternate=True)
    comps = {}
    for d in A.degrees():
        comps[d] = SparseMatrix(A.ring, A.rank(d), A.rank(d), {
            (i, i): (A.ring.one if label[0] == "T" else A.ring.neg(1)) for i, label in enumerate(A.labels(d))
        })
    return ChainMap(A, B, comps)


def _require_exact(*complexes: CochainComplex):
    for C in complexes:
        if C.window is not None:
            raise UsageError("this construction needs complexes without a truncation window")


def hom_complex(C: CochainComplex, D: CochainComplex) -> CochainComplex:
    """
    Hom^n(C, D) = ⊕_p Hom(C^p, D^{p+n}) with δφ = d_D φ − (−1)^n φ d_C.

    The basis element (p, c, e) sends the basis vector c of C^p to e in D^{p+n}.
    """
    _compatible(C, D)
    _require_exact(C, D)
    ring = C.ring
    basis: Dict[int, List] = {}
    for p in C.degrees():
        for q in D.degrees():
            n = q - p
            basis.setdefault(n, []).extend((p, c, e) for c in C.labels(p) for e in D.labels(q))
    module = GradedModule(ring, {n: tuple(v) for n, v in basis.items()})
    d_columns = {q: D.d(q).columns() for q in D.degrees()}
    c_rows = {p: C.d(p - 1).row_dicts() for p in C.degrees()}
    diff = {}
    for n in module.degrees():
        sign = -1 if n % 2 else 1
        columns = []
        for (p, c, e) in module.labels(n):
            q = p + n
            col: Vector = {}
            for i, v in d_columns[q][D.module.index(q, e)].items():
                vector_add(ring, col, {module.index(n + 1, (p, c, D.labels(q + 1)[i])): v})
            for j, v in c_rows[p][C.module.index(p, c)].items():
                vector_add(ring, col, {module.index(n + 1, (p - 1, C.labels(p - 1)[j], e)): v}, -sign)
            columns.append(col)
        diff[n] = SparseMatrix.from_columns(ring, module.rank(n + 1), columns)
    return CochainComplex(module, diff)


def tensor(C: CochainComplex, D: CochainComplex) -> CochainComplex:
    """(C ⊗ D)^n = ⊕ C^p ⊗ D^q with d(x ⊗ y) = dx ⊗ y + (−1)^p x ⊗ dy."""
    _compatible(C, D)
    _require_exact(C, D)
    ring = C.ring
    basis: Dict[int, List] = {}
    for p in C.degrees():
        for q in D.degrees():
            basis.setdefault(p + q, []).extend((p, x, y) for x in C.labels(p) for y in D.labels(q))
    module = GradedModule(ring, {n: tuple(v) for n, v in basis.items()})
    diff = {}
    for n in module.degrees():
        columns = []
        for (p, x, y) in module.labels(n):
            q = n - p
            col: Vector = {}
            for i, v in C.d(p).column(C.module.index(p, x)).items():
                vector_add(ring, col, {module.index(n + 1, (p + 1, C.labels(p + 1)[i], y)): v})
            sign = -1 if p % 2 else 1
            for i, v in D.d(q).column(D.module.index(q, y)).items():
                vector_add(ring, col, {module.index(n + 1, (p, x, D.labels(q + 1)[i])): v}, sign)
            columns.append(col)
        diff[n] = SparseMatrix.from_columns(ring, module.rank(n + 1), columns)
    return CochainComplex(module, diff)


def shift_isomorphisms(C: CochainComplex, D: CochainComplex) -> Tuple[ChainMap, ChainMap]:
    """
    The canonical isomorphisms hom(C, sD) -> s hom(C, D) -> hom(s⁻¹C, D).

    The first is the identity on labels; the second relabels p -> p+1 with the sign (−1)^n.
    """
    H = hom_complex(C, D)
    left = hom_complex(C, shift(D, 1))
    middle = shift(H, 1)
    right = hom_complex(shift(C, -1), D)
    first = ChainMap.from_function(left, middle, lambda n, label: {label: 1})

    def second(n, label):
        p, c, e = label
        return {(p + 1, c, e): (-1 if n % 2 else 1)}

    return first, ChainMap.from_function(middle, right, second)


# ---------------------------------------------------------------------------
# Cohomology
# ---------------------------------------------------------------------------

def cohomology_at(C: CochainComplex, degree: int) -> GroupDescriptor:
    ring = C.ring
    out = C.d(degree)
    inc = C.d(degree - 1)
    cycles_rank = C.rank(degree) - rank(out)
    if ring.is_field:
        return GroupDescriptor(ring=ring.name, rank=cycles_rank - rank(inc), partial=not C.is_trusted(degree))
    factors = invariant_factors(inc)
    torsion = [d for d in factors if d > 1]
    return GroupDescriptor(ring=ring.name, rank=cycles_rank - len(factors), torsion=torsion,
                           partial=not C.is_trusted(degree))


def cohomology(C: CochainComplex, degrees: Optional[Iterable[int]] = None) -> Dict[int, GroupDescriptor]:
    if degrees is None:
        present = C.degrees()
        degrees = range(min(present), max(present) + 1) if present else []
    return {d: cohomology_at(C, d) for d in degrees}


def is_acyclic(C: CochainComplex, degrees: Optional[Iterable[int]] = None) -> bool:
    return all(h.is_zero for h in cohomology(C, degrees).values())


@dataclass
class CohomologyBasis:
    """Class representatives of H^d over a field, and coordinates of cocycles."""
    complex: CochainComplex
    degree: int
    representatives: List[Vector]
    _system: SparseMatrix

    @property
    def dimension(self) -> int:
        return len(self.representatives)

    def coordinates(self, cocycle: Vector) -> Tuple[Scalar, ...]:
        solution = solve_linear(self._system, cocycle)
        if solution is None:
            raise UsageError("vector is not a cocycle")
        nb = self._system.cols - self.dimension
        return tuple(solution.get(nb + i, self.complex.ring.zero) for i in range(self.dimension))

    def is_boundary(self, vector: Vector) -> bool:
        return all(c == 0 for c in self.coordinates(vector))


def cohomology_basis(C: CochainComplex, degree: int) -> CohomologyBasis:
    ring = C.ring
    if not ring.is_field:
        raise UsageError("class representatives are computed over fields")
    boundaries = [c for c in C.d(degree - 1).columns() if c]
    cycles = kernel_basis(C.d(degree))
    echelon = _Echelon(ring)
    for b in boundaries:
        echelon.add(b)
    reps = [z for z in cycles if echelon.add(z)]
    system = SparseMatrix.from_columns(ring, C.rank(degree), boundaries + reps)
    return CohomologyBasis(C, degree, reps, system)


def is_coboundary(C: CochainComplex, degree: int, vector: Vector) -> bool:
    return solve_linear(C.d(degree - 1), vector) is not None


# ---------------------------------------------------------------------------
# Homotopies
# ---------------------------------------------------------------------------

def map_to_vector(H: CochainComplex, f: ChainMap) -> Vector:
    """Coordinates of a graded map in hom_complex(f.source, f.target)."""
    vec: Vector = {}
    C, D = f.source, f.target
    for p, m in f.components.items():
        for (i, j), v in m.entries.items():
            vec[H.module.index(f.degree, (p, C.labels(p)[j], D.labels(p + f.degree)[i]))] = v
    return vec


def vector_to_components(H: CochainComplex, C: CochainComplex, D: CochainComplex,
                         degree: int, vector: Vector) -> Dict[int, SparseMatrix]:
    entries: Dict[int, Dict] = {}
    labels = H.labels(degree)
    for k, v in vector.items():
        p, c, e = labels[k]
        entries.setdefault(p, {})[(D.module.index(p + degree, e), C.module.index(p, c))] = v
    return {p: SparseMatrix(C.ring, D.rank(p + degree), C.rank(p), ents) for p, ents in entries.items()}


def find_homotopy(f: ChainMap, g: ChainMap) -> Optional[Homotopy]:
    """A homotopy h with dh + hd = g − f (see :class:`Homotopy`), or None if none exists over the ring."""
    if f.degree != g.degree:
        raise UsageError("maps of different degrees")
    C, D = f.source, f.target
    H = hom_complex(C, D)
    k = f.degree
    target = map_to_vector(H, g - f)
    if not H.rank(k - 1):
        return Homotopy(f, g, {}) if not target else None
    solution = solve_linear(H.d(k - 1), target)
    if solution is None:
        return None
    return Homotopy(f, g, vector_to_components(H, C, D, k - 1, solution))


@dataclass(frozen=True)
class HomotopyEquivalence:
    """g with g∘f ≃ id (via h) and f∘g ≃ id (via h_prime)."""
    f: ChainMap
    g: ChainMap
    h: Homotopy
    h_prime: Homotopy


def homotopy_inverse(f: ChainMap) -> Optional[HomotopyEquivalence]:
    """
    Solve jointly for g: D -> C closed of degree 0 and homotopies g∘f ≃ id_C, f∘g ≃ id_D.
    """
    if f.degree != 0:
        raise UsageError("homotopy inverses are for degree 0 maps")
    C, D = f.source, f.target
    ring = C.ring
    DC, CC, DD = hom_complex(D, C), hom_complex(C, C), hom_complex(D, D)
    g_labels = DC.labels(0)
    pre, post = [], []
    for (p, d_lab, c_lab) in g_labels:
        di = D.module.index(p, d_lab)
        ci = C.module.index(p, c_lab)
        col_pre: Vector = {}
        for (i, j), v in f.component(p).entries.items():
            if i == di:
                vector_add(ring, col_pre, {CC.module.index(0, (p, C.labels(p)[j], c_lab)): v})
        col_post: Vector = {}
        for (i, j), v in f.component(p).entries.items():
            if j == ci:
                vector_add(ring, col_post, {DD.module.index(0, (p, d_lab, D.labels(p)[i])): v})
        pre.append(col_pre)
        post.append(col_post)
    n_g, n_h, n_h2 = DC.rank(0), CC.rank(-1), DD.rank(-1)
    rows = [DC.rank(1), CC.rank(0), DD.rank(0)]
    system = SparseMatrix.block(ring, [
        [DC.d(0), None, None],
        [SparseMatrix.from_columns(ring, CC.rank(0), pre), CC.d(-1), None],
        [SparseMatrix.from_columns(ring, DD.rank(0), post), None, DD.d(-1)],
    ], rows, [n_g, n_h, n_h2])
    rhs: Vector = {}
    vector_add(ring, rhs, {rows[0] + k: v for k, v in map_to_vector(CC, ChainMap.identity(C)).items()})
    vector_add(ring, rhs, {rows[0] + rows[1] + k: v for k, v in map_to_vector(DD, ChainMap.identity(D)).items()})
    solution = solve_linear(system, rhs)
    if solution is None:
        return None
    g_vec = {k: v for k, v in solution.items() if k < n_g}
    h_vec = {k - n_g: v for k, v in solution.items() if n_g <= k < n_g + n_h}
    h2_vec = {k - n_g - n_h: v for k, v in solution.items() if k >= n_g + n_h}
    g = ChainMap(D, C, vector_to_components(DC, D, C, 0, g_vec))
    h = Homotopy(g.compose(f), ChainMap.identity(C), vector_to_components(CC, C, C, -1, h_vec))
    h2 = Homotopy(f.compose(g), ChainMap.identity(D), vector_to_components(DD, D, D, -1, h2_vec))
    return HomotopyEquivalence(f, g, h, h2)


def is_quasi_isomorphism(f: ChainMap) -> bool:
    """A degree 0 chain map of bounded complexes is a quasi-isomorphism iff its cone is acyclic."""
    return is_acyclic(cone(f))


# ---------------------------------------------------------------------------
# Comparisons inside a bigger complex
# ---------------------------------------------------------------------------

def subcomplex_cycles(C: CochainComplex, sub: Mapping[int, Sequence[int]], degree: int) -> List[Vector]:
    """Cycles of the coordinate subcomplex spanned by ``sub[degree]``, in C^degree coordinates."""
    indices = list(sub.get(degree, ()))
    if not indices:
        return []
    cols = C.d(degree).columns()
    restricted = SparseMatrix.from_columns(C.ring, C.rank(degree + 1), [cols[i] for i in indices])
    return [{indices[k]: v for k, v in z.items()} for z in kernel_basis(restricted)]


def check_subcomplex(C: CochainComplex, sub: Mapping[int, Sequence[int]]) -> bool:
    for d, indices in sub.items():
        allowed = set(sub.get(d + 1, ()))
        cols = C.d(d).columns()
        for i in indices:
            if any(k not in allowed for k in cols[i]):
                return False
    return True


def image_in_cohomology(C: CochainComplex, degree: int, cycles: Sequence[Vector]) -> GroupDescriptor:
    """The submodule of H^degree(C) generated by the classes of ``cycles``."""
    ring = C.ring
    cycles = [z for z in cycles if z]
    boundaries = [b for b in C.d(degree - 1).columns() if b]
    n = C.rank(degree)
    if ring.is_field:
        Z = SparseMatrix.from_columns(ring, n, cycles + boundaries)
        B = SparseMatrix.from_columns(ring, n, boundaries)
        return GroupDescriptor(ring=ring.name, rank=rank(Z) - rank(B), partial=not C.is_trusted(degree))
    k = len(cycles)
    joint = SparseMatrix.from_columns(ring, n, cycles + [{i: -v for i, v in b.items()} for b in boundaries])
    relations = []
    for vec in kernel_basis(joint):
        projected = {i: v for i, v in vec.items() if i < k}
        if projected:
            relations.append(projected)
    rel = SparseMatrix.from_columns(ring, k, relations)
    factors = smith_normal_form(rel, track=False).diagonal if relations else ()
    return GroupDescriptor(ring=ring.name, rank=k - len(factors), torsion=[d for d in factors if d > 1],
                           partial=not C.is_trusted(degree))


def stable_cohomology(C: CochainComplex, sub: Mapping[int, Sequence[int]], degree: int) -> GroupDescriptor:
    """Image of H^degree(sub) in H^degree(C) for a coordinate subcomplex."""
    if not check_subcomplex(C, sub):
        raise UsageError("coordinates do not span a subcomplex")
    return image_in_cohomology(C, degree, subcomplex_cycles(C, sub, degree))


def induced_isomorphism(f: ChainMap, degree: int, sub: Optional[Mapping[int, Sequence[int]]] = None) -> bool:
    """
    Whether H^degree(f) is an isomorphism from H(source) onto the image of H(sub) in H(target).

    With ``sub`` omitted the comparison is with all of H^degree(target). The map must land in
    ``sub`` when one is given.
    """
    S, T = f.source, f.target
    ring = S.ring
    if f.degree != 0:
        raise UsageError("induced maps are compared for degree 0 maps")
    if sub is None:
        sub = {d: range(T.rank(d)) for d in T.degrees()}
    allowed = set(sub.get(degree, ()))
    source_cycles = kernel_basis(S.d(degree))
    images = [f.apply(degree, z) for z in source_cycles]
    if any(k not in allowed for img in images for k in img):
        raise UsageError("map does not land in the given subcomplex")
    target_cycles = subcomplex_cycles(T, sub, degree)
    source_h = cohomology_at(S, degree)
    image_h = image_in_cohomology(T, degree, images)
    stable_h = image_in_cohomology(T, degree, target_cycles)
    if ring.is_field:
        return image_h.rank == source_h.rank == stable_h.rank
    if not (source_h.same_group(stable_h) and image_h.same_group(stable_h)):
        return False
    boundaries = [b for b in T.d(degree - 1).columns() if b]
    span = SparseMatrix.from_columns(ring, T.rank(degree), images + boundaries)
    return all(solve_linear(span, z) is not None for z in target_cycles)
