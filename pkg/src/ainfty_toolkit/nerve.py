"""
Truncated dg and A∞ nerves.

An n-simplex is a vertex list (X_0, …, X_n) with a morphism f_I ∈ hom^{2−|I|}(X_{i_0}, X_{i_m})
for every I = {i_0 < … < i_m} ⊆ [n] with m ≥ 1. The dg nerve asks, for every I,

    d f_I = Σ_{j=1}^{m−1} (−1)^{m−1−j} (f_{I∖i_j} − f_{I≥i_j} ∘ f_{I≤i_j}),

and the A∞ nerve of a strictly unital category asks

    Σ_{j=1}^{m−1} (−1)^{m−1−j} f_{I∖i_j} = m^1 f_I + Σ_{q≥2} Σ (−1)^{Σ_p (q−p)|f_{I_p}|} m^q(f_{I_1}, …, f_{I_q})

over all cuts of I into q consecutive intervals I_q, …, I_1 (I_1 the last one). On dg
categories the two agree. Simplices are enumerated over a finite coefficient set (the ring
itself when it is finite); membership is an exact test over any ring.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations, product
from typing import Dict, Hashable, Iterator, List, Mapping, Optional, Sequence, Tuple

from pydantic import BaseModel

from ainfty_toolkit.ainfty import AInftyCategory, Element, h0_inverse, is_strict_unit
from ainfty_toolkit.coefficients import Scalar, SparseMatrix, enumerate_span, kernel_basis, reduce_modulo, solve_linear
from ainfty_toolkit.complexes import cohomology_at
from ainfty_toolkit.errors import InfeasibleSizeError, InvariantViolation, PreconditionError, UsageError

logger = logging.getLogger(__name__)

DEFAULT_SIMPLEX_LIMIT = 100_000
DG, AINFTY = "dg", "ainfty"

Index = Tuple[int, ...]


@dataclass(frozen=True)
class Simplex:
    """
    Parameters
    ----------
    vertices : tuple of objects
    components : tuple of (index subset, ((gen, coefficient), ...))
        Nonzero components only, sorted by index subset. Build instances with :meth:`build`.
    """
    vertices: Tuple[Hashable, ...]
    components: Tuple[Tuple[Index, Tuple[Tuple[object, Scalar], ...]], ...] = ()

    @classmethod
    def build(cls, vertices: Sequence[Hashable], components: Mapping[Index, Element]) -> "Simplex":
        packed = []
        for I, element in sorted(components.items()):
            if element.terms:
                packed.append((tuple(I), tuple(sorted(element.terms.items(), key=lambda t: str(t[0])))))
        return cls(tuple(vertices), tuple(packed))

    @property
    def dimension(self) -> int:
        return len(self.vertices) - 1

    def terms(self, I: Index) -> Dict:
        for key, terms in self.components:
            if key == I:
                return dict(terms)
        return {}

    def __str__(self) -> str:
        parts = [f"f{''.join(map(str, I))}=" + " + ".join(f"{c}*{g.label}" for g, c in terms)
                 for I, terms in self.components]
        return "<" + ",".join(map(str, self.vertices)) + (" | " + "; ".join(parts) if parts else "") + ">"


def subsets(n: int) -> List[Index]:
    """Index subsets of [n] with at least two elements, by size then lexicographically."""
    return [I for size in range(2, n + 2) for I in combinations(range(n + 1), size)]


def face_index(i: int, J: Index) -> Index:
    """δ_i: indices of the i-th face back into the simplex."""
    return tuple(j if j < i else j + 1 for j in J)


def _cuts(m: int) -> Iterator[Tuple[int, ...]]:
    for q in range(2, m + 1):
        for inner in combinations(range(1, m), q - 1):
            yield (0,) + inner + (m,)


class HornFilling(BaseModel):
    horn: str
    filled: bool
    filler: Optional[str] = None
    missing_face: Optional[str] = None


@dataclass
class _Horn:
    vertices: Tuple[Hashable, ...]
    components: Dict[Index, Element]


class Nerve:
    """
    The dg or A∞ nerve of a category, truncated at dimension ``dim_bound``.

    Parameters
    ----------
    cat : AInftyCategory
    dim_bound : int
    kind : "dg" or "ainfty"
    coefficients : list, optional
        Coefficient set used for enumeration; defaults to the elements of a finite ring.
    invertible_only : bool
        Keep only simplices whose edges are H^0-invertible (the core).
    """

    def __init__(self, cat: AInftyCategory, dim_bound: int, kind: str = AINFTY,
                 coefficients: Optional[Sequence[Scalar]] = None, invertible_only: bool = False,
                 limit: int = DEFAULT_SIMPLEX_LIMIT):
        if kind not in (DG, AINFTY):
            raise UsageError(f"unknown nerve kind {kind}")
        if dim_bound < 0:
            raise UsageError("the dimension bound must be non-negative")
        self.cat = cat
        self.ring = cat.ring
        self.dim_bound = dim_bound
        self.kind = kind
        if coefficients is None and self.ring.is_finite:
            coefficients = self.ring.elements()
        self.coefficients = None if coefficients is None else [self.ring.coerce(c) for c in coefficients]
        self.invertible_only = invertible_only
        self.limit = limit
        self._simplices: Dict[int, List[Simplex]] = {}
        self._invertible: Dict[Tuple, bool] = {}

    def __repr__(self) -> str:
        core = ", core" if self.invertible_only else ""
        return f"Nerve({self.cat.name}, {self.kind}, N={self.dim_bound}{core})"

    # -- components and coherence ------------------------------------------

    def component(self, s: Simplex, I: Index) -> Element:
        return Element(self.ring, s.vertices[I[0]], s.vertices[I[-1]], s.terms(I))

    def residual(self, s: Simplex, I: Index) -> Element:
        """Zero exactly when the coherence equation for I holds."""
        cat = self.cat
        m = len(I) - 1
        out = -cat.m(self.component(s, I))
        for j in range(1, m):
            sign = -1 if (m - 1 - j) % 2 else 1
            out = out + self.component(s, I[:j] + I[j + 1:]).scale(sign)
            if self.kind == DG:
                later, earlier = self.component(s, I[j:]), self.component(s, I[:j + 1])
                out = out - cat.m(later, earlier).scale(sign)
        if self.kind == AINFTY:
            for cut in _cuts(m):
                pieces = [self.component(s, I[a:b + 1]) for a, b in zip(cut, cut[1:])]
                pieces.reverse()
                q = len(pieces)
                exponent = sum((q - p) * (e.degree or 0) for p, e in enumerate(pieces, start=1))
                out = out - cat.m(*pieces).scale(-1 if exponent % 2 else 1)
        return out

    def _degrees_ok(self, s: Simplex) -> bool:
        objects = self.cat.objects()
        if any(X not in objects for X in s.vertices):
            return False
        for I, terms in s.components:
            for g, _ in terms:
                if g.degree != 2 - len(I) or (g.source, g.target) != (s.vertices[I[0]], s.vertices[I[-1]]):
                    return False
        return True

    def is_invertible_edge(self, f: Element) -> bool:
        key = (f.source, f.target, tuple(sorted(f.terms.items(), key=lambda t: str(t[0]))))
        if key not in self._invertible:
            self._invertible[key] = h0_inverse(self.cat, f) is not None
        return self._invertible[key]

    def is_simplex(self, s: Simplex) -> bool:
        if s.dimension > self.dim_bound or not self._degrees_ok(s):
            return False
        if not all(self.residual(s, I).is_zero for I in subsets(s.dimension)):
            return False
        if self.invertible_only:
            return all(self.is_invertible_edge(self.component(s, I)) for I in combinations(range(len(s.vertices)), 2))
        return True

    # -- simplicial structure ----------------------------------------------

    def face(self, s: Simplex, i: int) -> Simplex:
        n = s.dimension
        if not 0 <= i <= n or n == 0:
            raise UsageError(f"no face d_{i} of a {n}-simplex")
        vertices = s.vertices[:i] + s.vertices[i + 1:]
        return Simplex.build(vertices, {J: self.component(s, face_index(i, J)) for J in subsets(n - 1)})

    def degeneracy(self, s: Simplex, k: int) -> Simplex:
        n = s.dimension
        if not 0 <= k <= n:
            raise UsageError(f"no degeneracy s_{k} of a {n}-simplex")
        vertices = s.vertices[:k + 1] + s.vertices[k:]
        components = {}
        for J in subsets(n + 1):
            if k in J and k + 1 in J:
                if J == (k, k + 1):
                    unit = self.cat.units.get(s.vertices[k])
                    if unit is None:
                        raise PreconditionError(f"no unit recorded for {s.vertices[k]}")
                    components[J] = unit
                continue
            components[J] = self.component(s, tuple(j if j <= k else j - 1 for j in J))
        return Simplex.build(vertices, components)

    def vertex(self, X: Hashable) -> Simplex:
        return Simplex((X,))

    def check_simplicial_identities(self, dimension: Optional[int] = None) -> bool:
        """d_i d_j = d_{j−1} d_i (i < j), s_i s_j = s_{j+1} s_i (i ≤ j) and the mixed identities."""
        top = self.dim_bound if dimension is None else dimension
        for n in range(0, top + 1):
            for s in self.simplices(n):
                if n >= 2:
                    for j in range(n + 1):
                        for i in range(j):
                            if self.face(self.face(s, j), i) != self.face(self.face(s, i), j - 1):
                                return False
                if n + 2 <= self.dim_bound:
                    for j in range(n + 1):
                        for i in range(j + 1):
                            if self.degeneracy(self.degeneracy(s, j), i) != \
                                    self.degeneracy(self.degeneracy(s, i), j + 1):
                                return False
                if n + 1 <= self.dim_bound:
                    for j in range(n + 1):
                        t = self.degeneracy(s, j)
                        if not self.is_simplex(t):
                            return False
                        for i in range(n + 2):
                            face = self.face(t, i)
                            if i in (j, j + 1):
                                expected = s
                            elif i < j:
                                expected = self.degeneracy(self.face(s, i), j - 1) if n else None
                            else:
                                expected = self.degeneracy(self.face(s, i - 1), j) if n else None
                            if expected is not None and face != expected:
                                return False
        return True

    # -- enumeration -------------------------------------------------------

    def _choices(self, X, Y, degree: int) -> List[Dict]:
        gens = self.cat.hom_basis_in_degree(X, Y, degree)
        return [{g: c for g, c in zip(gens, combo) if c} for combo in product(self.coefficients, repeat=len(gens))]

    def simplices_with_vertices(self, vertices: Sequence[Hashable]) -> List[Simplex]:
        """Every simplex on the given vertices, assigning components by increasing |I|."""
        if self.coefficients is None:
            raise UsageError("simplices are enumerated over a finite ring or a declared coefficient set")
        vertices = tuple(vertices)
        n = len(vertices) - 1
        order = subsets(n)
        found: List[Simplex] = []

        def extend(position: int, assigned: Dict[Index, Element]):
            if len(found) > self.limit:
                raise InfeasibleSizeError(f"more than {self.limit} simplices on {vertices}", len(found))
            if position == len(order):
                s = Simplex.build(vertices, assigned)
                if not self.invertible_only or all(
                        self.is_invertible_edge(self.component(s, I)) for I in combinations(range(n + 1), 2)):
                    found.append(s)
                return
            I = order[position]
            X, Y = vertices[I[0]], vertices[I[-1]]
            for terms in self._choices(X, Y, 2 - len(I)):
                assigned[I] = Element(self.ring, X, Y, terms)
                if self.residual(Simplex.build(vertices, assigned), I).is_zero:
                    extend(position + 1, assigned)
            assigned.pop(I, None)

        extend(0, {})
        return found

    def simplices(self, n: int) -> List[Simplex]:
        if n > self.dim_bound:
            raise UsageError(f"dimension {n} exceeds the bound {self.dim_bound}")
        if n not in self._simplices:
            result = []
            for vertices in product(self.cat.objects(), repeat=n + 1):
                result.extend(self.simplices_with_vertices(vertices))
            logger.debug("%r: %d simplices in dimension %d", self, len(result), n)
            self._simplices[n] = result
        return self._simplices[n]

    # -- horns and boundaries ----------------------------------------------

    def _assemble(self, n: int, faces: Mapping[int, Simplex]) -> _Horn:
        vertices: List[Optional[Hashable]] = [None] * (n + 1)
        components: Dict[Index, Element] = {}
        for j, face in faces.items():
            if not 0 <= j <= n or face.dimension != n - 1:
                raise UsageError(f"face d_{j} must be an {n - 1}-simplex")
            if not self.is_simplex(face):
                raise UsageError(f"face d_{j} = {face} is not a simplex of {self!r}")
            for position, X in enumerate(face.vertices):
                v = position if position < j else position + 1
                if vertices[v] is not None and vertices[v] != X:
                    raise UsageError(f"faces disagree on vertex {v}: {vertices[v]} vs {X}")
                vertices[v] = X
            for J in subsets(n - 1):
                I = face_index(j, J)
                value = self.component(face, J)
                if I in components and components[I] != value:
                    raise UsageError(f"faces disagree on the component f_{''.join(map(str, I))}")
                components[I] = value
        if any(v is None for v in vertices):
            raise UsageError("the given faces do not determine every vertex")
        return _Horn(tuple(vertices), components)

    def _solve_top(self, horn: _Horn, n: int, missing: Optional[int]) -> Optional[Simplex]:
        """
        Solve for f_{[n]} and, when ``missing`` is set, for f_{[n]∖missing} as well.

        Equations: m^1 a = K_a for the missing face and m^1 b − (−1)^{n−1−i} a = K for the top.
        """
        cat, ring = self.cat, self.ring
        vertices = horn.vertices
        X, Y = vertices[0], vertices[-1]
        top = tuple(range(n + 1))
        components = dict(horn.components)
        face_key = top[:missing] + top[missing + 1:] if missing is not None else None
        if face_key is not None:
            components[face_key] = Element.zero(ring, X, Y)
        components[top] = Element.zero(ring, X, Y)
        base = Simplex.build(vertices, components)
        a_gens = cat.hom_basis_in_degree(X, Y, 2 - n) if face_key is not None else []
        b_gens = cat.hom_basis_in_degree(X, Y, 1 - n)
        rows_1 = {g: i for i, g in enumerate(cat.hom_basis_in_degree(X, Y, 3 - n))} if face_key is not None else {}
        rows_2 = {g: len(rows_1) + i for i, g in enumerate(cat.hom_basis_in_degree(X, Y, 2 - n))}
        sign = 1
        if face_key is not None:
            sign = -1 if (n - 1 - missing) % 2 else 1
        columns = []
        for g in a_gens:
            column = {rows_1[out]: c for out, c in cat.op((g,)).items()}
            column[rows_2[g]] = -sign
            columns.append(column)
        for h in b_gens:
            columns.append({rows_2[out]: c for out, c in cat.op((h,)).items()})
        rhs: Dict[int, Scalar] = {}
        if face_key is not None:
            for g, c in self.residual(base, face_key).terms.items():
                rhs[rows_1[g]] = c
        for g, c in self.residual(base, top).terms.items():
            rhs[rows_2[g]] = c
        system = SparseMatrix.from_columns(ring, len(rows_1) + len(rows_2), columns)
        solution = solve_linear(system, rhs)
        if solution is None:
            return None
        if face_key is not None:
            components[face_key] = Element(ring, X, Y, {g: solution[i] for i, g in enumerate(a_gens)
                                                        if solution.get(i)})
        offset = len(a_gens)
        components[top] = Element(ring, X, Y, {h: solution[offset + i] for i, h in enumerate(b_gens)
                                               if solution.get(offset + i)})
        filler = Simplex.build(vertices, components)
        if not all(self.residual(filler, I).is_zero for I in subsets(n)):
            raise InvariantViolation(f"solved filler {filler} violates the coherence equations")
        return filler

    def fill_inner_horn(self, faces: Mapping[int, Simplex], i: int) -> Optional[Simplex]:
        """A simplex whose faces d_j (j ≠ i) are the given ones, for 0 < i < n ≤ 3."""
        n = len(faces)
        if set(faces) != set(range(n + 1)) - {i} or not 0 < i < n:
            raise UsageError(f"an inner horn Λ^{n}_{i} needs exactly the faces d_j, j ≠ {i}")
        if n > min(3, self.dim_bound):
            raise UsageError(f"horns are filled up to dimension {min(3, self.dim_bound)}")
        filler = self._solve_top(self._assemble(n, faces), n, i)
        if filler is None:
            logger.warning("no filler for the inner horn Λ^%d_%d of %r", n, i, self)
        return filler

    def fill_boundary(self, faces: Sequence[Simplex]) -> Optional[Simplex]:
        """A simplex with exactly the given faces d_0, …, d_n, or None."""
        n = len(faces) - 1
        if n < 1 or n > self.dim_bound:
            raise UsageError(f"a boundary of dimension {n} cannot be filled in {self!r}")
        return self._solve_top(self._assemble(n, dict(enumerate(faces))), n, None)

    def horn_report(self, faces: Mapping[int, Simplex], i: int) -> HornFilling:
        filler = self.fill_inner_horn(faces, i)
        return HornFilling(horn=f"Λ^{len(faces)}_{i}", filled=filler is not None,
                           filler=str(filler) if filler is not None else None)

    # -- core and homotopy -------------------------------------------------

    def core(self) -> "Nerve":
        """Simplices whose edges are all invertible in H^0."""
        return Nerve(self.cat, self.dim_bound, self.kind, self.coefficients, invertible_only=True, limit=self.limit)

    def edge(self, f: Element) -> Simplex:
        return Simplex.build((f.source, f.target), {(0, 1): f})

    def pi0(self) -> List[List[Hashable]]:
        """Vertices modulo the equivalence relation generated by the edges."""
        parent = {X: X for X in self.cat.objects()}

        def find(X):
            while parent[X] != X:
                X = parent[X]
            return X

        for s in self.simplices(1):
            a, b = find(s.vertices[0]), find(s.vertices[1])
            if a != b:
                parent[b] = a
        classes: Dict[Hashable, List[Hashable]] = {}
        for X in self.cat.objects():
            classes.setdefault(find(X), []).append(X)
        return list(classes.values())

    def homotopic_edges(self, f: Element, g: Element) -> bool:
        """A 2-simplex with boundary (s_0 y, g, f) exists."""
        Y = f.target
        unit_edge = self.degeneracy(self.vertex(Y), 0)
        return self.fill_boundary([unit_edge, self.edge(g), self.edge(f)]) is not None

    def compose_edges(self, g: Element, f: Element) -> Element:
        """d_1 of a filler of the horn (d_0 = g, d_2 = f)."""
        filler = self.fill_inner_horn({0: self.edge(g), 2: self.edge(f)}, 1)
        if filler is None:
            raise InvariantViolation(f"no composite of {g} and {f} in {self!r}")
        return self.component(filler, (0, 2))

    def dump(self) -> Dict[str, List[Dict[str, object]]]:
        """Per-dimension simplex listing with the indices of the faces one dimension down."""
        out: Dict[str, List[Dict[str, object]]] = {}
        positions: Dict[int, Dict[Simplex, int]] = {}
        for n in range(self.dim_bound + 1):
            listing = self.simplices(n)
            positions[n] = {s: k for k, s in enumerate(listing)}
            entries = []
            for s in listing:
                entry: Dict[str, object] = {
                    "vertices": [str(X) for X in s.vertices],
                    "components": {"".join(map(str, I)): " + ".join(f"{c}*{g.label}" for g, c in terms)
                                   for I, terms in s.components},
                }
                if n:
                    entry["faces"] = [positions[n - 1].get(self.face(s, i)) for i in range(n + 1)]
                entries.append(entry)
            out[str(n)] = entries
        return out


def dg_nerve(cat: AInftyCategory, dim_bound: int, **kwargs) -> Nerve:
    if cat.highest_arity() > 2:
        raise PreconditionError(f"{cat.name} has operations of arity above 2; use ainfty_nerve")
    return Nerve(cat, dim_bound, DG, **kwargs)


def ainfty_nerve(cat: AInftyCategory, dim_bound: int, **kwargs) -> Nerve:
    if not cat.strictly_unital:
        raise PreconditionError(f"the A∞ nerve needs a strictly unital category; {cat.name} is not")
    for X in cat.objects():
        e = cat.units.get(X)
        if e is None or not is_strict_unit(cat, X, e):
            raise PreconditionError(f"the recorded unit of {X} in {cat.name} is not strict")
    return Nerve(cat, dim_bound, AINFTY, **kwargs)


def same_simplices(left: Nerve, right: Nerve, dim_bound: Optional[int] = None) -> bool:
    top = min(left.dim_bound, right.dim_bound) if dim_bound is None else dim_bound
    return all(set(left.simplices(n)) == set(right.simplices(n)) for n in range(top + 1))


def inner_horns(nerve: Nerve, n: int, limit: int = 64) -> Iterator[Tuple[Dict[int, Simplex], int]]:
    """
    Inner horns Λ^n_i (n = 2, 3) spanned by chains of n composable edges. For n = 3 the three
    given faces are themselves fillers of 2-horns; chains whose lower horns do not fill are skipped.
    """
    if n not in (2, 3):
        raise UsageError("inner horns are generated in dimensions 2 and 3")
    edges: Dict[Hashable, List[Element]] = {}
    for s in nerve.simplices(1):
        edges.setdefault(s.vertices[0], []).append(nerve.component(s, (0, 1)))
    produced = 0

    def chains(length: int) -> Iterator[List[Element]]:
        def extend(path: List[Element]) -> Iterator[List[Element]]:
            if len(path) == length:
                yield list(path)
                return
            for g in edges.get(path[-1].target, []):
                path.append(g)
                yield from extend(path)
                path.pop()

        for X in nerve.cat.objects():
            for f in edges.get(X, []):
                yield from extend([f])

    for chain in chains(n):
        if produced >= limit:
            return
        if n == 2:
            f, g = chain
            produced += 1
            yield {0: nerve.edge(g), 2: nerve.edge(f)}, 1
            continue
        f, g, h = chain
        lower = nerve.fill_inner_horn({0: nerve.edge(g), 2: nerve.edge(f)}, 1)
        upper = nerve.fill_inner_horn({0: nerve.edge(h), 2: nerve.edge(g)}, 1)
        if lower is None or upper is None:
            continue
        gf, hg = nerve.component(lower, (0, 2)), nerve.component(upper, (0, 2))
        front = nerve.fill_inner_horn({0: nerve.edge(hg), 2: nerve.edge(f)}, 1)
        back = nerve.fill_inner_horn({0: nerve.edge(h), 2: nerve.edge(gf)}, 1)
        if front is not None:
            produced += 1
            yield {0: upper, 2: front, 3: lower}, 1
        if back is not None:
            produced += 1
            yield {0: upper, 1: back, 3: lower}, 2


# ---------------------------------------------------------------------------
# π_1 of the core and π_i of mapping spaces
# ---------------------------------------------------------------------------

class Pi1Report(BaseModel):
    category: str
    vertex: str
    order: int
    element_orders: List[int]
    cyclic: bool
    h0_units: int
    isomorphic_to_h0_units: bool


def _h0_key(cat: AInftyCategory, f: Element) -> Tuple:
    C = cat.hom(f.source, f.target)
    boundaries = [c for c in C.d(-1).columns() if c]
    vector = {C.module.index(0, g): c for g, c in f.terms.items()}
    reduced = reduce_modulo(cat.ring, boundaries, vector)
    return tuple(cat.ring.norm(reduced.get(i, 0)) for i in range(C.rank(0)))


def _classes(items: Sequence, related) -> List[List[int]]:
    parent = list(range(len(items)))

    def find(i: int) -> int:
        while parent[i] != i:
            i = parent[i]
        return i

    for i in range(len(items)):
        for j in range(i):
            if find(i) != find(j) and related(items[j], items[i]):
                parent[find(i)] = find(j)
    grouped: Dict[int, List[int]] = {}
    for i in range(len(items)):
        grouped.setdefault(find(i), []).append(i)
    return list(grouped.values())


def pi1_core(nerve: Nerve, x: Hashable) -> Pi1Report:
    """
    π_1(core, x) from invertible loops up to 2-simplex homotopy, with composition by horn filling,
    compared against the group of invertible classes of H^0 hom(x, x).
    """
    if nerve.dim_bound < 2:
        raise UsageError("π_1 needs the nerve up to dimension 2")
    core = nerve if nerve.invertible_only else nerve.core()
    cat = core.cat
    loops = [core.component(s, (0, 1)) for s in core.simplices_with_vertices((x, x))]
    classes = _classes(loops, core.homotopic_edges)
    representatives = [loops[c[0]] for c in classes]
    lookup = {}
    for k, members in enumerate(classes):
        for i in members:
            lookup[i] = k

    def class_of(f: Element) -> int:
        for i, loop in enumerate(loops):
            if core.homotopic_edges(loop, f):
                return lookup[i]
        raise InvariantViolation(f"{f} is not homotopic to any enumerated loop at {x}")

    table = [[class_of(core.compose_edges(g, f)) for f in representatives] for g in representatives]
    identity = class_of(cat.units[x])
    element_orders = []
    for k in range(len(representatives)):
        power, order = k, 1
        while power != identity:
            power = table[k][power]
            order += 1
            if order > len(representatives):
                raise InvariantViolation("loop classes do not form a group")
        element_orders.append(order)

    # (H^0 hom(x, x))^× through class coordinates
    C = cat.hom(x, x)
    cocycles = kernel_basis(C.d(0))
    units = {}
    for vector in enumerate_span(cat.ring, cocycles, nerve.limit):
        f = Element(cat.ring, x, x, {C.labels(0)[i]: c for i, c in vector.items()})
        if h0_inverse(cat, f) is not None:
            units.setdefault(_h0_key(cat, f), f)
    keys = [_h0_key(cat, f) for f in representatives]
    isomorphic = len(set(keys)) == len(keys) and set(keys) == set(units)
    if isomorphic:
        for g_index, g in enumerate(representatives):
            for f_index, f in enumerate(representatives):
                if keys[table[g_index][f_index]] != _h0_key(cat, cat.m(g, f)):
                    isomorphic = False
    order = len(representatives)
    return Pi1Report(category=cat.name, vertex=str(x), order=order, element_orders=sorted(element_orders),
                     cyclic=order in element_orders, h0_units=len(units), isomorphic_to_h0_units=isomorphic)


class MappingSpaceGroup(BaseModel):
    i: int
    dold_kan: str
    enumerated: Optional[int] = None
    agrees: Optional[bool] = None
    note: str = ""


class MappingSpaceReport(BaseModel):
    category: str
    source: str
    target: str
    groups: List[MappingSpaceGroup]

    @property
    def passed(self) -> bool:
        return all(g.agrees is not False for g in self.groups)


def _pi0_enumerated(nerve: Nerve, x, y) -> int:
    edges = [nerve.component(s, (0, 1)) for s in nerve.simplices_with_vertices((x, y))]
    return len(_classes(edges, nerve.homotopic_edges))


def _pi1_enumerated(nerve: Nerve, x, y) -> int:
    ring = nerve.ring
    zero = Element.zero(ring, x, y)
    unit = nerve.cat.units[y]
    loops = []
    for terms in nerve._choices(x, y, -1):
        s = Simplex.build((x, y, y), {(0, 1): zero, (1, 2): unit, (0, 2): zero, (0, 1, 2): Element(ring, x, y, terms)})
        if nerve.is_simplex(s):
            loops.append(s)
    degenerate = nerve.degeneracy(nerve.edge(zero), 1)
    back = nerve.degeneracy(nerve.degeneracy(nerve.vertex(y), 0), 0)

    def related(s: Simplex, t: Simplex) -> bool:
        return nerve.fill_boundary([back, degenerate, t, s]) is not None

    return len(_classes(loops, related))


def pi_vs_cohomology(cat: AInftyCategory, x: Hashable, y: Hashable, max_i: int = 2,
                     coefficients: Optional[Sequence[Scalar]] = None, limit: int = 4096) -> MappingSpaceReport:
    """
    π_i of the mapping space from x to y: H^{−i} hom(x, y) (Dold-Kan) against simplex enumeration
    for i ≤ 1 (finite rings, or a declared coefficient set).
    """
    if not 0 <= max_i <= 2:
        raise UsageError("π_i is computed for 0 ≤ i ≤ 2")
    nerve = ainfty_nerve(cat, 3, coefficients=coefficients, limit=limit)
    groups = []
    for i in range(max_i + 1):
        group = cohomology_at(cat.hom(x, y), -i)
        entry = MappingSpaceGroup(i=i, dold_kan=str(group))
        if i <= 1:
            size = len(cat.hom_basis_in_degree(x, y, -i))
            if nerve.coefficients is None or not cat.ring.is_finite:
                entry.note = "enumeration needs a finite ring"
            elif len(nerve.coefficients) ** size > limit:
                entry.note = f"enumeration skipped: {len(nerve.coefficients) ** size} candidates"
            else:
                count = _pi0_enumerated(nerve, x, y) if i == 0 else _pi1_enumerated(nerve, x, y)
                entry.enumerated = count
                entry.agrees = count == group.order()
        groups.append(entry)
    return MappingSpaceReport(category=cat.name, source=str(x), target=str(y), groups=groups)
