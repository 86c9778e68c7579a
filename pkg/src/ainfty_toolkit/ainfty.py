"""
A∞-categories with finitely many objects and finite-rank graded hom modules.

Operations follow the m-convention: a basis tuple is written leftmost first,
(x_k, …, x_1) with x_1: X_0 -> X_1 applied first, and m^2(g, f) = g ∘ f. The relation
checked in arity l is

    Σ_{α+k+γ=l} (−1)^{α+kγ} m^{l−k+1}(1^α ⊗ m^k ⊗ 1^γ) = 0

with the Koszul sign (−1)^{k·Σ|x|} for m^k passing the α inputs on its left.
Every category also exposes the bar operations b_n(sy_1 ⊗ … ⊗ sy_n) =
(−1)^{Σ_p (n−p)|y_p|} s m_n(y_1, …, y_n); twisted complexes and localization are
computed in bar form, where only Koszul signs in shifted degrees appear.

Usage:
    A = z2_resolution()
    report = check_relations(A, 4)
    A.hom("X", "X")
    verdict = is_unit(A, "X", A.units["X"])
"""
from __future__ import annotations

import logging
import random
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Dict, Hashable, Iterator, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from pydantic import BaseModel

from ainfty_toolkit.coefficients import GroupDescriptor, Ring, Scalar, SparseMatrix, solve_linear
from ainfty_toolkit.complexes import (
    ChainMap,
    CochainComplex,
    GradedModule,
    Homotopy,
    cohomology,
    find_homotopy,
)
from ainfty_toolkit.errors import ArityTruncationError, IntegrityError, PreconditionError, UsageError

logger = logging.getLogger(__name__)

DEFAULT_ARITY_BOUND = 6


class Gen(NamedTuple):
    """A basis element of hom(source, target)."""
    source: str
    target: str
    label: str
    degree: int

    def __str__(self) -> str:
        return f"{self.source}->{self.target}:{self.label}"


def bar_sign(degrees: Sequence[int]) -> int:
    """(−1)^{Σ_p (n−p)|y_p|} for y_1, …, y_n written leftmost first."""
    n = len(degrees)
    exponent = sum((n - 1 - i) * d for i, d in enumerate(degrees))
    return -1 if exponent % 2 else 1


def add_into(ring: Ring, target: Dict, source: Mapping, coefficient: Scalar = 1) -> Dict:
    for key, value in source.items():
        new = ring.norm(target.get(key, 0) + coefficient * value)
        if new:
            target[key] = new
        else:
            target.pop(key, None)
    return target


@dataclass(eq=False)
class Element:
    """A linear combination of basis elements of one hom module."""
    ring: Ring
    source: Hashable
    target: Hashable
    terms: Dict[Any, Scalar] = field(default_factory=dict)

    @classmethod
    def zero(cls, ring: Ring, source, target) -> "Element":
        return cls(ring, source, target, {})

    @classmethod
    def of(cls, ring: Ring, gen, coefficient: Scalar = 1) -> "Element":
        c = ring.norm(coefficient)
        return cls(ring, gen.source, gen.target, {gen: c} if c else {})

    def _check(self, other: "Element"):
        if (self.source, self.target) != (other.source, other.target):
            raise UsageError("elements live in different hom modules")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(self.ring, self.source, self.target, add_into(self.ring, dict(self.terms), other.terms))

    def __sub__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(self.ring, self.source, self.target, add_into(self.ring, dict(self.terms), other.terms, -1))

    def __neg__(self) -> "Element":
        return self.scale(-1)

    def scale(self, c: Scalar) -> "Element":
        return Element(self.ring, self.source, self.target, add_into(self.ring, {}, self.terms, c))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return (self.source, self.target) == (other.source, other.target) and self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return f"0[{self.source}->{self.target}]"
        return " + ".join(f"{self.ring.format(c)}*{g}" for g, c in self.terms.items())

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> Optional[int]:
        degrees = {g.degree for g in self.terms}
        if len(degrees) > 1:
            raise UsageError(f"inhomogeneous element {self!r}")
        return degrees.pop() if degrees else None

    def coefficient(self, gen) -> Scalar:
        return self.terms.get(gen, self.ring.zero)


def check_composable(gens: Sequence) -> None:
    for left, right in zip(gens, gens[1:]):
        if left.source != right.target:
            raise UsageError(f"{left} cannot follow {right}: {right.target} ≠ {left.source}")


class AInftyCategory(ABC):
    """
    Base class: objects, graded hom bases and the operations on basis tuples.

    Subclasses implement either ``_compute_op`` (m-convention) or ``_compute_bar``
    (bar convention); the other one is derived with :func:`bar_sign`.
    """

    def __init__(self, ring: Ring, name: str = "", arity_bound: int = DEFAULT_ARITY_BOUND,
                 vanishes_above_bound: bool = True):
        self.ring = ring
        self.name = name
        self.arity_bound = arity_bound
        self.vanishes_above_bound = vanishes_above_bound
        self.units: Dict[Hashable, Element] = {}
        self.strictly_unital = False
        self._op_cache: Dict[Tuple, Dict] = {}
        self._bar_cache: Dict[Tuple, Dict] = {}
        self._hom_cache: Dict[Tuple, CochainComplex] = {}

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name or '?'}, {self.ring})"

    @abstractmethod
    def objects(self) -> List[Hashable]:
        ...

    @abstractmethod
    def hom_basis(self, X, Y) -> Sequence:
        ...

    def hom_basis_in_degree(self, X, Y, degree: int) -> List:
        return [g for g in self.hom_basis(X, Y) if g.degree == degree]

    def highest_arity(self) -> int:
        """Largest arity at which an operation can be nonzero."""
        return self.arity_bound

    def _compute_op(self, gens: Tuple) -> Dict:
        sign = bar_sign([g.degree for g in gens])
        return {k: sign * v for k, v in self._compute_bar(gens).items()}

    def _compute_bar(self, gens: Tuple) -> Dict:
        sign = bar_sign([g.degree for g in gens])
        return {k: sign * v for k, v in self._compute_op(gens).items()}

    def _arity_guard(self, n: int) -> bool:
        if n == 0:
            return False
        if n > self.arity_bound:
            if self.vanishes_above_bound:
                return False
            raise ArityTruncationError(f"m^{n} requested beyond the arity bound {self.arity_bound} of {self.name}")
        return True

    def op(self, gens: Tuple) -> Dict:
        """m^n on a basis tuple, as a dict basis element -> coefficient."""
        gens = tuple(gens)
        cached = self._op_cache.get(gens)
        if cached is not None:
            return cached
        check_composable(gens)
        result = {}
        if self._arity_guard(len(gens)):
            result = add_into(self.ring, {}, self._compute_op(gens))
        self._op_cache[gens] = result
        return result

    def bar_op(self, gens: Tuple) -> Dict:
        """b_n on a basis tuple; the result stands for s of the returned combination."""
        gens = tuple(gens)
        cached = self._bar_cache.get(gens)
        if cached is not None:
            return cached
        check_composable(gens)
        result = {}
        if self._arity_guard(len(gens)):
            result = add_into(self.ring, {}, self._compute_bar(gens))
        self._bar_cache[gens] = result
        return result

    def _evaluate(self, method, elements: Sequence[Element]) -> Element:
        if not elements:
            raise UsageError("operations need at least one input")
        for left, right in zip(elements, elements[1:]):
            if left.source != right.target:
                raise UsageError("elements are not composable")
        ring = self.ring
        out: Dict = {}
        for combo in product(*[list(e.terms.items()) for e in elements]):
            coefficient = 1
            for _, c in combo:
                coefficient *= c
            add_into(ring, out, method(tuple(g for g, _ in combo)), coefficient)
        return Element(ring, elements[-1].source, elements[0].target, out)

    def m(self, *elements: Element) -> Element:
        return self._evaluate(self.op, elements)

    def bar(self, *elements: Element) -> Element:
        return self._evaluate(self.bar_op, elements)

    def element(self, gen, coefficient: Scalar = 1) -> Element:
        return Element.of(self.ring, gen, coefficient)

    def hom(self, X, Y) -> CochainComplex:
        """hom(X, Y) as a cochain complex with differential m^1; basis labels are the generators."""
        key = (X, Y)
        if key not in self._hom_cache:
            self._hom_cache[key] = self._build_hom(X, Y, None)
        return self._hom_cache[key]

    def hom_window(self, X, Y, lo: int, hi: int) -> CochainComplex:
        """Degrees lo−1 .. hi+1 of hom(X, Y); cohomology is exact in lo .. hi."""
        return self._build_hom(X, Y, (lo, hi))

    def _build_hom(self, X, Y, window: Optional[Tuple[int, int]]) -> CochainComplex:
        if window is None:
            by_degree: Dict[int, List] = {}
            for g in self.hom_basis(X, Y):
                by_degree.setdefault(g.degree, []).append(g)
        else:
            lo, hi = window
            by_degree = {d: list(self.hom_basis_in_degree(X, Y, d)) for d in range(lo - 1, hi + 2)}
        module = GradedModule(self.ring, {d: tuple(v) for d, v in by_degree.items()})
        diff = {}
        for d in module.degrees():
            if window is not None and d > window[1]:
                continue
            columns = []
            for g in module.labels(d):
                col = {}
                for out, c in self.op((g,)).items():
                    col[module.index(d + 1, out)] = c
                columns.append(col)
            diff[d] = SparseMatrix.from_columns(self.ring, module.rank(d + 1), columns)
        return CochainComplex(module, diff, window)

    def composable_tuples(self, length: int, objects: Optional[Sequence] = None) -> Iterator[Tuple]:
        """All composable basis tuples of the given length, leftmost first."""
        objects = list(objects) if objects is not None else self.objects()

        def extend(path: List, current) -> Iterator[Tuple]:
            if len(path) == length:
                yield tuple(reversed(path))
                return
            for nxt in objects:
                for g in self.hom_basis(current, nxt):
                    path.append(g)
                    yield from extend(path, nxt)
                    path.pop()

        for start in objects:
            yield from extend([], start)


# ---------------------------------------------------------------------------
# Presented categories
# ---------------------------------------------------------------------------

class PresentedCategory(AInftyCategory):
    """
    A category given by stored structure constants.

    Parameters
    ----------
    ring : Ring
    objects : list of str
    basis : dict
        (X, Y) -> list of Gen, the graded basis of hom(X, Y).
    operations : dict
        tuple of Gen (leftmost first) -> dict Gen -> coefficient, in the m-convention.
        Missing tuples are zero.
    units : dict, optional
        X -> Element, the recorded (cohomological) units.
    orders : dict, optional
        Gen -> n for generators spanning a cyclic module Z/n (non-free homs).
    """

    def __init__(self, ring: Ring, objects: Sequence[str], basis: Mapping[Tuple[str, str], Sequence[Gen]],
                 operations: Mapping[Tuple, Mapping], units: Optional[Mapping[str, Element]] = None,
                 strictly_unital: bool = False, name: str = "", arity_bound: int = DEFAULT_ARITY_BOUND,
                 vanishes_above_bound: bool = True, orders: Optional[Mapping[Gen, int]] = None):
        super().__init__(ring, name, arity_bound, vanishes_above_bound)
        self._objects = list(objects)
        if len(set(self._objects)) != len(self._objects):
            raise UsageError("duplicate object names")
        self._basis = {key: tuple(v) for key, v in basis.items()}
        self.orders = dict(orders or {})
        known = set()
        for (X, Y), gens in self._basis.items():
            if X not in self._objects or Y not in self._objects:
                raise IntegrityError(f"hom({X}, {Y}) refers to an undeclared object")
            labels = [g.label for g in gens]
            if len(set(labels)) != len(labels):
                raise UsageError(f"duplicate labels in hom({X}, {Y})")
            for g in gens:
                if (g.source, g.target) != (X, Y):
                    raise UsageError(f"{g} listed under hom({X}, {Y})")
                known.add(g)
        self.operations: Dict[Tuple, Dict] = {}
        for gens, output in operations.items():
            gens = tuple(gens)
            check_composable(gens)
            for g in gens:
                if g not in known:
                    raise IntegrityError(f"operation input {g} is not a declared generator")
            degree = sum(g.degree for g in gens) + 2 - len(gens)
            cleaned = {}
            for g, c in output.items():
                if g not in known:
                    raise IntegrityError(f"operation output {g} is not a declared generator")
                if (g.source, g.target) != (gens[-1].source, gens[0].target):
                    raise UsageError(f"m^{len(gens)}{tuple(map(str, gens))} cannot output {g}")
                if g.degree != degree:
                    raise UsageError(f"m^{len(gens)}{tuple(map(str, gens))} must have degree {degree}, got {g}")
                c = self._reduce(g, ring.coerce(c))
                if c:
                    cleaned[g] = c
            if len(gens) > arity_bound and cleaned:
                raise UsageError(f"stored operation of arity {len(gens)} exceeds the arity bound {arity_bound}")
            if cleaned:
                self.operations[gens] = cleaned
        self.units = dict(units or {})
        self.strictly_unital = strictly_unital

    def _reduce(self, gen: Gen, c: Scalar) -> Scalar:
        n = self.orders.get(gen)
        return c % n if n else c

    def objects(self) -> List[str]:
        return list(self._objects)

    def hom_basis(self, X, Y) -> Sequence[Gen]:
        return self._basis.get((X, Y), ())

    def gen(self, X: str, Y: str, label: str) -> Gen:
        for g in self.hom_basis(X, Y):
            if g.label == label:
                return g
        raise IntegrityError(f"no generator {label} in hom({X}, {Y})")

    def highest_arity(self) -> int:
        return max((len(k) for k in self.operations), default=1)

    def _compute_op(self, gens: Tuple) -> Dict:
        out = {}
        for g, c in self.operations.get(gens, {}).items():
            c = self._reduce(g, c)
            if c:
                out[g] = c
        return out

    def is_free(self) -> bool:
        return not self.orders

    def _build_hom(self, X, Y, window):
        if any(g in self.orders for g in self.hom_basis(X, Y)):
            raise UsageError(f"hom({X}, {Y}) is not free; use hom_cohomology")
        return super()._build_hom(X, Y, window)

    def augment(self) -> "PresentedCategory":
        """A⁺: a new strict unit 1_X (label "1+", or "1++", …) adjoined to every object."""
        basis = {key: list(v) for key, v in self._basis.items()}
        new_units = {}
        for X in self._objects:
            existing = {g.label for g in basis.get((X, X), [])}
            label = "1+"
            while label in existing:
                label += "+"
            unit = Gen(X, X, label, 0)
            basis.setdefault((X, X), []).append(unit)
            new_units[X] = unit
        operations = {k: dict(v) for k, v in self.operations.items()}
        for X, one in new_units.items():
            for Y in self._objects:
                for g in basis.get((X, Y), []):
                    operations[(g, one)] = add_into(self.ring, operations.get((g, one), {}), {g: 1})
                for g in basis.get((Y, X), []):
                    if g == one:
                        continue
                    operations[(one, g)] = add_into(self.ring, operations.get((one, g), {}), {g: 1})
        A_plus = PresentedCategory(
            self.ring, self._objects, basis, operations,
            units={X: Element.of(self.ring, g) for X, g in new_units.items()},
            strictly_unital=True, name=f"{self.name}+", arity_bound=self.arity_bound,
            vanishes_above_bound=self.vanishes_above_bound, orders=self.orders,
        )
        A_plus.augmentation_units = new_units
        A_plus.augmented_from = self
        return A_plus


# ---------------------------------------------------------------------------
# Relations and units
# ---------------------------------------------------------------------------

def m_partial(cat: AInftyCategory, k: int, gens: Tuple) -> Dict[Tuple, Scalar]:
    """
    m^k_l = Σ_{α+k+γ=l} (−1)^{α+kγ} 1^α ⊗ m^k ⊗ 1^γ applied to a basis tuple of length l,
    including the Koszul sign for m^k passing the α inputs on its left.
    """
    ring = cat.ring
    l = len(gens)
    out: Dict[Tuple, Scalar] = {}
    for alpha in range(l - k + 1):
        gamma = l - k - alpha
        left_degree = sum(g.degree for g in gens[:alpha])
        exponent = alpha + k * gamma + k * left_degree
        sign = -1 if exponent % 2 else 1
        inner = cat.op(gens[alpha:alpha + k])
        for g, c in inner.items():
            key = gens[:alpha] + (g,) + gens[alpha + k:]
            out[key] = ring.norm(out.get(key, 0) + sign * c)
    return {key: c for key, c in out.items() if c}


def relation_residual(cat: AInftyCategory, gens: Tuple) -> Dict:
    """Σ_k m^{l−k+1} ∘ m^k_l on a basis tuple; zero exactly when the relation holds there."""
    ring = cat.ring
    l = len(gens)
    residual: Dict = {}
    for k in range(1, l + 1):
        for tup, c in m_partial(cat, k, gens).items():
            add_into(ring, residual, cat.op(tup), c)
    return residual


class RelationFailure(BaseModel):
    inputs: List[str]
    arity: int
    residual: Dict[str, Any]


class RelationReport(BaseModel):
    category: str
    max_arity: int
    checked: int
    passed: bool
    sampled: bool = False
    failure: Optional[RelationFailure] = None


def check_relations(cat: AInftyCategory, max_arity: int, sample: Optional[int] = None,
                    seed: int = 0, objects: Optional[Sequence] = None) -> RelationReport:
    """
    Check the A∞ relations on every composable basis tuple of length ≤ max_arity, or on
    ``sample`` tuples per length drawn with a fixed seed. The first failure is reported.
    """
    if max_arity > cat.arity_bound + 1 and not cat.vanishes_above_bound:
        raise ArityTruncationError(f"relations up to arity {max_arity} need m^{max_arity} beyond the bound")
    rng = random.Random(seed)
    checked = 0
    for l in range(1, max_arity + 1):
        tuples = cat.composable_tuples(l, objects)
        if sample is not None:
            pool = list(tuples)
            tuples = rng.sample(pool, min(sample, len(pool)))
        for gens in tuples:
            checked += 1
            residual = relation_residual(cat, gens)
            if residual:
                logger.info("relation fails in arity %d on %s", l, [str(g) for g in gens])
                return RelationReport(
                    category=cat.name, max_arity=max_arity, checked=checked, passed=False,
                    sampled=sample is not None,
                    failure=RelationFailure(inputs=[str(g) for g in gens], arity=l,
                                            residual={str(g): cat.ring.format(c) for g, c in residual.items()}),
                )
    return RelationReport(category=cat.name, max_arity=max_arity, checked=checked, passed=True,
                          sampled=sample is not None)


def multiplication_map(cat: AInftyCategory, e: Element, W, side: str) -> ChainMap:
    """m^2(e, −) on hom(W, X) (side="left") or m^2(−, e) on hom(X, W) (side="right")."""
    X = e.target
    H = cat.hom(W, X) if side == "left" else cat.hom(X, W)

    def image(d, gen):
        x = cat.element(gen)
        return (cat.m(e, x) if side == "left" else cat.m(x, e)).terms

    return ChainMap.from_function(H, H, image)


def is_closed(cat: AInftyCategory, e: Element) -> bool:
    return cat.m(e).is_zero


def is_strict_unit(cat: AInftyCategory, X, e: Element, k_max: int = DEFAULT_ARITY_BOUND) -> bool:
    """m^1 e = 0, m^2(e, x) = x = m^2(x, e), and m^n with an e input vanishes for 3 ≤ n ≤ k_max."""
    if (e.source, e.target) != (X, X) or e.degree not in (0, None) or e.is_zero:
        return False
    if not is_closed(cat, e):
        return False
    for W in cat.objects():
        for g in cat.hom_basis(W, X):
            if cat.m(e, cat.element(g)) != cat.element(g):
                return False
        for g in cat.hom_basis(X, W):
            if cat.m(cat.element(g), e) != cat.element(g):
                return False
    top = min(k_max, cat.highest_arity())

    def sides(length: int, attach):
        if length == 0:
            return [()]
        return [t for t in cat.composable_tuples(length) if attach(t)]

    for n in range(3, top + 1):
        for position in range(n):
            for left in sides(position, lambda t: t[-1].source == X):
                for right in sides(n - 1 - position, lambda t: t[0].target == X):
                    args = [cat.element(g) for g in left] + [e] + [cat.element(g) for g in right]
                    if not cat.m(*args).is_zero:
                        return False
    return True


@dataclass
class UnitVerdict:
    """Outcome of the unit test, with the homotopies that witness m^2(e, −) ≃ id and m^2(−, e) ≃ id."""
    is_unit: bool
    closed: bool
    left: Dict[Hashable, Optional[Homotopy]] = field(default_factory=dict)
    right: Dict[Hashable, Optional[Homotopy]] = field(default_factory=dict)
    reason: str = ""


def is_unit(cat: AInftyCategory, X, e: Element) -> UnitVerdict:
    """Decide whether e ∈ hom^0(X, X) is a cohomological unit and return witnessing homotopies."""
    if (e.source, e.target) != (X, X):
        raise UsageError(f"a unit of {X} must lie in hom({X}, {X})")
    if e.degree not in (0, None):
        return UnitVerdict(False, False, reason="not of degree 0")
    if not is_closed(cat, e):
        return UnitVerdict(False, False, reason="m^1 e ≠ 0")
    verdict = UnitVerdict(True, True)
    for W in cat.objects():
        for side, store in (("left", verdict.left), ("right", verdict.right)):
            f = multiplication_map(cat, e, W, side)
            h = find_homotopy(f, ChainMap.identity(f.source))
            store[W] = h
            if h is None:
                verdict.is_unit = False
                verdict.reason = f"m^2 with e is not homotopic to the identity on hom over {W} ({side})"
                return verdict
    return verdict


def is_unital(cat: AInftyCategory) -> bool:
    return all(X in cat.units and is_unit(cat, X, cat.units[X]).is_unit for X in cat.objects())


class ProjectivityReport(BaseModel):
    category: str
    ring: str
    homs: Dict[str, bool]
    projective: bool
    reason: str


def is_homotopically_projective(cat: AInftyCategory) -> ProjectivityReport:
    """
    Sufficient criterion: over a field every hom is; over Z a hom that is free and bounded is.
    Non-free generators make the hom fail the criterion.
    """
    orders = getattr(cat, "orders", {})
    homs = {}
    for X in cat.objects():
        for Y in cat.objects():
            gens = cat.hom_basis(X, Y)
            free = not any(g in orders for g in gens)
            homs[f"{X}->{Y}"] = cat.ring.is_field or free
    projective = all(homs.values())
    if cat.ring.is_field:
        reason = "every complex over a field is homotopically projective"
    elif projective:
        reason = "every hom is a bounded complex of free Z-modules"
    else:
        reason = "some hom is not free over Z"
    return ProjectivityReport(category=cat.name, ring=cat.ring.name, homs=homs, projective=projective, reason=reason)


def hom_cohomology(cat: AInftyCategory, X, Y):
    """Cohomology of hom(X, Y); non-free homs with vanishing m^1 are read off directly."""
    orders = getattr(cat, "orders", {})
    gens = cat.hom_basis(X, Y)
    if not any(g in orders for g in gens):
        return cohomology(cat.hom(X, Y))
    if any(cat.op((g,)) for g in gens):
        raise UsageError(f"hom({X}, {Y}) is not free and has a nonzero differential")
    result = {}
    for d in sorted({g.degree for g in gens}):
        in_degree = [g for g in gens if g.degree == d]
        result[d] = GroupDescriptor(ring=cat.ring.name, rank=sum(1 for g in in_degree if g not in orders),
                                    torsion=sorted(orders[g] for g in in_degree if g in orders))
    return result


def h0_inverse(cat: AInftyCategory, t: Element) -> Optional[Element]:
    """
    A closed s: Y -> X with m^2(s, t) ≃ 1_X and m^2(t, s) ≃ 1_Y, or None.

    Solves one linear system in s and the two degree −1 homotopies, so it works over ℤ as well.
    """
    X, Y = t.source, t.target
    if t.degree not in (0, None) or not is_closed(cat, t):
        return None
    if X not in cat.units or Y not in cat.units:
        raise PreconditionError(f"units of {X} and {Y} must be recorded")
    rows_x = {g: i for i, g in enumerate(cat.hom_basis_in_degree(X, X, 0))}
    rows_y = {g: len(rows_x) + i for i, g in enumerate(cat.hom_basis_in_degree(Y, Y, 0))}
    offset = len(rows_x) + len(rows_y)
    rows_c = {g: offset + i for i, g in enumerate(cat.hom_basis_in_degree(Y, X, 1))}
    candidates = cat.hom_basis_in_degree(Y, X, 0)
    columns = []
    for g in candidates:
        s = cat.element(g)
        column: Dict[int, Scalar] = {}
        for out, c in cat.m(s, t).terms.items():
            column[rows_x[out]] = c
        for out, c in cat.m(t, s).terms.items():
            column[rows_y[out]] = c
        for out, c in cat.op((g,)).items():
            column[rows_c[out]] = c
        columns.append(column)
    for Z, rows in ((X, rows_x), (Y, rows_y)):
        for h in cat.hom_basis_in_degree(Z, Z, -1):
            columns.append({rows[out]: -c for out, c in cat.op((h,)).items()})
    b: Dict[int, Scalar] = {}
    for Z, rows in ((X, rows_x), (Y, rows_y)):
        for g, c in cat.units[Z].terms.items():
            b[rows[g]] = c
    system = SparseMatrix.from_columns(cat.ring, offset + len(rows_c), columns)
    solution = solve_linear(system, b)
    if solution is None:
        return None
    terms = {g: solution[i] for i, g in enumerate(candidates) if solution.get(i)}
    return Element(cat.ring, Y, X, terms)
