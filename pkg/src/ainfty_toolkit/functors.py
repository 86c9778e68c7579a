"""
A∞-functors, pre-natural transformations and Hochschild cochains.

Functor components are stored in the m-convention, f^k of degree 1 − k on basis tuples
written leftmost first, and evaluated in bar form F_k = (−1)^{Σ_p (k−p)|y_p|} f^k like the
operations. The functor equations checked in arity n are

    Σ_{r+s+t=n} (−1)^{Σ_{p≤r}(|x_p|−1)} F_{r+1+t}(1^r ⊗ b_s ⊗ 1^t) = Σ_q b_q(F_{i_1} ⊗ … ⊗ F_{i_q}).

A pre-natural transformation T: f ⇒ g of degree |T| has components T^k sending
(x_k, …, x_1) to hom_B(f X_0, g X_k) in degree |T| + Σ|x| − k. The complex fun(f, g)
has differential D(r) = b_B ∘ (G…G ⊗ r ⊗ F…F) − (−1)^{|r|} r ∘ b_A in shifted degrees,
truncated to components of arity ≤ K (a quotient complex).

Usage:
    F = identity_functor(A)
    check_functor(F, 3).passed
    C = hochschild(A, 3)
    cohomology(C)
"""
from __future__ import annotations

import logging
import random
from itertools import product
from typing import Dict, Hashable, Iterator, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from pydantic import BaseModel

from ainfty_toolkit.ainfty import (
    AInftyCategory,
    Element,
    Gen,
    PresentedCategory,
    add_into,
    bar_sign,
    check_composable,
    h0_inverse,
    is_unit,
)
from ainfty_toolkit.coefficients import Scalar, SparseMatrix, enumerate_span, kernel_basis, reduce_modulo
from ainfty_toolkit.complexes import CochainComplex, GradedModule, cohomology_at
from ainfty_toolkit.errors import InfeasibleSizeError, IntegrityError, PreconditionError, UsageError
from ainfty_toolkit.localization import LocalizedCategory, Word, length_one
from ainfty_toolkit.twisted import TwGen, TwistedCategory, TwistedComplex, ShiftLetter

logger = logging.getLogger(__name__)

DEFAULT_FUNCTOR_LIMIT = 4096


def _compositions(n: int) -> Iterator[Tuple[int, ...]]:
    """Ordered block sizes summing to n (the empty composition for n = 0)."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            yield (first,) + rest


def _blocks(items: Tuple, sizes: Tuple[int, ...]) -> List[Tuple]:
    out, start = [], 0
    for size in sizes:
        out.append(items[start:start + size])
        start += size
    return out


def _expand(factors: Sequence[Mapping]) -> Iterator[Tuple[Tuple, Scalar]]:
    """Multilinear expansion: one (tuple of basis elements, product of coefficients) per term."""
    for combo in product(*[list(f.items()) for f in factors]):
        coefficient = 1
        for _, c in combo:
            coefficient *= c
        yield tuple(g for g, _ in combo), coefficient


# ---------------------------------------------------------------------------
# Functors
# ---------------------------------------------------------------------------

class AInftyFunctor:
    """
    Base class: an object map and the bar components F_k on composable basis tuples.

    Subclasses implement ``_compute_bar`` or ``_compute_op``; the other is derived with
    :func:`bar_sign`. ``arity`` bounds the components that can be nonzero.
    """

    def __init__(self, source: AInftyCategory, target: AInftyCategory, name: str = "", arity: int = 1):
        self.source = source
        self.target = target
        self.name = name
        self.arity = arity
        self._bar_cache: Dict[Tuple, Dict] = {}

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name or '?'}: {self.source.name} -> {self.target.name})"

    def obj(self, X: Hashable) -> Hashable:
        raise NotImplementedError

    def _compute_op(self, gens: Tuple) -> Dict:
        sign = bar_sign([g.degree for g in gens])
        return {k: sign * v for k, v in self._compute_bar(gens).items()}

    def _compute_bar(self, gens: Tuple) -> Dict:
        sign = bar_sign([g.degree for g in gens])
        return {k: sign * v for k, v in self._compute_op(gens).items()}

    def bar_component(self, gens: Tuple) -> Dict:
        gens = tuple(gens)
        cached = self._bar_cache.get(gens)
        if cached is None:
            check_composable(gens)
            cached = {}
            if 0 < len(gens) <= self.arity:
                cached = add_into(self.target.ring, {}, self._compute_bar(gens))
            self._bar_cache[gens] = cached
        return cached

    def component(self, gens: Tuple) -> Dict:
        """f^k on a basis tuple in the m-convention."""
        gens = tuple(gens)
        sign = bar_sign([g.degree for g in gens])
        return {k: sign * v for k, v in self.bar_component(gens).items()}

    def apply(self, *elements: Element) -> Element:
        """f^k on elements (multilinear)."""
        ring = self.target.ring
        out: Dict = {}
        for gens, c in _expand([e.terms for e in elements]):
            add_into(ring, out, self.component(gens), c)
        return Element(ring, self.obj(elements[-1].source), self.obj(elements[0].target), out)


class PresentedFunctor(AInftyFunctor):
    """
    A functor given by stored components.

    Parameters
    ----------
    source, target : AInftyCategory
    object_map : dict
    components : dict
        tuple of source generators (leftmost first) -> dict target generator -> coefficient,
        in the m-convention. Missing tuples are zero.
    """

    def __init__(self, source: AInftyCategory, target: AInftyCategory, object_map: Mapping[Hashable, Hashable],
                 components: Mapping[Tuple, Mapping], name: str = ""):
        ring = target.ring
        self.object_map = dict(object_map)
        for X in source.objects():
            if X not in self.object_map:
                raise UsageError(f"object {X} of {source.name} has no image")
            if self.object_map[X] not in target.objects():
                raise IntegrityError(f"image {self.object_map[X]} of {X} is not an object of {target.name}")
        self.components: Dict[Tuple, Dict] = {}
        for gens, output in components.items():
            gens = tuple(gens)
            check_composable(gens)
            X0, Xk = self.object_map[gens[-1].source], self.object_map[gens[0].target]
            known = set(target.hom_basis(X0, Xk))
            for g in gens:
                if g not in source.hom_basis(g.source, g.target):
                    raise IntegrityError(f"component input {g} is not a generator of {source.name}")
            degree = sum(g.degree for g in gens) + 1 - len(gens)
            cleaned = {}
            for g, c in output.items():
                if g not in known:
                    raise IntegrityError(f"f^{len(gens)} of {tuple(map(str, gens))} cannot output {g}")
                if g.degree != degree:
                    raise UsageError(f"f^{len(gens)}{tuple(map(str, gens))} must have degree {degree}, got {g}")
                c = ring.coerce(c)
                if c:
                    cleaned[g] = c
            if cleaned:
                self.components[gens] = cleaned
        arity = max((len(k) for k in self.components), default=1)
        super().__init__(source, target, name, arity)

    def obj(self, X: Hashable) -> Hashable:
        return self.object_map[X]

    def _compute_op(self, gens: Tuple) -> Dict:
        return dict(self.components.get(gens, {}))

    def describe(self) -> Dict[str, object]:
        return {
            "objects": {str(X): str(Y) for X, Y in self.object_map.items()},
            "components": {
                ", ".join(map(str, gens)): {str(g): str(c) for g, c in out.items()}
                for gens, out in self.components.items()
            },
        }


class IdentityFunctor(AInftyFunctor):
    def __init__(self, cat: AInftyCategory):
        super().__init__(cat, cat, f"id_{cat.name}", 1)

    def obj(self, X):
        return X

    def _compute_bar(self, gens: Tuple) -> Dict:
        return {gens[0]: 1}


class ComposedFunctor(AInftyFunctor):
    """(G ∘ F)_n = Σ G_q(F_{i_1} ⊗ … ⊗ F_{i_q}) in bar form."""

    def __init__(self, outer: AInftyFunctor, inner: AInftyFunctor, name: str = ""):
        arity = min(outer.arity * inner.arity, inner.source.arity_bound)
        super().__init__(inner.source, outer.target, name or f"{outer.name}∘{inner.name}", arity)
        self.outer = outer
        self.inner = inner

    def obj(self, X):
        return self.outer.obj(self.inner.obj(X))

    def _compute_bar(self, gens: Tuple) -> Dict:
        ring = self.target.ring
        out: Dict = {}
        for sizes in _compositions(len(gens)):
            if any(size > self.inner.arity for size in sizes) or len(sizes) > self.outer.arity:
                continue
            images = [self.inner.bar_component(block) for block in _blocks(gens, sizes)]
            for letters, c in _expand(images):
                add_into(ring, out, self.outer.bar_component(letters), c)
        return out


def identity_functor(cat: AInftyCategory) -> IdentityFunctor:
    return IdentityFunctor(cat)


def compose(outer: AInftyFunctor, inner: AInftyFunctor, name: str = "") -> ComposedFunctor:
    """outer ∘ inner; the target of ``inner`` must have the objects of the source of ``outer``."""
    if list(inner.target.objects()) != list(outer.source.objects()):
        raise UsageError(f"cannot compose {outer} after {inner}")
    return ComposedFunctor(outer, inner, name)


def materialize(F: AInftyFunctor, max_arity: Optional[int] = None) -> PresentedFunctor:
    """Store the components of F on every composable tuple up to ``max_arity``."""
    top = F.arity if max_arity is None else min(max_arity, F.arity)
    components = {}
    for n in range(1, top + 1):
        for gens in F.source.composable_tuples(n):
            value = F.component(gens)
            if value:
                components[gens] = value
    return PresentedFunctor(F.source, F.target, {X: F.obj(X) for X in F.source.objects()}, components,
                            name=F.name)


def same_functor(F: AInftyFunctor, G: AInftyFunctor, max_arity: int) -> bool:
    """Equal object maps and equal components on every composable basis tuple up to ``max_arity``."""
    objects = F.source.objects()
    if list(objects) != list(G.source.objects()):
        return False
    if any(F.obj(X) != G.obj(X) for X in objects):
        return False
    for n in range(1, max_arity + 1):
        for gens in F.source.composable_tuples(n):
            if F.bar_component(gens) != G.bar_component(gens):
                return False
    return True


def augmentation_inclusion(cat: PresentedCategory, augmented: Optional[PresentedCategory] = None) -> PresentedFunctor:
    """The (non-unital) inclusion A -> A⁺."""
    augmented = augmented or cat.augment()
    components = {(g,): {g: 1} for X in cat.objects() for Y in cat.objects() for g in cat.hom_basis(X, Y)}
    return PresentedFunctor(cat, augmented, {X: X for X in cat.objects()}, components,
                            name=f"{cat.name}->{augmented.name}")


def augment_functor(F: AInftyFunctor, source: Optional[PresentedCategory] = None,
                    target: Optional[PresentedCategory] = None) -> PresentedFunctor:
    """f⁺: A⁺ -> B⁺, equal to f on A and sending each adjoined unit to the adjoined unit."""
    if not isinstance(F.source, PresentedCategory) or not isinstance(F.target, PresentedCategory):
        raise UsageError("augmentation is defined for presented categories")
    source = source or F.source.augment()
    target = target or F.target.augment()
    components = dict(materialize(F).components)
    for X, one in source.augmentation_units.items():
        components[(one,)] = {target.augmentation_units[F.obj(X)]: 1}
    return PresentedFunctor(source, target, {X: F.obj(X) for X in F.source.objects()}, components,
                            name=f"{F.name}+")


# ---------------------------------------------------------------------------
# Induced functors on twisted complexes and localizations
# ---------------------------------------------------------------------------

def sigma_functor_bar(F: AInftyFunctor, letters: Sequence[ShiftLetter]) -> Dict:
    """F^{ΣA}_N on ΣA letters: the Koszul sign of moving the shifts left past the inputs and past f^N."""
    N = len(letters)
    if N > F.arity:
        return {}
    sigma = 0
    left_x = 0
    total_u = 0
    for letter in letters:
        sigma += letter.u_degree * left_x
        left_x += letter.base.degree
        total_u += letter.u_degree
    sigma += (N + 1) * total_u
    sign = bar_sign([l.degree for l in letters]) * (-1 if sigma % 2 else 1)
    output = F.component(tuple(l.base for l in letters))
    return {g: sign * c for g, c in output.items()}


class TwistedFunctor(AInftyFunctor):
    """
    Tw F: Tw A -> Tw B on registered twisted complexes.

    An object (X_i, n_i; δ) goes to (F X_i, n_i; δ′) with δ′ summing F^{ΣA} over δ-paths, and
    morphisms are mapped by inserting δ in every slot like the twisted operations.
    """

    def __init__(self, F: AInftyFunctor, source: TwistedCategory, target: TwistedCategory):
        super().__init__(source, target, f"Tw({F.name})", source.arity_bound)
        self.base = F
        self._objects: Dict[TwistedComplex, TwistedComplex] = {}

    def obj(self, T: TwistedComplex) -> TwistedComplex:
        image = self._objects.get(T)
        if image is None:
            image = self._map_object(T)
            self._objects[T] = image
        return image

    def _map_object(self, T: TwistedComplex) -> TwistedComplex:
        ring = self.target.ring
        F = self.base
        entries = [(F.obj(X), n) for X, n in T.entries]
        delta = {}
        for j in range(len(T)):
            for i, keys in T.chains_from(j):
                if not keys:
                    continue
                factors = [{ShiftLetter(T.entries[b][1], T.entries[a][1], g): c for g, c in T.component(a, b).items()}
                           for (a, b) in keys]
                acc: Dict = {}
                for letters, c in _expand(factors):
                    add_into(ring, acc, sigma_functor_bar(F, letters), c)
                if acc:
                    total = delta.get((j, i), Element.zero(ring, entries[j][0], entries[i][0]))
                    delta[(j, i)] = total + Element(ring, entries[j][0], entries[i][0], acc)
        return TwistedComplex.build(entries, delta)

    def _compute_bar(self, gens: Tuple[TwGen, ...]) -> Dict:
        ring = self.target.ring
        n = len(gens)
        target, source = gens[0].target, gens[-1].source
        image_target, image_source = self.obj(target), self.obj(source)
        slot_options: List[List[Tuple[Optional[int], List]]] = [target.chains_from(gens[0].row)]
        for p in range(1, n):
            left, right = gens[p - 1], gens[p]
            paths = [keys for start, keys in right.target.chains_into(left.col) if start == right.row]
            slot_options.append([(None, keys) for keys in paths])
        slot_options.append(source.chains_into(gens[-1].col))
        objects = [target] + [g.source for g in gens]
        out: Dict = {}
        for choice in product(*slot_options):
            out_row, out_col = choice[0][0], choice[-1][0]
            factors: List[Dict] = []
            for p in range(n + 1):
                T = objects[p]
                for (j, i) in choice[p][1]:
                    factors.append({ShiftLetter(T.entries[i][1], T.entries[j][1], g): c
                                    for g, c in T.component(j, i).items()})
                if p < n:
                    y = gens[p]
                    factors.append({ShiftLetter(y.target.entries[y.row][1], y.source.entries[y.col][1], y.base): 1})
            for letters, c in _expand(factors):
                for g, value in sigma_functor_bar(self.base, letters).items():
                    add_into(ring, out, {TwGen(image_source, image_target, out_row, out_col, g): value}, c)
        return out


class LengthOneInclusion(AInftyFunctor):
    """The strict functor A -> A[I⁻¹] sending g to the length-one word g."""

    def __init__(self, localized: LocalizedCategory):
        super().__init__(localized.base, localized, f"{localized.base.name}->{localized.name}", 1)

    def obj(self, X):
        return X

    def _compute_bar(self, gens: Tuple) -> Dict:
        g = gens[0]
        return {length_one(g.source, g.target, g): 1}


class LocalizedFunctor(AInftyFunctor):
    """
    The functor A[I⁻¹] -> B[J⁻¹] induced by F with F(I) ⊆ J.

    On words w_1, …, w_N the concatenated letters are cut into blocks, Tw F is applied to each
    block and the images form one output word; no cut may fall on a boundary between two input
    words.
    """

    def __init__(self, F: AInftyFunctor, source: LocalizedCategory, target: LocalizedCategory):
        super().__init__(source, target, f"{F.name}[I^-1]", source.arity_bound)
        self.base = F
        self.twisted = TwistedFunctor(F, source.twisted, target.twisted)
        for C in source.cones:
            image = self.twisted.obj(C)
            if image not in target.cones:
                raise PreconditionError(f"{F.name} sends the inverted morphism {C} outside the inverted set of "
                                        f"{target.name}")

    def obj(self, X):
        return self.base.obj(X)

    def _compute_bar(self, words: Tuple[Word, ...]) -> Dict:
        ring = self.target.ring
        letters = tuple(x for w in words for x in w.letters)
        boundaries = set()
        position = 0
        for w in words[:-1]:
            position += w.length
            boundaries.add(position)
        source, target = self.obj(words[-1].source), self.obj(words[0].target)
        allowed = [p for p in range(1, len(letters)) if p not in boundaries]
        out: Dict = {}
        for mask in product((False, True), repeat=len(allowed)):
            cuts = [0] + [p for p, keep in zip(allowed, mask) if keep] + [len(letters)]
            blocks = [letters[a:b] for a, b in zip(cuts, cuts[1:])]
            if any(len(block) > self.twisted.arity for block in blocks):
                continue
            images = [self.twisted.bar_component(block) for block in blocks]
            for image, c in _expand(images):
                add_into(ring, out, {Word(source, target, image): 1}, c)
        return out


def length_one_inclusion(localized: LocalizedCategory) -> LengthOneInclusion:
    return LengthOneInclusion(localized)


def localize_functor(F: AInftyFunctor, source: LocalizedCategory, target: LocalizedCategory) -> LocalizedFunctor:
    """The induced functor of localizations; PreconditionError when F(I_A) ⊄ I_B."""
    if source.base is not F.source or target.base is not F.target:
        raise UsageError("the localizations must be taken of the source and target of the functor")
    return LocalizedFunctor(F, source, target)


def localization_square_commutes(F: AInftyFunctor, source: LocalizedCategory, target: LocalizedCategory,
                                 max_arity: int = 2) -> bool:
    """localize(F) ∘ incl = incl ∘ F on basis tuples of A up to ``max_arity``."""
    induced = localize_functor(F, source, target)
    left = compose(induced, length_one_inclusion(source))
    right = compose(length_one_inclusion(target), F)
    return same_functor(left, right, max_arity)


# ---------------------------------------------------------------------------
# Functor equations and unitality
# ---------------------------------------------------------------------------

class FunctorFailure(BaseModel):
    arity: int
    inputs: List[str]
    residual: Dict[str, str]


class FunctorReport(BaseModel):
    functor: str
    max_arity: int
    checked: int
    failures: List[FunctorFailure] = []

    @property
    def passed(self) -> bool:
        return not self.failures


def functor_residual(F: AInftyFunctor, gens: Tuple) -> Dict:
    """Left side minus right side of the functor equation on one basis tuple."""
    A, B = F.source, F.target
    ring = B.ring
    n = len(gens)
    out: Dict = {}
    left_shift = 0
    for r in range(n):
        if r > 0:
            left_shift += gens[r - 1].degree - 1
        sign = -1 if left_shift % 2 else 1
        for s in range(1, n - r + 1):
            for g, c in A.bar_op(gens[r:r + s]).items():
                add_into(ring, out, F.bar_component(gens[:r] + (g,) + gens[r + s:]), sign * c)
    for sizes in _compositions(n):
        if any(size > F.arity for size in sizes):
            continue
        images = [F.bar_component(block) for block in _blocks(gens, sizes)]
        for letters, c in _expand(images):
            add_into(ring, out, B.bar_op(letters), -c)
    return out


def check_functor(F: AInftyFunctor, max_arity: int, sample: Optional[int] = None, seed: int = 0) -> FunctorReport:
    """
    Check the functor equations on composable basis tuples of length 1 .. max_arity.

    With ``sample`` only that many tuples per arity are drawn (deterministically from ``seed``).
    """
    if max_arity > F.source.arity_bound:
        raise UsageError(f"arity {max_arity} exceeds the arity bound {F.source.arity_bound}")
    rng = random.Random(seed)
    report = FunctorReport(functor=F.name, max_arity=max_arity, checked=0)
    for n in range(1, max_arity + 1):
        tuples = list(F.source.composable_tuples(n))
        if sample is not None and len(tuples) > sample:
            tuples = rng.sample(tuples, sample)
        for gens in tuples:
            report.checked += 1
            residual = functor_residual(F, gens)
            if residual:
                report.failures.append(FunctorFailure(
                    arity=n, inputs=[str(g) for g in gens],
                    residual={str(g): str(c) for g, c in residual.items()},
                ))
    logger.info("functor %s: %d tuples checked, %d failures", F.name, report.checked, len(report.failures))
    return report


def is_unital_functor(F: AInftyFunctor) -> bool:
    """f^1 sends every recorded unit to a cohomological unit."""
    for X in F.source.objects():
        e = F.source.units.get(X)
        if e is None or F.obj(X) not in F.target.units:
            return False
        if not is_unit(F.target, F.obj(X), F.apply(e)).is_unit:
            return False
    return True


def is_strictly_unital_functor(F: AInftyFunctor, max_arity: Optional[int] = None) -> bool:
    """f^1(u_X) = u_{fX} exactly, and f^k with a unit among its inputs vanishes for 2 ≤ k ≤ max_arity."""
    A, B = F.source, F.target
    for X in A.objects():
        e = A.units.get(X)
        if e is None or F.obj(X) not in B.units or F.apply(e) != B.units[F.obj(X)]:
            return False
    top = min(max_arity or F.arity, F.arity)
    for n in range(2, top + 1):
        for position in range(n):
            for left in _tuples_or_empty(A, position):
                for right in _tuples_or_empty(A, n - 1 - position):
                    X = left[-1].source if left else right[0].target if right else None
                    if X is None or X not in A.units:
                        continue
                    if right and right[0].target != X:
                        continue
                    args = [A.element(g) for g in left] + [A.units[X]] + [A.element(g) for g in right]
                    if not F.apply(*args).is_zero:
                        return False
    return True


def _tuples_or_empty(cat: AInftyCategory, length: int) -> List[Tuple]:
    return [()] if length == 0 else list(cat.composable_tuples(length))


# ---------------------------------------------------------------------------
# Pre-natural transformations
# ---------------------------------------------------------------------------

class Chain(NamedTuple):
    """A composable tuple (leftmost first) starting at ``start``; the empty chain at an object is allowed."""
    start: Hashable
    gens: Tuple = ()

    @property
    def end(self) -> Hashable:
        return self.gens[0].target if self.gens else self.start

    @property
    def shifted_degree(self) -> int:
        return sum(g.degree - 1 for g in self.gens)

    def __str__(self) -> str:
        return "(" + ", ".join(map(str, self.gens)) + ")" if self.gens else f"({self.start})"


def chain_of(gens: Tuple) -> Chain:
    return Chain(gens[-1].source, tuple(gens))


class TransformationEntry(NamedTuple):
    """The basis transformation sending ``chain`` to ``value`` and every other chain to 0."""
    chain: Chain
    value: Gen

    @property
    def degree(self) -> int:
        return self.value.degree - self.chain.shifted_degree

    @property
    def label(self) -> str:
        return f"{self.chain}->{self.value}"


def _chains(cat: AInftyCategory, max_length: int) -> List[Chain]:
    chains = [Chain(X) for X in cat.objects()]
    for n in range(1, max_length + 1):
        chains.extend(chain_of(gens) for gens in cat.composable_tuples(n))
    return chains


def _gap_object(chain: Chain, a: int) -> Hashable:
    """The object between the first a letters and the rest."""
    gens = chain.gens
    if not gens:
        return chain.start
    return gens[a].target if a < len(gens) else gens[-1].source


def _block_images(functor: AInftyFunctor, gens: Tuple) -> List[Tuple[Tuple, Scalar]]:
    terms: Dict[Tuple, Scalar] = {}
    for sizes in _compositions(len(gens)):
        if any(size > functor.arity for size in sizes):
            continue
        images = [functor.bar_component(block) for block in _blocks(gens, sizes)]
        for letters, c in _expand(images):
            terms[letters] = terms.get(letters, 0) + c
    return [(letters, c) for letters, c in terms.items() if c]


def fun_complex(F: AInftyFunctor, G: AInftyFunctor, arity_bound: int) -> CochainComplex:
    """The complex of pre-natural transformations F ⇒ G with components of arity ≤ ``arity_bound``."""
    A, B = F.source, F.target
    if list(A.objects()) != list(G.source.objects()) or list(B.objects()) != list(G.target.objects()):
        raise UsageError("pre-natural transformations need two functors between the same categories")
    ring = B.ring
    chains = _chains(A, arity_bound)
    logger.debug("fun(%s, %s): %d chains up to arity %d", F.name, G.name, len(chains), arity_bound)
    by_degree: Dict[int, List[TransformationEntry]] = {}
    for chain in chains:
        for z in B.hom_basis(F.obj(chain.start), G.obj(chain.end)):
            entry = TransformationEntry(chain, z)
            by_degree.setdefault(entry.degree, []).append(entry)
    columns: Dict[TransformationEntry, Dict[TransformationEntry, Scalar]] = {}

    def contribute(column: TransformationEntry, row_chain: Chain, values: Mapping, coefficient: Scalar):
        target = columns.setdefault(column, {})
        for z, c in values.items():
            add_into(ring, target, {TransformationEntry(row_chain, z): c}, coefficient)

    for row in chains:
        xs = row.gens
        n = len(xs)
        left_shift = 0
        for a in range(n + 1):
            if a > 0:
                left_shift += xs[a - 1].degree - 1
            left_images = _block_images(G, xs[:a])
            for k in range(n - a + 1):
                inner = xs[a:a + k]
                chain = chain_of(inner) if inner else Chain(_gap_object(row, a))
                right_images = _block_images(F, xs[a + k:])
                for z in B.hom_basis(F.obj(chain.start), G.obj(chain.end)):
                    rho = TransformationEntry(chain, z).degree - 1
                    sign = -1 if (rho * left_shift) % 2 else 1
                    for left, cl in left_images:
                        for right, cr in right_images:
                            contribute(TransformationEntry(chain, z), row, B.bar_op(left + (z,) + right),
                                       sign * cl * cr)
        left_shift = 0
        for alpha in range(n):
            if alpha > 0:
                left_shift += xs[alpha - 1].degree - 1
            for s in range(1, n - alpha + 1):
                for g, c in A.bar_op(xs[alpha:alpha + s]).items():
                    chain = chain_of(xs[:alpha] + (g,) + xs[alpha + s:])
                    for z in B.hom_basis(F.obj(chain.start), G.obj(chain.end)):
                        rho = TransformationEntry(chain, z).degree - 1
                        sign = (-1 if left_shift % 2 else 1) * (1 if rho % 2 else -1)
                        contribute(TransformationEntry(chain, z), row, {z: 1}, sign * c)

    module = GradedModule(ring, {d: tuple(v) for d, v in sorted(by_degree.items())})
    differential = {}
    for d in module.degrees():
        vectors = []
        for entry in module.labels(d):
            vectors.append({module.index(d + 1, r): c for r, c in columns.get(entry, {}).items() if c})
        differential[d] = SparseMatrix.from_columns(ring, module.rank(d + 1), vectors)
    return CochainComplex(module, differential)


def transformation_components(C: CochainComplex, degree: int, vector: Mapping[int, Scalar],
                              ring=None) -> Dict[Hashable, Element]:
    """The arity 0 components T^0_X of a transformation given as a vector of C in ``degree``."""
    ring = ring or C.ring
    out: Dict[Hashable, Dict] = {}
    ends: Dict[Hashable, Tuple] = {}
    for i, c in vector.items():
        entry = C.labels(degree)[i]
        if entry.chain.gens or not c:
            continue
        X = entry.chain.start
        out.setdefault(X, {})[entry.value] = c
        ends[X] = (entry.value.source, entry.value.target)
    return {X: Element(ring, *ends[X], terms) for X, terms in out.items()}


def identity_transformation(F: AInftyFunctor, C: CochainComplex) -> Dict[int, Scalar]:
    """The degree 0 vector with T^0_X the unit of F X and no higher components."""
    vector: Dict[int, Scalar] = {}
    for X in F.source.objects():
        unit = F.target.units.get(F.obj(X))
        if unit is None:
            raise PreconditionError(f"no unit recorded for {F.obj(X)}")
        for z, c in unit.terms.items():
            vector[C.module.index(0, TransformationEntry(Chain(X), z))] = c
    return vector


def is_natural_equivalence(F: AInftyFunctor, G: AInftyFunctor, C: CochainComplex, vector: Mapping[int, Scalar]) -> bool:
    """A closed degree 0 transformation whose T^0 components are invertible in H^0 of the target."""
    if C.d(0).apply(dict(vector)):
        return False
    components = transformation_components(C, 0, vector, F.target.ring)
    for X in F.source.objects():
        t = components.get(X)
        if t is None or h0_inverse(F.target, t) is None:
            return False
    return True


def natural_equivalence(F: AInftyFunctor, G: AInftyFunctor, arity_bound: int,
                        limit: int = DEFAULT_FUNCTOR_LIMIT) -> Optional[Dict[int, Scalar]]:
    """Search the closed degree 0 transformations (finite rings only) for a natural equivalence."""
    ring = F.target.ring
    if not ring.is_finite:
        raise UsageError("natural equivalences are enumerated over finite rings")
    C = fun_complex(F, G, arity_bound)
    if not C.rank(0):
        return None
    cycles = kernel_basis(C.d(0))
    for vector in enumerate_span(ring, cycles, limit):
        if is_natural_equivalence(F, G, C, vector):
            return vector
    return None


# ---------------------------------------------------------------------------
# Hochschild cochains
# ---------------------------------------------------------------------------

def hochschild(A: AInftyCategory, arity_bound: int) -> CochainComplex:
    """CH(A) = fun(id_A, id_A) truncated at ``arity_bound``."""
    identity = identity_functor(A)
    return fun_complex(identity, identity, arity_bound)


def classical_hochschild(A: AInftyCategory, arity_bound: int) -> CochainComplex:
    """
    Hom(A^{⊗n}, A) with the classical Hochschild differential, n ≤ arity_bound + 1.

    Only for one-object algebras concentrated in degree 0; cochain n sits in degree n.
    """
    objects = A.objects()
    if len(objects) != 1:
        raise UsageError("the classical Hochschild complex needs a one-object category")
    X = objects[0]
    basis = list(A.hom_basis(X, X))
    if any(g.degree != 0 for g in basis):
        raise UsageError("the classical Hochschild complex needs an algebra concentrated in degree 0")
    ring = A.ring
    top = arity_bound + 1
    labels = {n: tuple((inputs, y) for inputs in product(basis, repeat=n) for y in basis) for n in range(top + 1)}
    module = GradedModule(ring, labels)

    def product_of(a: Gen, b: Gen) -> Dict:
        return A.op((a, b))

    differential = {}
    for n in range(top):
        columns = []
        for inputs, y in labels[n]:
            column: Dict[int, Scalar] = {}

            def put(row_inputs, values: Mapping, coefficient: Scalar):
                for out, c in values.items():
                    add_into(ring, column, {module.index(n + 1, (row_inputs, out)): c}, coefficient)

            for a in basis:
                put((a,) + inputs, product_of(a, y), 1)
                put(inputs + (a,), product_of(y, a), -1 if (n + 1) % 2 else 1)
            for i in range(1, n + 1):
                sign = -1 if i % 2 else 1
                for a in basis:
                    for b in basis:
                        for g, c in product_of(a, b).items():
                            if g == inputs[i - 1]:
                                put(inputs[:i - 1] + (a, b) + inputs[i:], {y: 1}, sign * c)
            columns.append(column)
        differential[n] = SparseMatrix.from_columns(ring, module.rank(n + 1), columns)
    return CochainComplex(module, differential)


class HochschildDegree(BaseModel):
    degree: int
    rank: int
    classical_rank: int
    cohomology: str
    classical_cohomology: str


class HochschildComparison(BaseModel):
    category: str
    ring: str
    arity_bound: int
    degrees: List[HochschildDegree]
    agrees: bool


def compare_with_classical(A: AInftyCategory, arity_bound: int) -> HochschildComparison:
    """Ranks in degrees ≤ arity_bound and cohomology below it, against the classical complex."""
    CH = hochschild(A, arity_bound)
    classical = classical_hochschild(A, arity_bound)
    rows = []
    agrees = True
    for n in range(arity_bound + 1):
        ours, theirs = cohomology_at(CH, n), cohomology_at(classical, n)
        same_rank = CH.rank(n) == classical.rank(n)
        same_group = n == arity_bound or ours == theirs
        agrees = agrees and same_rank and same_group
        rows.append(HochschildDegree(degree=n, rank=CH.rank(n), classical_rank=classical.rank(n),
                                     cohomology=str(ours), classical_cohomology=str(theirs)))
    return HochschildComparison(category=A.name, ring=A.ring.name, arity_bound=arity_bound, degrees=rows,
                                agrees=agrees)


def hh0_units(A: AInftyCategory, arity_bound: int = 1, limit: int = DEFAULT_FUNCTOR_LIMIT) -> int:
    """Number of invertible classes in HH^0 (finite rings): closed T with T^0 invertible, up to boundaries."""
    ring = A.ring
    if not ring.is_finite:
        raise UsageError("HH^0 units are counted over finite rings")
    identity = identity_functor(A)
    C = fun_complex(identity, identity, arity_bound)
    boundaries = [c for c in C.d(-1).columns() if c]
    seen = set()
    count = 0
    for vector in enumerate_span(ring, kernel_basis(C.d(0)), limit):
        if not is_natural_equivalence(identity, identity, C, vector):
            continue
        key = _class_key(ring, boundaries, vector, C.rank(0))
        if key not in seen:
            seen.add(key)
            count += 1
    return count


def _class_key(ring, boundaries: List[Dict[int, Scalar]], vector: Mapping[int, Scalar], size: int) -> Tuple:
    reduced = reduce_modulo(ring, boundaries, vector)
    return tuple(ring.norm(reduced.get(i, 0)) for i in range(size))


# ---------------------------------------------------------------------------
# Homotopy classes of functors
# ---------------------------------------------------------------------------

class FunctorClasses(BaseModel):
    source: str
    target: str
    ring: str
    arity_bound: int
    enumerated: int
    functors: List[Dict[str, object]]
    classes: List[List[int]]

    @property
    def count(self) -> int:
        return len(self.classes)


def candidate_functors(A: PresentedCategory, B: AInftyCategory,
                       limit: int = DEFAULT_FUNCTOR_LIMIT) -> Iterator[PresentedFunctor]:
    """
    Every dg-type functor candidate: object maps and f^1 with arbitrary coefficients, f^{≥2} = 0.

    The enumeration domain is the finite ring itself; InfeasibleSizeError carries the candidate count.
    """
    ring = B.ring
    if not ring.is_finite:
        raise UsageError("functors are enumerated over finite rings")
    objects = A.objects()
    gens = [g for X in objects for Y in objects for g in A.hom_basis(X, Y)]
    estimate = 0
    maps = list(product(B.objects(), repeat=len(objects)))
    for images in maps:
        object_map = dict(zip(objects, images))
        size = 1
        for g in gens:
            size *= ring.p ** len(B.hom_basis_in_degree(object_map[g.source], object_map[g.target], g.degree))
        estimate += size
    if estimate > limit:
        raise InfeasibleSizeError(f"{estimate} candidate functors {A.name} -> {B.name} exceed the limit {limit}",
                                  estimate)
    logger.info("enumerating %d candidate functors %s -> %s", estimate, A.name, B.name)
    for images in maps:
        object_map = dict(zip(objects, images))
        choices = []
        for g in gens:
            targets = B.hom_basis_in_degree(object_map[g.source], object_map[g.target], g.degree)
            choices.append([{targets[i]: c for i, c in vector.items()}
                            for vector in enumerate_span(ring, [{i: 1} for i in range(len(targets))])])
        for images_of_gens in product(*choices):
            components = {(g,): value for g, value in zip(gens, images_of_gens) if value}
            yield PresentedFunctor(A, B, object_map, components)


def pi0_functor_classes(A: PresentedCategory, B: AInftyCategory, arity_bound: int = 3,
                        limit: int = DEFAULT_FUNCTOR_LIMIT) -> FunctorClasses:
    """Unital dg-type functors A -> B modulo natural equivalence."""
    functors = []
    enumerated = 0
    check_arity = min(arity_bound, A.arity_bound)
    for F in candidate_functors(A, B, limit):
        enumerated += 1
        if is_unital_functor(F) and check_functor(F, check_arity).passed:
            F.name = f"f{len(functors)}"
            functors.append(F)
    parent = list(range(len(functors)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, F in enumerate(functors):
        for j in range(i):
            if find(i) == find(j):
                continue
            if natural_equivalence(functors[j], F, 1, limit) is not None:
                parent[find(i)] = find(j)
    classes: Dict[int, List[int]] = {}
    for i in range(len(functors)):
        classes.setdefault(find(i), []).append(i)
    return FunctorClasses(source=A.name, target=B.name, ring=B.ring.name, arity_bound=arity_bound,
                          enumerated=enumerated, functors=[F.describe() for F in functors],
                          classes=sorted(classes.values()))
