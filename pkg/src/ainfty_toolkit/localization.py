"""
Localization of an A∞-category at a set I of closed degree 0 morphisms, as a category of bar words.

A morphism X -> Y of length l is a word x_1 | x_2 | … | x_l (leftmost first) of twisted morphisms

    x_l: X -> C_1,  x_{l-1}: C_1 -> C_2,  …,  x_1: C_{l-1} -> Y,    C_i = cone(f_i), f_i ∈ I,

of degree Σ|x_q| − (l − 1). In bar form an operation concatenates its input words and applies one
twisted operation to a block of consecutive letters; when there are several inputs the block has to
start in the first word and end in the last one. A block passing the letters on its left picks up the
Koszul sign (−1)^{Σ (|x_q| − 1)}. Words of length ≤ L span a subcomplex F_{≤L}, since the
differential never makes a word longer.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from itertools import product
from math import prod
from typing import Callable, Dict, Hashable, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from pydantic import BaseModel

from ainfty_toolkit.ainfty import (
    AInftyCategory,
    Element,
    Gen,
    PresentedCategory,
    add_into,
    is_strict_unit,
    is_unit,
)
from ainfty_toolkit.coefficients import Scalar, SparseMatrix, solve_linear
from ainfty_toolkit.complexes import (
    ChainMap,
    CochainComplex,
    GradedModule,
    cohomology_at,
    induced_isomorphism,
    is_acyclic,
    stable_cohomology,
)
from ainfty_toolkit.errors import (
    HomotopyIdempotenceError,
    InfeasibleSizeError,
    IntegrityError,
    InvariantViolation,
    PreconditionError,
    UsageError,
)
from ainfty_toolkit.twisted import TwGen, TwistedCategory, TwistedComplex, cone_of, embed

logger = logging.getLogger(__name__)

DEFAULT_MAX_WORDS = 200_000


class Word(NamedTuple):
    """A bar word X -> Y; ``letters`` are leftmost first."""
    source: Hashable
    target: Hashable
    letters: Tuple[TwGen, ...]

    @property
    def length(self) -> int:
        return len(self.letters)

    @property
    def degree(self) -> int:
        return sum(x.degree for x in self.letters) - (len(self.letters) - 1)

    @property
    def cones(self) -> Tuple[TwistedComplex, ...]:
        """The intermediate cones C_{l-1}, …, C_1, leftmost first."""
        return tuple(x.source for x in self.letters[:-1])

    @property
    def label(self) -> str:
        return " | ".join(x.label for x in self.letters)

    def __str__(self) -> str:
        return f"{self.source}->{self.target}:{self.label}"


def length_one(X, Y, g) -> Word:
    return Word(X, Y, (TwGen(embed(X), embed(Y), 0, 0, g),))


class LocalizedCategory(AInftyCategory):
    """
    A[I⁻¹] with hom complexes truncated to words of length ≤ ``truncation``.

    Operations are not truncated: an operation on short words may return longer words. Only the
    hom complexes (and hence composable basis tuples) are restricted to F_{≤L}.

    Parameters
    ----------
    base : AInftyCategory
    inverted : list of Element
        Closed degree 0 morphisms; each contributes the cone through which words may pass.
    truncation : int
        L ≥ 1.
    max_words : int
        Cap on the number of words in one hom module before InfeasibleSizeError is raised.
    """

    def __init__(self, base: AInftyCategory, inverted: Sequence[Element], truncation: int, name: str = "",
                 max_words: int = DEFAULT_MAX_WORDS):
        if truncation < 1:
            raise UsageError("the truncation length L must be at least 1")
        super().__init__(base.ring, name or f"{base.name}[I^-1]", base.arity_bound, base.vanishes_above_bound)
        self.base = base
        self.truncation = truncation
        self.max_words = max_words
        self.twisted = TwistedCategory(base)
        self.inverted: List[Element] = []
        self.cones: List[TwistedComplex] = []
        for f in inverted:
            C = self.twisted.add_object(cone_of(base, f, f"cone({_describe(f)})"))
            if C not in self.cones:
                self.cones.append(C)
                self.inverted.append(f)
        self.strictly_unital = base.strictly_unital
        for X, e in base.units.items():
            self.units[X] = Element(self.ring, X, X, {length_one(X, X, g): c for g, c in e.terms.items()})
        self._words: Dict[Tuple, Dict[int, Tuple[Word, ...]]] = {}

    def objects(self) -> List[Hashable]:
        return self.base.objects()

    def highest_arity(self) -> int:
        return self.base.highest_arity()

    def _path_estimate(self, X, Y, length: int) -> int:
        total = 0
        for seq in product(self.cones, repeat=length - 1):
            path = [embed(X), *seq, embed(Y)]
            total += prod(len(self.twisted.hom_basis(path[q], path[q + 1])) for q in range(length))
        return total

    def words(self, X, Y, length: int) -> Iterable[Word]:
        P0, Pl = embed(X), embed(Y)
        for seq in product(self.cones, repeat=length - 1):
            path = [P0, *seq, Pl]
            factors = [self.twisted.hom_basis(path[q], path[q + 1]) for q in range(length)]
            for combo in product(*factors):
                yield Word(X, Y, tuple(reversed(combo)))

    def _words_by_degree(self, X, Y) -> Dict[int, Tuple[Word, ...]]:
        key = (X, Y)
        cached = self._words.get(key)
        if cached is None:
            estimate = sum(self._path_estimate(X, Y, l) for l in range(1, self.truncation + 1))
            if estimate > self.max_words:
                raise InfeasibleSizeError(f"hom({X}, {Y}) of {self.name} at L = {self.truncation} is too large",
                                          estimate)
            logger.debug("materializing %d words of hom(%s, %s) at L = %d", estimate, X, Y, self.truncation)
            grouped: Dict[int, List[Word]] = {}
            for l in range(1, self.truncation + 1):
                for w in self.words(X, Y, l):
                    grouped.setdefault(w.degree, []).append(w)
            cached = {d: tuple(v) for d, v in sorted(grouped.items())}
            self._words[key] = cached
        return cached

    def hom_basis(self, X, Y) -> Tuple[Word, ...]:
        return tuple(w for words in self._words_by_degree(X, Y).values() for w in words)

    def hom_basis_in_degree(self, X, Y, degree: int) -> List[Word]:
        return list(self._words_by_degree(X, Y).get(degree, ()))

    def check_word(self, w: Word) -> None:
        for C in w.cones:
            if C not in self.cones:
                raise IntegrityError(f"word {w} passes through {C}, which is not the cone of an inverted morphism")

    def _compute_bar(self, words: Tuple[Word, ...]) -> Dict:
        ring = self.ring
        for w in words:
            self.check_word(w)
        letters = tuple(x for w in words for x in w.letters)
        shifted = [x.degree - 1 for x in letters]
        M = len(letters)
        N = len(words)
        first, last = words[0].length, words[-1].length
        source, target = words[-1].source, words[0].target
        out: Dict = {}
        left_degree = 0
        starts = range(M) if N == 1 else range(first)
        for alpha in range(M):
            if alpha > 0:
                left_degree += shifted[alpha - 1]
            if alpha not in starts:
                continue
            sign = -1 if left_degree % 2 else 1
            lowest_end = alpha + 1 if N == 1 else M - last + 1
            for end in range(max(alpha + 1, lowest_end), M + 1):
                inner = self.twisted.bar_op(letters[alpha:end])
                for g, c in inner.items():
                    w = Word(source, target, letters[:alpha] + (g,) + letters[end:])
                    add_into(ring, out, {w: sign * c})
        return out


def _describe(f: Element) -> str:
    return " + ".join(g.label if c == 1 else f"{c}*{g.label}" for g, c in f.terms.items()) or "0"


def localize(base: AInftyCategory, inverted: Sequence[Element], truncation: int, **kwargs) -> LocalizedCategory:
    return LocalizedCategory(base, inverted, truncation, **kwargs)


# ---------------------------------------------------------------------------
# Complexes spanned by sets of words
# ---------------------------------------------------------------------------

def word_complex(D: AInftyCategory, words: Iterable[Word], keep: Callable[[Word], bool] = lambda w: True,
                 require_closed: bool = True, window=None) -> CochainComplex:
    """
    The complex spanned by ``words`` with the differential of D. Terms failing ``keep`` are dropped
    (a quotient); any other term outside the span raises InvariantViolation when ``require_closed``.
    """
    ring = D.ring
    grouped: Dict[int, List[Word]] = {}
    for w in words:
        grouped.setdefault(w.degree, []).append(w)
    module = GradedModule(ring, {d: tuple(v) for d, v in grouped.items()})
    diff = {}
    for d in module.degrees():
        columns = []
        for w in module.labels(d):
            col = {}
            for out, c in D.bar_op((w,)).items():
                if not keep(out):
                    continue
                try:
                    col[module.index(d + 1, out)] = c
                except UsageError:
                    if require_closed:
                        raise InvariantViolation(f"d({w}) leaves the span: {out}")
            columns.append(col)
        diff[d] = SparseMatrix.from_columns(ring, module.rank(d + 1), columns)
    return CochainComplex(module, diff, window)


def respects_filtration(D: LocalizedCategory, X, Y) -> bool:
    """The differential never increases word length on the basis of hom(X, Y)."""
    return all(out.length <= w.length for w in D.hom_basis(X, Y) for out in D.bar_op((w,)))


def associated_graded(D: LocalizedCategory, X, Y, length: int) -> Dict[Tuple[TwistedComplex, ...], CochainComplex]:
    """F_{≤l}/F_{≤l−1} of hom(X, Y), split into summands indexed by the tuple of cones."""
    if not 1 <= length <= D.truncation:
        raise UsageError(f"length must lie in 1..{D.truncation}")
    by_cones: Dict[Tuple, List[Word]] = {}
    for w in D.words(X, Y, length):
        by_cones.setdefault(w.cones, []).append(w)
    return {cones: word_complex(D, words, keep=lambda out: out.length == length)
            for cones, words in by_cones.items()}


class GradedSummand(BaseModel):
    cones: List[str]
    rank: int
    acyclic: bool


class GradedAcyclicityReport(BaseModel):
    source: str
    target: str
    length: int
    summands: List[GradedSummand]
    acyclic: bool


def check_graded_acyclicity(D: LocalizedCategory, X, Y, length: int) -> GradedAcyclicityReport:
    if length < 2:
        raise UsageError("the length 1 graded piece is hom_A itself and is not expected to be acyclic")
    summands = []
    for cones, C in associated_graded(D, X, Y, length).items():
        acyclic = is_acyclic(C)
        if not acyclic:
            logger.info("graded summand through %s of hom(%s, %s) is not acyclic", [str(c) for c in cones], X, Y)
        summands.append(GradedSummand(cones=[str(c) for c in cones], rank=C.module.total_rank, acyclic=acyclic))
    return GradedAcyclicityReport(source=str(X), target=str(Y), length=length, summands=summands,
                                  acyclic=all(s.acyclic for s in summands))


# ---------------------------------------------------------------------------
# Cohomology comparisons at finite truncation
# ---------------------------------------------------------------------------

class DegreeComparison(BaseModel):
    degree: int
    source: str
    target: str
    source_stable: str
    target_stable: str
    isomorphism: bool
    verdict: str


class HomComparison(BaseModel):
    name: str
    source: str
    target: str
    degrees: List[DegreeComparison]
    verdict: str


class LocalizationReport(BaseModel):
    kind: str
    category: str
    ring: str
    truncation: int
    window: Tuple[int, int]
    homs: List[HomComparison] = []
    notes: List[str] = []
    verdict: str = "pass"

    @property
    def passed(self) -> bool:
        return self.verdict != "fail"


def _worst(verdicts: Iterable[str]) -> str:
    verdicts = list(verdicts)
    if "fail" in verdicts:
        return "fail"
    if "partial" in verdicts:
        return "partial"
    return "pass"


def _length(label) -> int:
    return getattr(label, "length", 1)


def _stable_group(C_next: CochainComplex, truncation: int, degree: int):
    sub = {d: [i for i, w in enumerate(C_next.labels(d)) if _length(w) <= truncation] for d in C_next.degrees()}
    return stable_cohomology(C_next, sub, degree)


@dataclass
class _Comparison:
    """A map of hom complexes at truncation L together with the same map at L + 1."""
    name: str
    at_l: ChainMap
    at_next: ChainMap
    truncation: int


def _compare(comparison: _Comparison, X, Y, window: Tuple[int, int]) -> HomComparison:
    """
    pass: the map is a cohomology isomorphism at L. partial: it is not, but the stable images
    (classes of F_{≤L} surviving to F_{≤L+1}) agree on both sides. fail: the stable images differ.
    """
    lo, hi = window
    degrees = []
    for d in range(lo, hi + 1):
        f, g = comparison.at_l, comparison.at_next
        iso = induced_isomorphism(f, d)
        source_stable = _stable_group(g.source, comparison.truncation, d)
        target_stable = _stable_group(g.target, comparison.truncation, d)
        if iso:
            verdict = "pass"
        elif source_stable.same_group(target_stable):
            verdict = "partial"
        else:
            verdict = "fail"
        degrees.append(DegreeComparison(
            degree=d, source=str(cohomology_at(f.source, d)), target=str(cohomology_at(f.target, d)),
            source_stable=str(source_stable), target_stable=str(target_stable), isomorphism=iso, verdict=verdict,
        ))
    return HomComparison(name=comparison.name, source=str(X), target=str(Y), degrees=degrees,
                         verdict=_worst(c.verdict for c in degrees))


def _map_between(S: CochainComplex, T: CochainComplex, image: Callable[[Hashable], Dict]) -> ChainMap:
    return ChainMap.from_function(S, T, lambda d, label: image(label))


def _length_one_image(X, Y):
    def image(g):
        return {length_one(X, Y, g): 1}
    return image


def _same_word(label):
    return {label: 1}


def _check_window(window: Tuple[int, int]):
    lo, hi = window
    if lo > hi:
        raise UsageError(f"empty window [{lo}, {hi}]")


def _require_units(A: AInftyCategory) -> Dict[Hashable, Element]:
    units = {}
    for X in A.objects():
        if X not in A.units:
            raise PreconditionError(f"no unit recorded for {X}")
        verdict = is_unit(A, X, A.units[X])
        if not verdict.is_unit:
            raise PreconditionError(f"the recorded unit of {X} is not a unit: {verdict.reason}")
        units[X] = A.units[X]
    return units


def verify_right_inverse(A: PresentedCategory, truncation: int, window: Tuple[int, int],
                         pairs: Optional[Sequence[Tuple]] = None) -> LocalizationReport:
    """
    Compare hom_A(X, Y) with F_{≤L} hom_{A⁺[id₀⁻¹]}(X, Y), where id₀ is the recorded unit of every
    object and A⁺ has strict units adjoined.
    """
    _check_window(window)
    units = _require_units(A)
    A_plus = A.augment()
    lo, hi = window
    D = LocalizedCategory(A_plus, list(units.values()), truncation)
    D_next = LocalizedCategory(A_plus, list(units.values()), truncation + 1)
    report = LocalizationReport(kind="right-inverse", category=A.name, ring=A.ring.name, truncation=truncation,
                                window=window)
    for X, Y in pairs or [(X, Y) for X in A.objects() for Y in A.objects()]:
        logger.info("comparing hom(%s, %s) with its localization at L = %d", X, Y, truncation)
        S = A.hom_window(X, Y, lo, hi)
        comparison = _Comparison(
            "A -> A+[id^-1]",
            _map_between(S, D.hom_window(X, Y, lo, hi), _length_one_image(X, Y)),
            _map_between(S, D_next.hom_window(X, Y, lo, hi), _length_one_image(X, Y)),
            truncation,
        )
        report.homs.append(_compare(comparison, X, Y, window))
    report.verdict = _worst(h.verdict for h in report.homs)
    return report


def verify_cohomologous_localizations(A: AInftyCategory, smaller: Sequence[Element], larger: Sequence[Element],
                                      truncation: int, window: Tuple[int, int]) -> LocalizationReport:
    """
    A[W₀⁻¹] -> A[W⁻¹] for W₀ ⊂ W with every w ∈ W cohomologous to some w₀ ∈ W₀.
    """
    _check_window(window)
    for w0 in smaller:
        if not any(w0 == w for w in larger):
            raise PreconditionError(f"{w0!r} is in W0 but not in W")
    for w in larger:
        if not any(cohomologous(A, w, w0) for w0 in smaller):
            raise PreconditionError(f"{w!r} is not cohomologous to any element of W0")
    lo, hi = window
    small, small_next = (LocalizedCategory(A, smaller, L) for L in (truncation, truncation + 1))
    big, big_next = (LocalizedCategory(A, larger, L) for L in (truncation, truncation + 1))
    report = LocalizationReport(kind="cohomologous", category=A.name, ring=A.ring.name, truncation=truncation,
                                window=window)
    for X in A.objects():
        for Y in A.objects():
            comparison = _Comparison(
                "A[W0^-1] -> A[W^-1]",
                _map_between(small.hom_window(X, Y, lo, hi), big.hom_window(X, Y, lo, hi), _same_word),
                _map_between(small_next.hom_window(X, Y, lo, hi), big_next.hom_window(X, Y, lo, hi), _same_word),
                truncation,
            )
            report.homs.append(_compare(comparison, X, Y, window))
    report.verdict = _worst(h.verdict for h in report.homs)
    return report


def cohomologous(A: AInftyCategory, w: Element, w0: Element) -> bool:
    if (w.source, w.target) != (w0.source, w0.target):
        return False
    difference = w - w0
    if difference.is_zero:
        return True
    H = A.hom(w.source, w.target)
    vector = {H.module.index(0, g): c for g, c in difference.terms.items()}
    return solve_linear(H.d(-1), vector) is not None


# ---------------------------------------------------------------------------
# The subcomplexes 𝕋 ⊃ 𝕊 and the homotopy id ≃ t′
# ---------------------------------------------------------------------------

class HomotopyIdentities(BaseModel):
    object: str
    truncation: int
    words_checked: int
    identities: Dict[str, bool]
    first_failure: Optional[str] = None
    t_lands_in_s: bool
    t_is_chain_map: bool
    t_on_hom_a: bool
    unit_homotopy: bool
    s_inclusion_quasi_isomorphism: bool

    @property
    def passed(self) -> bool:
        return (all(self.identities.values()) and self.t_lands_in_s and self.t_is_chain_map and self.t_on_hom_a
                and self.unit_homotopy and self.s_inclusion_quasi_isomorphism)


@dataclass
class UnitHomotopyData:
    """
    Everything needed to contract 𝕋 onto 𝕊 inside A⁺[e₀⁻¹](X, X).

    ``homotopy`` is H + G − K; ``t_prime`` is t′. All operators act on single words and return
    dicts word -> coefficient.
    """
    localized: LocalizedCategory
    cone: TwistedComplex
    unit: Element
    alpha: Element
    t_words: List[Word]
    s_words: List[Word]
    operators: Dict[str, Callable[[Word], Dict]] = field(default_factory=dict)

    def t_complex(self) -> CochainComplex:
        return word_complex(self.localized, self.t_words)

    def s_complex(self) -> CochainComplex:
        return word_complex(self.localized, self.s_words)


def _first_to_cone(x: TwGen, C: TwistedComplex) -> TwGen:
    """Read a letter with target X as a letter with target cone(e₀) landing in entry 0."""
    return TwGen(x.source, C, x.row, x.col, x.base)


def homotopy_idempotence_witness(A: AInftyCategory, e0: Element) -> Element:
    """α ∈ hom^{-1}(X, X) with m^1 α = e₀ − m^2(e₀, e₀)."""
    X = e0.source
    H = A.hom(X, X)
    target = e0 - A.m(e0, e0)
    if target.is_zero:
        return Element.zero(A.ring, X, X)
    vector = {H.module.index(0, g): c for g, c in target.terms.items()}
    solution = solve_linear(H.d(-1), vector)
    if solution is None:
        raise HomotopyIdempotenceError(f"no α with m^1 α = e0 − m^2(e0, e0) in hom({X}, {X}); "
                                       f"residual class {target!r}")
    labels = H.labels(-1)
    return Element(A.ring, X, X, {labels[i]: c for i, c in solution.items()})


def build_tt_ss(A: PresentedCategory, X, truncation: int, e0: Optional[Element] = None) -> UnitHomotopyData:
    """
    𝕋 = F_{≤L} hom_{A⁺[e₀⁻¹]}(X, X) and its subcomplex 𝕊 of words whose leftmost letter lies in Tw A.
    With P_y(x_1 | … | x_l) = y | x_1 | … | x_l the homotopies are H = P_{a⊗1⁺}, G = P_{b⊗α},
    K = P_{a⊗e₀}, and t′(w) = Σ_{k≥1} b^Tw(a⊗e₀, x_1, …, x_k) | x_{k+1} | … | x_l.
    """
    e0 = e0 if e0 is not None else A.units.get(X)
    if e0 is None:
        raise PreconditionError(f"no unit recorded for {X}")
    verdict = is_unit(A, X, e0)
    if not verdict.is_unit:
        raise PreconditionError(f"{e0!r} is not a unit of {X}: {verdict.reason}")
    alpha = homotopy_idempotence_witness(A, e0)
    A_plus = A.augment()
    one = A_plus.augmentation_units[X]
    D = LocalizedCategory(A_plus, [e0], truncation)
    C = D.cones[0]
    P = embed(X)
    twisted = D.twisted
    ring = A.ring
    base_gens = {g for Y in A.objects() for Z in A.objects() for g in A.hom_basis(Y, Z)}

    def letters(row_col, element: Element) -> List[Tuple[TwGen, Scalar]]:
        row, col = row_col
        return [(TwGen(C, P, row, col, g), c) for g, c in element.terms.items()]

    a_one = letters((0, 0), Element.of(ring, one))
    b_alpha = letters((0, 1), alpha)
    a_unit = letters((0, 0), e0)
    b_unit = letters((0, 1), e0)
    b_square = letters((0, 1), A.m(e0, e0))

    def prepend(terms: List[Tuple[TwGen, Scalar]]) -> Callable[[Word], Dict]:
        def operator(w: Word) -> Dict:
            rest = (_first_to_cone(w.letters[0], C),) + w.letters[1:]
            out: Dict = {}
            for y, c in terms:
                add_into(ring, out, {Word(X, X, (y,) + rest): c})
            return out
        return operator

    def t_prime(w: Word) -> Dict:
        out: Dict = {}
        first = (_first_to_cone(w.letters[0], C),) + w.letters[1:]
        for y, c in a_unit:
            for k in range(1, w.length + 1):
                for g, c2 in twisted.bar_op((y,) + first[:k]).items():
                    add_into(ring, out, {Word(X, X, (g,) + w.letters[k:]): c * c2})
        return out

    H, G, K = prepend(a_one), prepend(b_alpha), prepend(a_unit)

    def homotopy(w: Word) -> Dict:
        out: Dict = {}
        add_into(ring, out, H(w))
        add_into(ring, out, G(w))
        add_into(ring, out, K(w), -1)
        return out

    t_words = [w for w in D.hom_basis(X, X) if all(c == C for c in w.cones)]
    s_words = [w for w in t_words if w.letters[0].base in base_gens]
    data = UnitHomotopyData(D, C, e0, alpha, t_words, s_words)
    data.operators.update({
        "H": H, "G": G, "K": K, "t_prime": t_prime, "homotopy": homotopy,
        "phi_H": lambda w: {k: -v for k, v in prepend(b_unit)(w).items()},
        "phi_K0": lambda w: {k: -v for k, v in prepend(b_square)(w).items()},
    })
    return data


def _apply(D: AInftyCategory, operator: Callable[[Word], Dict], vector: Dict) -> Dict:
    out: Dict = {}
    for w, c in vector.items():
        add_into(D.ring, out, operator(w), c)
    return out


def verify_unit_homotopy(A: PresentedCategory, X, truncation: int, e0: Optional[Element] = None) -> HomotopyIdentities:
    """
    Check on every word w of 𝕋_{≤L}:

        dH + Hd = id − φ_H,   dG + Gd = φ_H − φ_K0,   −(dK + Kd) = φ_K0 − t′,   [d, H + G − K] = id − t′,

    with φ_H = −P_{b⊗e₀} and φ_K0 = −P_{b⊗m²(e₀,e₀)}; then that t′ lands in 𝕊, is a chain map,
    restricts to m²(e₀, −) on hom_A(X, X), and that hom_A(X, X) -> 𝕊 is a quasi-isomorphism.
    """
    data = build_tt_ss(A, X, truncation, e0)
    D = data.localized
    ring = D.ring
    ops = data.operators

    def d(vector: Dict) -> Dict:
        return _apply(D, lambda w: D.bar_op((w,)), vector)

    def commutator(op, w) -> Dict:
        out = d(op(w))
        add_into(ring, out, _apply(D, op, d({w: 1})))
        return out

    def combine(*parts) -> Dict:
        out: Dict = {}
        for sign, vector in parts:
            add_into(ring, out, vector, sign)
        return out

    checks = {
        "dH+Hd=id-phi_H": lambda w: (commutator(ops["H"], w), combine((1, {w: 1}), (-1, ops["phi_H"](w)))),
        "dG+Gd=phi_H-phi_K0": lambda w: (commutator(ops["G"], w), combine((1, ops["phi_H"](w)), (-1, ops["phi_K0"](w)))),
        "-(dK+Kd)=phi_K0-t'": lambda w: (combine((-1, commutator(ops["K"], w))),
                                         combine((1, ops["phi_K0"](w)), (-1, ops["t_prime"](w)))),
        "[d,H+G-K]=id-t'": lambda w: (commutator(ops["homotopy"], w), combine((1, {w: 1}), (-1, ops["t_prime"](w)))),
    }
    identities = {name: True for name in checks}
    first_failure = None
    for w in data.t_words:
        for name, check in checks.items():
            lhs, rhs = check(w)
            if lhs != rhs and identities[name]:
                identities[name] = False
                first_failure = first_failure or f"{name} on {w}"
                logger.info("homotopy identity %s fails on %s", name, w)

    s_set = set(data.s_words)
    base_gens = {g for Y in A.objects() for Z in A.objects() for g in A.hom_basis(Y, Z)}

    def in_s(w: Word) -> bool:
        return w.letters[0].base in base_gens

    lands = all(in_s(out) for w in data.t_words for out in ops["t_prime"](w))
    chain = all(d(ops["t_prime"](w)) == _apply(D, ops["t_prime"], d({w: 1})) for w in data.t_words)
    on_hom_a = True
    for g in A.hom_basis(X, X):
        expected = {length_one(X, X, h): c for h, c in A.m(data.unit, A.element(g)).terms.items()}
        if ops["t_prime"](length_one(X, X, g)) != expected:
            on_hom_a = False
    unit_homotopy = is_unit(A, X, data.unit).is_unit

    S = data.s_complex()
    hom_a = A.hom(X, X)
    inclusion = ChainMap.from_function(hom_a, S, lambda deg, g: {length_one(X, X, g): 1})
    degrees = sorted(set(S.degrees()) | set(hom_a.degrees()))
    quasi = all(induced_isomorphism(inclusion, deg) for deg in degrees)
    if not s_set:
        quasi = False
    return HomotopyIdentities(
        object=str(X), truncation=truncation, words_checked=len(data.t_words), identities=identities,
        first_failure=first_failure, t_lands_in_s=lands, t_is_chain_map=chain, t_on_hom_a=on_hom_a,
        unit_homotopy=unit_homotopy, s_inclusion_quasi_isomorphism=quasi,
    )


# ---------------------------------------------------------------------------
# The ideal of words through 1⁺ − u
# ---------------------------------------------------------------------------

def split_augmentation(A: PresentedCategory) -> PresentedCategory:
    """
    A⁺ for a strictly unital A, presented on the basis of A together with j_X = 1⁺_X − u_X.

    Then m²(j, j) = j, every other operation with a j input vanishes, and 1⁺_X = u_X + j_X.
    """
    for X in A.objects():
        if X not in A.units or not is_strict_unit(A, X, A.units[X]):
            raise PreconditionError(f"{A.name} is not strictly unital at {X}")
    basis = {key: list(A.hom_basis(*key)) for key in ((X, Y) for X in A.objects() for Y in A.objects())}
    idempotents = {}
    for X in A.objects():
        existing = {g.label for g in basis[(X, X)]}
        label = "j"
        while label in existing:
            label += "'"
        j = Gen(X, X, label, 0)
        basis[(X, X)].append(j)
        idempotents[X] = j
    operations = {k: dict(v) for k, v in A.operations.items()}
    for j in idempotents.values():
        operations[(j, j)] = {j: 1}
    split = PresentedCategory(A.ring, A.objects(), {k: v for k, v in basis.items() if v}, operations,
                              units={X: A.units[X] + Element.of(A.ring, j) for X, j in idempotents.items()},
                              strictly_unital=True, name=f"{A.name}+",
                              arity_bound=A.arity_bound, vanishes_above_bound=A.vanishes_above_bound,
                              orders=A.orders)
    split.idempotents = idempotents
    return split


def in_ideal(w: Word, idempotents: Iterable[Gen]) -> bool:
    """Words with a letter {a, b, c, d} ⊗ (1⁺ − u); in length 1 the multiples of 1⁺ − u."""
    marks = set(idempotents)
    return any(x.base in marks for x in w.letters)


class QuotientCategory(AInftyCategory):
    """A category of words modulo the ideal of words containing an idempotent letter."""

    def __init__(self, localized: LocalizedCategory, idempotents: Iterable[Gen], name: str = ""):
        super().__init__(localized.ring, name or f"{localized.name}/I", localized.arity_bound,
                         localized.vanishes_above_bound)
        self.localized = localized
        self.idempotents = frozenset(idempotents)
        self.truncation = localized.truncation
        self.units = {X: Element(self.ring, X, X, {w: c for w, c in e.terms.items() if not in_ideal(w, self.idempotents)})
                      for X, e in localized.units.items()}
        self.strictly_unital = localized.strictly_unital

    def objects(self):
        return self.localized.objects()

    def highest_arity(self) -> int:
        return self.localized.highest_arity()

    def hom_basis(self, X, Y):
        return tuple(w for w in self.localized.hom_basis(X, Y) if not in_ideal(w, self.idempotents))

    def hom_basis_in_degree(self, X, Y, degree: int):
        return [w for w in self.localized.hom_basis_in_degree(X, Y, degree) if not in_ideal(w, self.idempotents)]

    def _compute_bar(self, words):
        return {w: c for w, c in self.localized.bar_op(words).items() if not in_ideal(w, self.idempotents)}


def ideal_quotient(localized: LocalizedCategory, idempotents: Iterable[Gen]) -> QuotientCategory:
    return QuotientCategory(localized, idempotents)


class IdealClosureReport(BaseModel):
    checked: int
    passed: bool
    failure: Optional[str] = None


def check_ideal_closure(D: LocalizedCategory, idempotents: Iterable[Gen], max_arity: int,
                        sample: Optional[int] = None, seed: int = 0) -> IdealClosureReport:
    """m^k with at least one input in the ideal lands in the ideal, on composable basis tuples."""
    marks = frozenset(idempotents)
    rng = random.Random(seed)
    checked = 0
    for k in range(1, max_arity + 1):
        tuples = [t for t in D.composable_tuples(k) if any(in_ideal(w, marks) for w in t)]
        if sample is not None:
            tuples = rng.sample(tuples, min(sample, len(tuples)))
        for t in tuples:
            checked += 1
            for out in D.op(t):
                if not in_ideal(out, marks):
                    return IdealClosureReport(checked=checked, passed=False,
                                              failure=f"m^{k}{tuple(str(w) for w in t)} has the term {out}")
    return IdealClosureReport(checked=checked, passed=True)


class ModIdealReport(BaseModel):
    category: str
    ring: str
    truncation: int
    window: Tuple[int, int]
    closure: IdealClosureReport
    composite_identity: bool
    maps: LocalizationReport

    @property
    def passed(self) -> bool:
        return self.closure.passed and self.composite_identity and self.maps.passed


def verify_mod_ideal(A: PresentedCategory, truncation: int, window: Tuple[int, int], closure_arity: int = 4,
                     sample: Optional[int] = 200, seed: int = 0) -> ModIdealReport:
    """
    A -> A[u⁻¹] -> A⁺[u⁻¹] -> A⁺[u⁻¹]/𝕀 for a strictly unital A with strict units u. Each map is
    compared on cohomology per hom pair, the composite A[u⁻¹] -> A⁺[u⁻¹]/𝕀 is checked to be the
    identity on words and operations, and the ideal is checked to be closed under every m^k.
    """
    _check_window(window)
    split = split_augmentation(A)
    units = [A.units[X] for X in A.objects()]
    marks = list(split.idempotents.values())
    lo, hi = window
    plain = {L: LocalizedCategory(A, units, L) for L in (truncation, truncation + 1)}
    augmented = {L: LocalizedCategory(split, units, L) for L in (truncation, truncation + 1)}
    quotient = {L: QuotientCategory(augmented[L], marks) for L in augmented}
    closure = check_ideal_closure(augmented[truncation], marks, closure_arity, sample, seed)

    composite = True
    rng = random.Random(seed)
    for X in A.objects():
        for Y in A.objects():
            if set(quotient[truncation].hom_basis(X, Y)) != set(plain[truncation].hom_basis(X, Y)):
                composite = False
    for k in range(1, closure_arity + 1):
        pool = list(plain[truncation].composable_tuples(k))
        for t in (rng.sample(pool, min(sample, len(pool))) if sample is not None else pool):
            if quotient[truncation].op(t) != plain[truncation].op(t):
                composite = False
                logger.info("quotient and A[u^-1] disagree on %s", [str(w) for w in t])
                break

    maps = LocalizationReport(kind="mod-ideal", category=A.name, ring=A.ring.name, truncation=truncation,
                              window=window)
    for X in A.objects():
        for Y in A.objects():
            S = A.hom_window(X, Y, lo, hi)
            homs = {name: {L: cat[L].hom_window(X, Y, lo, hi) for L in cat}
                    for name, cat in (("plain", plain), ("augmented", augmented), ("quotient", quotient))}
            steps = [
                ("A -> A[u^-1]", {L: S for L in homs["plain"]}, homs["plain"], _length_one_image(X, Y)),
                ("A[u^-1] -> A+[u^-1]", homs["plain"], homs["augmented"], _same_word),
                ("A+[u^-1] -> A+[u^-1]/I", homs["augmented"], homs["quotient"],
                 lambda w: {} if in_ideal(w, marks) else {w: 1}),
            ]
            for name, sources, targets, image in steps:
                comparison = _Comparison(
                    name,
                    _map_between(sources[truncation], targets[truncation], image),
                    _map_between(sources[truncation + 1], targets[truncation + 1], image),
                    truncation,
                )
                maps.homs.append(_compare(comparison, X, Y, window))
    maps.verdict = _worst(h.verdict for h in maps.homs)
    return ModIdealReport(category=A.name, ring=A.ring.name, truncation=truncation, window=window,
                          closure=closure, composite_identity=composite, maps=maps)
