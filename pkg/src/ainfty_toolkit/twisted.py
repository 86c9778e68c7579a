"""
One-sided twisted complexes over an A∞-category.

A twisted complex is a list of entries (X_i, n_i) together with components
δ_{j→i} ∈ hom_A(X_j, X_i) for j > i, read as degree 1 morphisms of the shift
enlargement ΣA. Morphisms are matrices of ΣA morphisms u_{n_i, n_j} ⊗ g of degree
|g| + n_j − n_i.

In ΣA the operations are

    m_k(u_1⊗x_1, …, u_k⊗x_k) = (−1)^σ (u_1⋯u_k) ⊗ m_k(x_1, …, x_k),
    σ = Σ_i |u_i|·Σ_{j<i}|x_j| + k·Σ_i|u_i|,

(inputs leftmost first), and the twisted operations insert δ everywhere in bar form:
b^Tw_n(sy_1, …, sy_n) = Σ b^{ΣA}_N(…, sδ, …, sy_p, sδ, …). Since sδ has degree 0 no
insertion carries a sign.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Dict, Hashable, List, NamedTuple, Optional, Sequence, Tuple

from ainfty_toolkit.ainfty import (
    AInftyCategory,
    Element,
    add_into,
    bar_sign,
    is_unit,
)
from ainfty_toolkit.coefficients import Scalar
from ainfty_toolkit.complexes import ChainMap, CochainComplex, cone, find_homotopy, is_acyclic
from ainfty_toolkit.errors import (
    ArityTruncationError,
    IntegrityError,
    InvariantViolation,
    PreconditionError,
    UsageError,
)

logger = logging.getLogger(__name__)

DeltaKey = Tuple[int, int]


@dataclass(frozen=True)
class TwistedComplex:
    """
    Parameters
    ----------
    entries : tuple of (object, shift)
    delta : tuple of ((j, i), ((gen, coefficient), ...))
        Components from entry j to entry i, j > i. Build instances with :meth:`build`.
    name : str
    """
    entries: Tuple[Tuple[Hashable, int], ...]
    delta: Tuple[Tuple[DeltaKey, Tuple[Tuple[Any, Scalar], ...]], ...] = ()
    name: str = field(default="", compare=False)

    @classmethod
    def build(cls, entries: Sequence[Tuple[Hashable, int]], delta: Optional[Dict[DeltaKey, Element]] = None,
              name: str = "") -> "TwistedComplex":
        entries = tuple((X, int(n)) for X, n in entries)
        packed = []
        for (j, i), element in sorted((delta or {}).items()):
            if not (0 <= i < j < len(entries)):
                raise UsageError(f"δ component ({j}, {i}) must map a later entry to an earlier one")
            if (element.source, element.target) != (entries[j][0], entries[i][0]):
                raise UsageError(f"δ component ({j}, {i}) must lie in hom({entries[j][0]}, {entries[i][0]})")
            expected = 1 - entries[j][1] + entries[i][1]
            if element.degree not in (None, expected):
                raise UsageError(f"δ component ({j}, {i}) must have degree {expected}")
            if not element.is_zero:
                packed.append(((j, i), tuple(element.terms.items())))
        return cls(entries, tuple(packed), name)

    def __str__(self) -> str:
        if self.name:
            return self.name
        return "Tw[" + ", ".join(f"{X}[{n}]" if n else str(X) for X, n in self.entries) + "]"

    def __len__(self) -> int:
        return len(self.entries)

    def component(self, j: int, i: int) -> Dict:
        for key, terms in self.delta:
            if key == (j, i):
                return dict(terms)
        return {}

    def components(self) -> Dict[DeltaKey, Dict]:
        return {key: dict(terms) for key, terms in self.delta}

    def chains_into(self, i: int) -> List[Tuple[int, List[DeltaKey]]]:
        """Every δ-path ending at entry i as (start entry, keys leftmost first); includes the empty path."""
        comps = self.components()
        result = [(i, [])]
        for (j, k) in comps:
            if k == i:
                for start, keys in self.chains_into(j):
                    result.append((start, [(j, k)] + keys))
        return result

    def chains_from(self, j: int) -> List[Tuple[int, List[DeltaKey]]]:
        """Every δ-path starting at entry j as (end entry, keys leftmost first)."""
        comps = self.components()
        result = [(j, [])]
        for (jj, k) in comps:
            if jj == j:
                for end, keys in self.chains_from(k):
                    result.append((end, keys + [(jj, k)]))
        return result


def embed(X: Hashable) -> TwistedComplex:
    return TwistedComplex(((X, 0),), (), str(X))


def shifted(X: Hashable, n: int) -> TwistedComplex:
    return TwistedComplex(((X, n),), (), f"{X}[{n}]")


class TwGen(NamedTuple):
    """Basis morphism u_{n_row, n_col} ⊗ base from entry ``col`` of source to entry ``row`` of target."""
    source: TwistedComplex
    target: TwistedComplex
    row: int
    col: int
    base: Any

    @property
    def degree(self) -> int:
        return self.base.degree + self.source.entries[self.col][1] - self.target.entries[self.row][1]

    @property
    def label(self) -> str:
        return f"[{self.row},{self.col}]{self.base.label}"

    def __str__(self) -> str:
        return f"{self.source}->{self.target}:{self.label}"


@dataclass(frozen=True)
class ShiftLetter:
    """A ΣA morphism u_{target shift, source shift} ⊗ base used while expanding insertions."""
    target_shift: int
    source_shift: int
    base: Any

    @property
    def u_degree(self) -> int:
        return self.source_shift - self.target_shift

    @property
    def degree(self) -> int:
        return self.base.degree + self.u_degree


def sigma_bar(base: AInftyCategory, letters: Sequence[ShiftLetter]) -> Dict:
    """b^{ΣA}_N on ΣA basis letters (leftmost first); returns base generator -> coefficient."""
    N = len(letters)
    if N > base.arity_bound:
        if base.vanishes_above_bound:
            return {}
        raise ArityTruncationError(f"twisted operation needs m^{N} beyond the arity bound {base.arity_bound}")
    sigma = 0
    left_x = 0
    total_u = 0
    for letter in letters:
        sigma += letter.u_degree * left_x
        left_x += letter.base.degree
        total_u += letter.u_degree
    sigma += N * total_u
    sign = bar_sign([l.degree for l in letters]) * (-1 if sigma % 2 else 1)
    output = base.op(tuple(l.base for l in letters))
    return {g: sign * c for g, c in output.items()} if output else {}


class TwistedCategory(AInftyCategory):
    """
    Tw A restricted to a registered list of twisted complexes.

    Parameters
    ----------
    base : AInftyCategory
    objects : list of TwistedComplex, optional
        Every object is checked for the Maurer-Cartan equation on registration.
    """

    def __init__(self, base: AInftyCategory, objects: Optional[Sequence[TwistedComplex]] = None, name: str = ""):
        super().__init__(base.ring, name or f"Tw({base.name})", base.arity_bound, base.vanishes_above_bound)
        self.base = base
        self._objects: List[TwistedComplex] = []
        self._basis_cache: Dict[Tuple, Tuple] = {}
        for X in base.objects():
            self.add_object(embed(X))
        for T in objects or []:
            self.add_object(T)
        for X, e in base.units.items():
            self.units[embed(X)] = embed_element(self, e)

    def add_object(self, T: TwistedComplex) -> TwistedComplex:
        if T in self._objects:
            return T
        known = set(self.base.objects())
        for X, _ in T.entries:
            if X not in known:
                raise IntegrityError(f"entry {X} of {T} is not an object of {self.base.name}")
        residual = maurer_cartan_residual(self.base, T)
        if residual:
            raise InvariantViolation(f"{T} does not satisfy the Maurer-Cartan equation: {residual}")
        self._objects.append(T)
        return T

    def objects(self) -> List[TwistedComplex]:
        return list(self._objects)

    def highest_arity(self) -> int:
        return self.base.highest_arity()

    def hom_basis(self, P: TwistedComplex, Q: TwistedComplex) -> Tuple[TwGen, ...]:
        key = (P, Q)
        cached = self._basis_cache.get(key)
        if cached is None:
            gens = []
            for i, (Y, _) in enumerate(Q.entries):
                for j, (X, _) in enumerate(P.entries):
                    for g in self.base.hom_basis(X, Y):
                        gens.append(TwGen(P, Q, i, j, g))
            cached = tuple(gens)
            self._basis_cache[key] = cached
        return cached

    def _compute_bar(self, gens: Tuple[TwGen, ...]) -> Dict:
        ring = self.ring
        n = len(gens)
        target, source = gens[0].target, gens[-1].source
        # slot p sits between gens[p-1] and gens[p]; slot 0 is left of everything, slot n right
        slot_options: List[List[Tuple[int, List[DeltaKey]]]] = []
        slot_options.append(target.chains_from(gens[0].row))
        for p in range(1, n):
            left, right = gens[p - 1], gens[p]
            paths = [keys for start, keys in right.target.chains_into(left.col) if start == right.row]
            slot_options.append([(None, keys) for keys in paths])
        slot_options.append(source.chains_into(gens[-1].col))
        out: Dict = {}
        for choice in product(*slot_options):
            out_row = choice[0][0]
            out_col = choice[-1][0]
            # letters: each entry is a list of (letter, coefficient) alternatives
            factors: List[List[Tuple[ShiftLetter, Scalar]]] = []
            objects = [target] + [g.source for g in gens]
            for p in range(n + 1):
                T = objects[p]
                for (j, i) in choice[p][1]:
                    factors.append([(ShiftLetter(T.entries[i][1], T.entries[j][1], g), c)
                                    for g, c in T.component(j, i).items()])
                if p < n:
                    y = gens[p]
                    factors.append([(ShiftLetter(y.target.entries[y.row][1], y.source.entries[y.col][1], y.base), 1)])
            for combo in product(*factors):
                coefficient = 1
                for _, c in combo:
                    coefficient *= c
                result = sigma_bar(self.base, [l for l, _ in combo])
                for g, c in result.items():
                    add_into(ring, out, {TwGen(source, target, out_row, out_col, g): c}, coefficient)
        return out


def maurer_cartan_residual(base: AInftyCategory, T: TwistedComplex) -> Dict[DeltaKey, Dict]:
    """Σ_n b_n(sδ, …, sδ) per component; empty exactly when δ is a twisted differential."""
    ring = base.ring
    residual: Dict[DeltaKey, Dict] = {}
    for j in range(len(T)):
        for i, keys in T.chains_from(j):
            if not keys:
                continue
            factors = [[(ShiftLetter(T.entries[b][1], T.entries[a][1], g), c) for g, c in T.component(a, b).items()]
                       for (a, b) in keys]
            acc = residual.setdefault((j, i), {})
            for combo in product(*factors):
                coefficient = 1
                for _, c in combo:
                    coefficient *= c
                add_into(ring, acc, sigma_bar(base, [l for l, _ in combo]), coefficient)
    return {key: v for key, v in residual.items() if v}


def embed_element(twcat: TwistedCategory, e: Element) -> Element:
    P, Q = embed(e.source), embed(e.target)
    return Element(twcat.ring, P, Q, {TwGen(P, Q, 0, 0, g): c for g, c in e.terms.items()})


def cone_of(cat: AInftyCategory, f: Element, name: str = "") -> TwistedComplex:
    """cone(f: X -> Y) = [(Y, 0), (X, 1)] with δ_{1→0} = f; f = 0 gives the split cone Y ⊕ X[1]."""
    if f.degree not in (None, 0):
        raise PreconditionError(f"cone needs a degree 0 morphism, got degree {f.degree}")
    if not f.is_zero and not cat.m(f).is_zero:
        raise PreconditionError("cone needs a closed morphism (m^1 f ≠ 0)")
    return TwistedComplex.build([(f.target, 0), (f.source, 1)], {(1, 0): f}, name or f"cone({f!r})")


def tw_hom(twcat: TwistedCategory, P: TwistedComplex, Q: TwistedComplex) -> CochainComplex:
    twcat.add_object(P)
    twcat.add_object(Q)
    return twcat.hom(P, Q)


def tw_m(twcat: TwistedCategory, *elements: Element) -> Element:
    return twcat.m(*elements)


def cone_presentation(twcat: TwistedCategory, X, C: TwistedComplex) -> Tuple[ChainMap, ChainMap]:
    """
    For C = cone(g: W -> Y) return f = m^2(g, −): hom_A(X, W) -> hom_A(X, Y) and the relabelling
    cone(f, alternate=True) -> tw_hom(X, C), which is an isomorphism of complexes when the block
    structure is right.
    """
    base = twcat.base
    if len(C) != 2 or C.entries[1][1] != 1 or C.entries[0][1] != 0:
        raise UsageError(f"{C} is not a cone")
    g = Element(base.ring, C.entries[1][0], C.entries[0][0], C.component(1, 0))
    W, Y = C.entries[1][0], C.entries[0][0]
    source, target = base.hom(X, W), base.hom(X, Y)
    f = ChainMap.from_function(source, target, lambda d, x: base.m(g, base.element(x)).terms)
    presented = cone(f, alternate=True)
    P = embed(X)
    H = tw_hom(twcat, P, C)

    def relabel(d, label):
        part, x = label
        return {TwGen(P, C, 0 if part == "T" else 1, 0, x): 1}

    return f, ChainMap.from_function(presented, H, relabel)


def cone_acyclicity(twcat: TwistedCategory, C: TwistedComplex) -> Dict[str, bool]:
    """Whether tw_hom(X, C) and tw_hom(C, X) are acyclic for every object X of the base."""
    result = {}
    for X in twcat.base.objects():
        result[f"hom({X}, {C})"] = is_acyclic(tw_hom(twcat, embed(X), C))
        result[f"hom({C}, {X})"] = is_acyclic(tw_hom(twcat, C, embed(X)))
    return result


@dataclass
class ConeConeOperators:
    """Z: Q -> S of degree 1 and its homotopy inverse W: S -> Q of degree −1."""
    q_complex: CochainComplex
    s_complex: CochainComplex
    z: ChainMap
    w: ChainMap
    cone_source: TwistedComplex
    cone_target: TwistedComplex
    q_object: TwistedComplex
    s_object: TwistedComplex


def z_w_operators(twcat: TwistedCategory, e: Element, e_prime: Element, check_units: bool = True) -> ConeConeOperators:
    """
    hom_Tw(cone e, cone e′) is the cone of Z: Q -> S with Q = hom_Tw(W, cone e′) (source entry 0)
    and S = hom_Tw(W[1], cone e′) (source entry 1):

        Z(p; q) = (m^2(p, e) + m^3(e′, q, e); −m^2(q, e))
        W(x; y) = (m^2(x, e) − m^3(e′, y, e); −m^2(y, e))

    written as (row 0; row 1) components. W is a chain map of degree −1 for any closed e, e′.
    """
    base = twcat.base
    Wobj, Wp = e.source, e_prime.source
    if (e.source, e.target) != (Wobj, Wobj) or (e_prime.source, e_prime.target) != (Wp, Wp):
        raise UsageError("Z and W take endomorphisms")
    if check_units:
        for X, u in ((Wobj, e), (Wp, e_prime)):
            verdict = is_unit(base, X, u)
            if not verdict.is_unit:
                raise PreconditionError(f"{u!r} is not a unit of {X}: {verdict.reason}")
    C = twcat.add_object(cone_of(base, e, f"cone({Wobj})"))
    Cp = twcat.add_object(cone_of(base, e_prime, f"cone({Wp})"))
    Q_obj, S_obj = embed(Wobj), twcat.add_object(shifted(Wobj, 1))
    Q, S = tw_hom(twcat, Q_obj, Cp), tw_hom(twcat, S_obj, Cp)
    ring = base.ring

    def lift(source_obj, row, element: Element, sign=1) -> Dict:
        return {TwGen(source_obj, Cp, row, 0, g): ring.norm(sign * c) for g, c in element.terms.items()}

    def z_image(d, label: TwGen):
        x = base.element(label.base)
        out: Dict = {}
        if label.row == 0:
            add_into(ring, out, lift(S_obj, 0, base.m(x, e)))
        else:
            add_into(ring, out, lift(S_obj, 1, base.m(x, e), -1))
            add_into(ring, out, lift(S_obj, 0, base.m(e_prime, x, e)))
        return out

    def w_image(d, label: TwGen):
        x = base.element(label.base)
        out: Dict = {}
        if label.row == 0:
            add_into(ring, out, lift(Q_obj, 0, base.m(x, e)))
        else:
            add_into(ring, out, lift(Q_obj, 1, base.m(x, e), -1))
            add_into(ring, out, lift(Q_obj, 0, base.m(e_prime, x, e), -1))
        return out

    z = ChainMap.from_function(Q, S, z_image, degree=1)
    w = ChainMap.from_function(S, Q, w_image, degree=-1)
    return ConeConeOperators(Q, S, z, w, C, Cp, Q_obj, S_obj)


def connecting_block(twcat: TwistedCategory, ops: ConeConeOperators) -> ChainMap:
    """The part of the differential of hom_Tw(cone e, cone e′) from source entry 0 to source entry 1."""
    C, Cp = ops.cone_source, ops.cone_target
    H = tw_hom(twcat, C, Cp)
    Q, S, S_obj = ops.q_complex, ops.s_complex, ops.s_object

    def image(d, label: TwGen):
        full = TwGen(C, Cp, label.row, 0, label.base)
        column = H.d(d).column(H.module.index(d, full))
        out = {}
        for i, c in column.items():
            target = H.labels(d + 1)[i]
            if target.col == 1:
                out[TwGen(S_obj, Cp, target.row, 0, target.base)] = c
        return out

    return ChainMap.from_function(Q, S, image, degree=1)


def z_w_homotopies(ops: ConeConeOperators):
    """Homotopies W∘Z ≃ id_Q and Z∘W ≃ id_S (None where no homotopy exists)."""
    wz = ops.w.compose(ops.z)
    zw = ops.z.compose(ops.w)
    return (find_homotopy(wz, ChainMap.identity(ops.q_complex)),
            find_homotopy(zw, ChainMap.identity(ops.s_complex)))


def verify_cone_cone_relation(base: AInftyCategory, e1: Element, e2: Element) -> bool:
    """
    Check, as operators on hom(W1, W2),

        m^2(m^3(e2, •, e1), e1) = d∘M − M∘d − m^2(e2, m^3(•, e1, e1)) + m^3(m^2(e2, •), e1, e1)
                                  − m^3(e2, m^2(•, e1), e1) + m^3(e2, •, m^2(e1, e1))

    with M = m^4(e2, •, e1, e1): the arity 4 relation on (e2, •, e1, e1) for closed e1, e2.
    """
    W1, W2 = e1.source, e2.source
    H = base.hom(W1, W2)

    def operator(fn, degree):
        return ChainMap.from_function(H, H, lambda d, g: fn(base.element(g)).terms, degree=degree)

    m = base.m
    left = operator(lambda y: m(m(e2, y, e1), e1), -1)
    quartic = operator(lambda y: m(e2, y, e1, e1), -2)
    rest = operator(lambda y: (-m(e2, m(y, e1, e1))) + m(m(e2, y), e1, e1) - m(e2, m(y, e1), e1)
                    + m(e2, y, m(e1, e1)), -1)
    D = ChainMap(H, H, H.differential, degree=1)
    right = D.compose(quartic) - quartic.compose(D) + rest
    return left.equals(right)
