"""
Standard small categories used by the verification suites and the cli.

Every builder takes the coefficient ring (where the example is ring-agnostic) and
returns a :class:`PresentedCategory`. ``STANDARD_EXAMPLES`` maps the cli names to builders.
"""
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from ainfty_toolkit.ainfty import Element, Gen, PresentedCategory, add_into
from ainfty_toolkit.coefficients import Ring
from ainfty_toolkit.errors import UsageError

Z = Ring.parse("Z")


def _unital_products(one: Gen, gens: Sequence[Gen]) -> Dict[Tuple, Dict]:
    ops: Dict[Tuple, Dict] = {}
    for g in gens:
        ops[(one, g)] = {g: 1}
        ops[(g, one)] = {g: 1}
    return ops


def field_point(ring: Ring) -> PresentedCategory:
    """One object X with hom(X, X) = k in degree 0."""
    one = Gen("X", "X", "1", 0)
    return PresentedCategory(ring, ["X"], {("X", "X"): [one]}, _unital_products(one, [one]),
                             units={"X": Element.of(ring, one)}, strictly_unital=True, name="k-point")


def z2_endomorphism() -> PresentedCategory:
    """One object with hom = Z/2 in degree 0: a non-free hom module over Z."""
    one = Gen("X", "X", "1", 0)
    return PresentedCategory(Z, ["X"], {("X", "X"): [one]}, _unital_products(one, [one]),
                             units={"X": Element.of(Z, one)}, strictly_unital=True,
                             name="z2-endomorphism", orders={one: 2})


def z2_resolution() -> PresentedCategory:
    """The dg algebra Z·ε -> Z·1 with |ε| = −1, dε = 2, ε² = 0; quasi-isomorphic to Z/2."""
    one = Gen("X", "X", "1", 0)
    eps = Gen("X", "X", "eps", -1)
    ops = _unital_products(one, [one, eps])
    ops[(eps,)] = {one: 2}
    return PresentedCategory(Z, ["X"], {("X", "X"): [one, eps]}, ops,
                             units={"X": Element.of(Z, one)}, strictly_unital=True, name="z2-resolution")


def poset_category(ring: Ring, n: int) -> PresentedCategory:
    """k ⊗ [n]: objects 0..n, hom(i, j) = k·e_ij for i ≤ j, e_jk ∘ e_ij = e_ik."""
    if n < 0:
        raise UsageError("poset size must be non-negative")
    objects = [str(i) for i in range(n + 1)]
    gens = {(i, j): Gen(str(i), str(j), f"e{i}{j}", 0) for i in range(n + 1) for j in range(i, n + 1)}
    basis = {(str(i), str(j)): [g] for (i, j), g in gens.items()}
    ops = {}
    for (i, j), f in gens.items():
        for (jj, k), g in gens.items():
            if jj == j:
                ops[(g, f)] = {gens[(i, k)]: 1}
    units = {str(i): Element.of(ring, gens[(i, i)]) for i in range(n + 1)}
    return PresentedCategory(ring, objects, basis, ops, units=units, strictly_unital=True, name=f"poset-{n}")


def dual_numbers(ring: Ring) -> PresentedCategory:
    """k[ε]/ε² in degree 0 with zero differential."""
    one = Gen("X", "X", "1", 0)
    eps = Gen("X", "X", "eps", 0)
    ops = _unital_products(one, [one, eps])
    return PresentedCategory(ring, ["X"], {("X", "X"): [one, eps]}, ops,
                             units={"X": Element.of(ring, one)}, strictly_unital=True, name="dual-numbers")


def two_term(ring: Ring) -> PresentedCategory:
    """hom(X, X) = k·t ⊕ k·1 with |t| = −1, t² = 0, zero differential."""
    one = Gen("X", "X", "1", 0)
    t = Gen("X", "X", "t", -1)
    return PresentedCategory(ring, ["X"], {("X", "X"): [one, t]}, _unital_products(one, [one, t]),
                             units={"X": Element.of(ring, one)}, strictly_unital=True, name="two-term")


def unit_perturbation(ring: Ring) -> PresentedCategory:
    """
    k·1 ⊕ k·β ⊕ k·γ with |β| = −1, dβ = γ and all products of β, γ zero.

    1 is a strict unit; 1 + γ = 1 + dβ is a unit that is not strict.
    """
    one = Gen("X", "X", "1", 0)
    beta = Gen("X", "X", "beta", -1)
    gamma = Gen("X", "X", "gamma", 0)
    ops = _unital_products(one, [one, beta, gamma])
    ops[(beta,)] = {gamma: 1}
    return PresentedCategory(ring, ["X"], {("X", "X"): [one, beta, gamma]}, ops,
                             units={"X": Element.of(ring, one)}, strictly_unital=True, name="unit-perturbation")


def m3_deformed(ring: Ring) -> PresentedCategory:
    """
    Strictly unital minimal A∞ algebra k·1 ⊕ k·x ⊕ k·z, |x| = 0, |z| = −1,
    with m^3(x, x, x) = z and every other non-unit product zero.
    """
    one = Gen("X", "X", "1", 0)
    x = Gen("X", "X", "x", 0)
    z = Gen("X", "X", "z", -1)
    ops = _unital_products(one, [one, x, z])
    ops[(x, x, x)] = {z: 1}
    return PresentedCategory(ring, ["X"], {("X", "X"): [one, x, z]}, ops,
                             units={"X": Element.of(ring, one)}, strictly_unital=True, name="m3-deformed")


def free_quiver_category(ring: Ring, vertices: Sequence[str], arrows: Sequence[Tuple[str, str, str, int]],
                         differential: Optional[Mapping[str, Mapping[str, int]]] = None,
                         name: str = "free-quiver") -> PresentedCategory:
    """
    The free dg category on an acyclic graded quiver.

    ``arrows`` are (source, target, label, degree). Paths are labelled by their arrows joined
    with "*", leftmost last applied; identity paths are labelled "1". ``differential`` maps an
    arrow label to a combination of path labels and is extended by the Leibniz rule.
    """
    vertices = list(vertices)
    out_arrows: Dict[str, List] = {v: [] for v in vertices}
    by_label = {}
    for src, tgt, label, degree in arrows:
        if src not in out_arrows or tgt not in out_arrows:
            raise UsageError(f"arrow {label} joins undeclared vertices")
        if label in by_label or "*" in label or label == "1":
            raise UsageError(f"bad or duplicate arrow label {label}")
        out_arrows[src].append((tgt, label, degree))
        by_label[label] = (src, tgt, degree)

    paths: Dict[Tuple[str, str], List[Tuple[Tuple[str, ...], int]]] = {}

    def walk(start, current, labels, degree, depth):
        if depth > len(vertices):
            raise UsageError("free categories are built for acyclic quivers only")
        paths.setdefault((start, current), []).append((tuple(labels), degree))
        for tgt, label, d in out_arrows[current]:
            walk(start, tgt, [label] + labels, degree + d, depth + 1)

    for v in vertices:
        walk(v, v, [], 0, 0)

    basis: Dict[Tuple[str, str], List[Gen]] = {}
    gen_of: Dict[Tuple[str, ...], Gen] = {}
    for (src, tgt), items in paths.items():
        for labels, degree in items:
            g = Gen(src, tgt, "*".join(labels) if labels else "1", degree)
            basis.setdefault((src, tgt), []).append(g)
            gen_of[(src,) + labels] = g

    def path_gen(src: str, labels: Tuple[str, ...]) -> Gen:
        return gen_of[(src,) + labels]

    ops: Dict[Tuple, Dict] = {}
    for (src1, tgt1), items1 in paths.items():
        for (src2, tgt2), items2 in paths.items():
            if src1 != tgt2:
                continue
            for labels1, _ in items1:
                for labels2, _ in items2:
                    left, right = path_gen(src1, labels1), path_gen(src2, labels2)
                    ops[(left, right)] = {path_gen(src2, labels1 + labels2): 1}

    differential = differential or {}
    arrow_d: Dict[str, Dict[Gen, int]] = {}
    for label, image in differential.items():
        if label not in by_label:
            raise UsageError(f"differential given for unknown arrow {label}")
        src, tgt, _ = by_label[label]
        terms = {}
        for path_label, c in image.items():
            labels = tuple(path_label.split("*")) if path_label != "1" else ()
            key = (src,) + labels
            if key not in gen_of or gen_of[key].target != tgt:
                raise UsageError(f"d({label}) refers to a path {path_label} outside hom({src}, {tgt})")
            terms[gen_of[key]] = c
        arrow_d[label] = terms

    for (src, tgt), items in paths.items():
        for labels, _ in items:
            total: Dict = {}
            # labels are leftmost first; the sign counts degrees of arrows to the left
            for i, label in enumerate(labels):
                image = arrow_d.get(label)
                if not image:
                    continue
                left = labels[:i]
                right = labels[i + 1:]
                sign = -1 if sum(by_label[a][2] for a in left) % 2 else 1
                right_src = src
                for term, c in image.items():
                    inner = tuple(term.label.split("*")) if term.label != "1" else ()
                    add_into(ring, total, {path_gen(right_src, left + inner + right): sign * c})
            if total:
                ops[(path_gen(src, labels),)] = total

    units = {v: Element.of(ring, path_gen(v, ())) for v in vertices}
    return PresentedCategory(ring, vertices, basis, ops, units=units, strictly_unital=True, name=name)


STANDARD_EXAMPLES: Dict[str, Callable[[Ring], PresentedCategory]] = {
    "k-point": field_point,
    "z2-endomorphism": lambda ring: z2_endomorphism(),
    "z2-resolution": lambda ring: z2_resolution(),
    "poset-1": lambda ring: poset_category(ring, 1),
    "poset-2": lambda ring: poset_category(ring, 2),
    "dual-numbers": dual_numbers,
    "two-term": two_term,
    "unit-perturbation": unit_perturbation,
    "m3-deformed": m3_deformed,
    "quiver-a2": lambda ring: free_quiver_category(ring, ["a", "b", "c"], [("a", "b", "f", 0), ("b", "c", "g", 0)],
                                                   name="quiver-a2"),
}


def standard_examples(ring: Ring) -> Dict[str, PresentedCategory]:
    return {name: build(ring) for name, build in STANDARD_EXAMPLES.items()}


def perturbed_unit(category: PresentedCategory) -> Element:
    """1 + γ in the unit perturbation example."""
    ring = category.ring
    return Element.of(ring, category.gen("X", "X", "1")) + Element.of(ring, category.gen("X", "X", "gamma"))
