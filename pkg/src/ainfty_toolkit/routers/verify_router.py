import logging
from typing import Callable, Dict, List, Tuple

from ainfty_toolkit.ainfty import (
    Element,
    PresentedCategory,
    check_relations,
    is_strict_unit,
    is_unit,
)
from ainfty_toolkit.catalog import (
    STANDARD_EXAMPLES,
    dual_numbers,
    field_point,
    perturbed_unit,
    poset_category,
    two_term,
    unit_perturbation,
    z2_resolution,
)
from ainfty_toolkit.coefficients import Ring
from ainfty_toolkit.complexes import ChainMap, is_acyclic
from ainfty_toolkit.errors import UsageError
from ainfty_toolkit.localization import (
    cohomologous,
    verify_cohomologous_localizations,
    verify_mod_ideal,
    verify_right_inverse,
    verify_unit_homotopy,
)
from ainfty_toolkit.nerve import pi_vs_cohomology
from ainfty_toolkit.routers.functor_router import hochschild_summary
from ainfty_toolkit.routers.nerve_router import nerve_summary
from ainfty_toolkit.twisted import (
    TwistedCategory,
    cone_acyclicity,
    cone_of,
    tw_hom,
    verify_cone_cone_relation,
    z_w_homotopies,
    z_w_operators,
)
from ainfty_toolkit.utils.settings import RunOptions, load_settings

logger = logging.getLogger(__name__)

F2 = Ring.parse("F2")
F5 = Ring.parse("F5")
HOCHSCHILD_ARITY = 3

#=============================
# Router endpoints
#=============================

def register(subparsers, parents):
    parser = subparsers.add_parser("verify-paper", parents=parents,
                                   help="run the verification suite (all lemmas, or one with --lemma)")
    parser.set_defaults(handler=handle_verify)


def handle_verify(args, options: RunOptions) -> Tuple[bool, Dict]:
    names = [options.lemma] if options.lemma else list(LEMMAS)
    unknown = [name for name in names if name not in LEMMAS]
    if unknown:
        raise UsageError(f"unknown lemma '{unknown[0]}' (known: {', '.join(LEMMAS)})")
    sections = {}
    passed = True
    for name in names:
        logger.info("verifying %s", name)
        ok, section = LEMMAS[name](options)
        sections[name] = {"passed": ok, **section}
        passed = passed and ok
    return passed, sections

#=============================
# Service functions
#=============================

def strictly_unital_examples(ring: Ring) -> List[PresentedCategory]:
    """Examples with strict recorded units and free homs, in a fixed order."""
    return [field_point(ring), poset_category(ring, 1), dual_numbers(ring), two_term(ring),
            unit_perturbation(ring), z2_resolution()]


def mutated(cat: PresentedCategory, inputs: Tuple) -> PresentedCategory:
    """The same presentation with one stored operation set to zero."""
    operations = {k: v for k, v in cat.operations.items() if k != inputs}
    basis = {(X, Y): cat.hom_basis(X, Y) for X in cat.objects() for Y in cat.objects() if cat.hom_basis(X, Y)}
    return PresentedCategory(cat.ring, cat.objects(), basis, operations, units=cat.units,
                             strictly_unital=cat.strictly_unital, name=f"{cat.name}~", arity_bound=cat.arity_bound,
                             vanishes_above_bound=cat.vanishes_above_bound, orders=cat.orders)


def lemma_relations(options: RunOptions) -> Tuple[bool, Dict]:
    ring = options.parsed_ring()
    results = {}
    for name, build in STANDARD_EXAMPLES.items():
        report = check_relations(build(ring), options.arity)
        results[name] = report.passed
    A = dual_numbers(ring)
    one = A.gen("X", "X", "1")
    broken = check_relations(mutated(A, (one, one)), 3)
    return all(results.values()) and not broken.passed, {
        "categories": results,
        "mutation_detected": not broken.passed,
    }


def _zero_witness(verdict) -> bool:
    for h in list(verdict.left.values()) + list(verdict.right.values()):
        if h is None or not h.as_map().equals(ChainMap.zero(h.f.source, h.f.target, h.degree)):
            return False
    return True


def lemma_units(options: RunOptions) -> Tuple[bool, Dict]:
    ring = options.parsed_ring()
    units = {}
    passed = True
    for cat in strictly_unital_examples(ring):
        for X, e in cat.units.items():
            verdict = is_unit(cat, X, e)
            strict = is_strict_unit(cat, X, e)
            units[f"{cat.name}:{X}"] = {"strict": strict, "unit": verdict.is_unit,
                                        "zero_witness": _zero_witness(verdict)}
            passed = passed and strict and verdict.is_unit
    A = dual_numbers(ring)
    eps = Element.of(ring, A.gen("X", "X", "eps"))
    eps_rejected = not is_unit(A, "X", eps).is_unit
    A_plus = A.augment()
    adjoined = A_plus.units["X"]
    old = Element.of(ring, A_plus.gen("X", "X", "1"))
    augmentation = {
        "adjoined_strict": is_strict_unit(A_plus, "X", adjoined),
        "cohomologous": cohomologous(A_plus, adjoined, old),
    }
    passed = (passed and eps_rejected and augmentation["adjoined_strict"]
              and not augmentation["cohomologous"])
    return passed, {"units": units, "eps_rejected": eps_rejected, "augmentation": augmentation}


def _label(e: Element) -> str:
    return " + ".join(g.label if c == 1 else f"{c}*{g.label}" for g, c in e.terms.items())


def _unit_pairs(cat: PresentedCategory) -> List[Tuple[Element, Element]]:
    units = [cat.units[X] for X in cat.objects()]
    if cat.name == "unit-perturbation":
        units.append(perturbed_unit(cat))
    return [(e, f) for e in units for f in units]


def lemma_cone_acyclicity(options: RunOptions) -> Tuple[bool, Dict]:
    """H^* of homs into, out of and between cones of units vanishes on the cone window."""
    lo, hi = load_settings().verify.cone_window
    degrees = range(lo, hi + 1)
    results = {}
    for cat in strictly_unital_examples(options.parsed_ring()):
        twcat = TwistedCategory(cat)
        for e, f in _unit_pairs(cat):
            C = twcat.add_object(cone_of(cat, e, f"cone({_label(e)})"))
            D = twcat.add_object(cone_of(cat, f, f"cone({_label(f)})"))
            checks = cone_acyclicity(twcat, C)
            checks[f"hom({C}, {D})"] = is_acyclic(tw_hom(twcat, C, D), degrees)
            results[f"{cat.name}:{C},{D}"] = all(checks.values())
    return all(results.values()), {"cones": results, "window": [lo, hi]}


def lemma_z_w(options: RunOptions) -> Tuple[bool, Dict]:
    """W is a chain map and Z, W are mutually inverse up to homotopy for every unit pair."""
    results = {}
    for cat in strictly_unital_examples(options.parsed_ring()):
        twcat = TwistedCategory(cat)
        for e, f in _unit_pairs(cat):
            ops = z_w_operators(twcat, e, f)
            wz, zw = z_w_homotopies(ops)
            results[f"{cat.name}:{_label(e)},{_label(f)}"] = {
                "w_chain_map": ops.w.is_closed(),
                "wz_homotopic_to_id": wz is not None,
                "zw_homotopic_to_id": zw is not None,
            }
    passed = all(all(r.values()) for r in results.values())
    return passed, {"pairs": results}


def lemma_cone_cone(options: RunOptions) -> Tuple[bool, Dict]:
    results = {}
    for cat in strictly_unital_examples(options.parsed_ring()):
        for e, f in _unit_pairs(cat):
            results[f"{cat.name}:{_label(e)},{_label(f)}"] = verify_cone_cone_relation(cat, e, f)
    return all(results.values()), {"pairs": results}


def right_inverse_examples(ring: Ring) -> List[PresentedCategory]:
    return [field_point(ring), poset_category(ring, 1), z2_resolution()]


def lemma_right_inverse(options: RunOptions) -> Tuple[bool, Dict]:
    reports = [verify_right_inverse(A, options.truncation, options.window)
               for A in right_inverse_examples(options.parsed_ring())]
    return all(r.passed for r in reports), {r.category: r.model_dump() for r in reports}


def lemma_unit_homotopy(options: RunOptions) -> Tuple[bool, Dict]:
    ring = options.parsed_ring()
    reports = {A.name: verify_unit_homotopy(A, "X", options.truncation) for A in (field_point(ring), dual_numbers(ring))}
    return all(r.passed for r in reports.values()), {name: r.model_dump() for name, r in reports.items()}


def lemma_cohomologous(options: RunOptions) -> Tuple[bool, Dict]:
    """A[u⁻¹] -> A[{u, u + dβ}⁻¹] on the example with a non-strict unit."""
    A = unit_perturbation(options.parsed_ring())
    u = A.units["X"]
    report = verify_cohomologous_localizations(A, [u], [u, perturbed_unit(A)], options.truncation, options.window)
    return report.passed, report.model_dump()


def lemma_mod_ideal(options: RunOptions) -> Tuple[bool, Dict]:
    ring = options.parsed_ring()
    arity = min(options.arity, load_settings().verify.relation_arity)
    reports = [verify_mod_ideal(A, options.truncation, options.window, closure_arity=arity)
               for A in (field_point(ring), poset_category(ring, 1))]
    return all(r.passed for r in reports), {r.category: r.model_dump() for r in reports}


def lemma_nerve(options: RunOptions) -> Tuple[bool, Dict]:
    """Nerves of finite examples, π_1 of the core against (H^0)^× and π_i against Dold-Kan."""
    dimension = options.nerve_dimension
    results = {}
    passed = True
    for cat in (field_point(F2), field_point(F5), poset_category(F2, 1)):
        ok, summary = nerve_summary(cat, dimension)
        results[f"{cat.name}/{cat.ring.name}"] = summary
        passed = passed and ok
    mapping = pi_vs_cohomology(two_term(F2), "X", "X", max_i=1)
    results["mapping_space"] = mapping.model_dump()
    return passed and mapping.passed, results


def lemma_hochschild(options: RunOptions) -> Tuple[bool, Dict]:
    """Dual numbers over F_2: CH against the classical complex, and the center in degree 0."""
    A = dual_numbers(F2)
    ok, summary = hochschild_summary(A, HOCHSCHILD_ARITY)
    center = summary["cohomology"].get("0")
    return ok and center == "F_2^2", summary


LEMMAS: Dict[str, Callable[[RunOptions], Tuple[bool, Dict]]] = {
    "relations": lemma_relations,
    "units": lemma_units,
    "cone-acyclicity": lemma_cone_acyclicity,
    "z-w": lemma_z_w,
    "cone-cone": lemma_cone_cone,
    "right-inverse": lemma_right_inverse,
    "unit-homotopy": lemma_unit_homotopy,
    "cohomologous": lemma_cohomologous,
    "mod-ideal": lemma_mod_ideal,
    "nerve": lemma_nerve,
    "hochschild": lemma_hochschild,
}
