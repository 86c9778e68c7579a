import logging
from typing import Dict, Tuple

from ainfty_toolkit.ainfty import AInftyCategory, PresentedCategory
from ainfty_toolkit.complexes import cohomology_at
from ainfty_toolkit.errors import UsageError
from ainfty_toolkit.functors import (
    PresentedFunctor,
    augment_functor,
    check_functor,
    compare_with_classical,
    hh0_units,
    hochschild,
    is_strictly_unital_functor,
    is_unital_functor,
    localization_square_commutes,
    pi0_functor_classes,
)
from ainfty_toolkit.localization import localize
from ainfty_toolkit.routers.localization_router import inverted_elements
from ainfty_toolkit.utils.inputs import resolve_category, resolve_functor
from ainfty_toolkit.utils.settings import RunOptions, load_settings

logger = logging.getLogger(__name__)

#=============================
# Router endpoints
#=============================

def register(subparsers, parents):
    hh = subparsers.add_parser("hochschild", parents=parents,
                               help="Hochschild cochains CH(A) = fun(id, id) truncated at --arity")
    hh.add_argument("category", help="category file or examples/<name>")
    hh.set_defaults(handler=handle_hochschild)

    functors = subparsers.add_parser("functors", parents=parents,
                                     help="check a functor file, or count functor classes up to equivalence")
    functors.add_argument("category", nargs="?", default=None, help="source category when enumerating")
    functors.add_argument("--functor", default=None, help="functor file to check")
    functors.add_argument("--target", default=None, help="target category (overrides the functor file)")
    functors.set_defaults(handler=handle_functors)


def handle_hochschild(args, options: RunOptions) -> Tuple[bool, Dict]:
    cat = resolve_category(args.category, options.parsed_ring())
    return hochschild_summary(cat, options.arity)


def handle_functors(args, options: RunOptions) -> Tuple[bool, Dict]:
    ring = options.parsed_ring()
    if args.functor:
        F, A, B = resolve_functor(args.functor, ring, args.category, args.target)
        return functor_summary(F, A, B, options)
    if not args.category or not args.target:
        raise UsageError("give --functor FILE, or a source category together with --target")
    A = resolve_category(args.category, ring)
    B = resolve_category(args.target, ring)
    classes = pi0_functor_classes(A, B, options.arity, load_settings().limits.max_functors)
    return True, {"classes": classes.count, "enumeration": classes.model_dump()}

#=============================
# Service functions
#=============================

def _one_object_degree_zero(A: AInftyCategory) -> bool:
    objects = A.objects()
    return len(objects) == 1 and all(g.degree == 0 for g in A.hom_basis(objects[0], objects[0]))


def hochschild_summary(A: AInftyCategory, arity_bound: int) -> Tuple[bool, Dict]:
    """
    Cohomology of CH(A) below the truncation; the classical comparison for algebras in degree 0.
    """
    CH = hochschild(A, arity_bound)
    sections: Dict = {
        "category": A.name,
        "ring": A.ring.name,
        "arity_bound": arity_bound,
        "ranks": {str(d): CH.rank(d) for d in CH.degrees()},
        "cohomology": {str(d): str(cohomology_at(CH, d)) for d in CH.degrees() if d < arity_bound},
    }
    passed = True
    if _one_object_degree_zero(A):
        comparison = compare_with_classical(A, arity_bound)
        sections["classical"] = comparison.model_dump()
        passed = comparison.agrees
    if A.ring.is_finite:
        sections["hh0_units"] = hh0_units(A, limit=load_settings().limits.max_functors)
    return passed, sections


def functor_summary(F: PresentedFunctor, A: PresentedCategory, B: PresentedCategory,
                    options: RunOptions) -> Tuple[bool, Dict]:
    report = check_functor(F, min(options.arity, A.arity_bound))
    sections: Dict = {
        "functor": F.name,
        "source": A.name,
        "target": B.name,
        "components": F.describe(),
        "equations": report.model_dump(),
        "unital": is_unital_functor(F),
        "strictly_unital": is_strictly_unital_functor(F),
        "augmented_strictly_unital": is_strictly_unital_functor(augment_functor(F)),
    }
    if options.invert:
        inverted = inverted_elements(A, options.invert)
        images = [F.apply(e) for e in inverted]
        source = localize(A, inverted, options.truncation)
        target = localize(B, images, options.truncation)
        sections["localization_square"] = localization_square_commutes(F, source, target)
    passed = report.passed and sections.get("localization_square", True)
    return passed, sections
