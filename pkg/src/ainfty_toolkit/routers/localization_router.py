import logging
from typing import Dict, List, Sequence, Tuple

from ainfty_toolkit.ainfty import Element, PresentedCategory, check_relations
from ainfty_toolkit.complexes import cohomology_at
from ainfty_toolkit.errors import UsageError
from ainfty_toolkit.formats import resolve_reference
from ainfty_toolkit.localization import LocalizedCategory, check_graded_acyclicity, localize, respects_filtration
from ainfty_toolkit.utils.inputs import resolve_category
from ainfty_toolkit.utils.settings import RunOptions, load_settings

logger = logging.getLogger(__name__)

RELATION_SAMPLE = 25

#=============================
# Router endpoints
#=============================

def register(subparsers, parents):
    parser = subparsers.add_parser("localize", parents=parents,
                                   help="truncated localization A[I^-1] and its hom cohomology")
    parser.add_argument("category", help="category file or examples/<name>")
    parser.set_defaults(handler=handle_localize)


def handle_localize(args, options: RunOptions) -> Tuple[bool, Dict]:
    cat = resolve_category(args.category, options.parsed_ring())
    inverted = inverted_elements(cat, options.invert)
    D = localize(cat, inverted, options.truncation, max_words=load_settings().limits.max_words)
    return localization_summary(D, options)

#=============================
# Service functions
#=============================

def inverted_elements(cat: PresentedCategory, references: Sequence[str]) -> List[Element]:
    """
    The morphisms named on the command line, or every recorded unit when none are named.
    """
    if references:
        return [Element.of(cat.ring, resolve_reference(cat, ref, "--invert")) for ref in references]
    if not cat.units:
        raise UsageError(f"{cat.name} records no units; name the morphisms to invert with --invert")
    return [cat.units[X] for X in cat.objects() if X in cat.units]


def localization_summary(D: LocalizedCategory, options: RunOptions) -> Tuple[bool, Dict]:
    lo, hi = options.window
    homs = {}
    filtered = True
    for X in D.objects():
        for Y in D.objects():
            H = D.hom_window(X, Y, lo, hi)
            respects = respects_filtration(D, X, Y)
            filtered = filtered and respects
            entry = {
                "cohomology": {str(d): str(cohomology_at(H, d)) for d in range(lo, hi + 1)},
                "respects_filtration": respects,
            }
            graded = [check_graded_acyclicity(D, X, Y, l) for l in range(2, D.truncation + 1)]
            if graded:
                entry["graded_acyclic"] = {str(g.length): g.acyclic for g in graded}
            homs[f"{X}->{Y}"] = entry
    logger.info("sampling relations of %s", D.name)
    relations = check_relations(D, min(options.arity, 3), sample=RELATION_SAMPLE, seed=0)
    sections = {
        "category": D.name,
        "ring": D.ring.name,
        "truncation": D.truncation,
        "inverted": [str(C) for C in D.cones],
        "homs": homs,
        "relations": relations.model_dump(exclude_none=True),
    }
    return filtered and relations.passed, sections
