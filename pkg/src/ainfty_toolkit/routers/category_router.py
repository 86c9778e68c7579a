import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, Tuple

from ainfty_toolkit.ainfty import (
    AInftyCategory,
    check_relations,
    hom_cohomology,
    is_homotopically_projective,
    is_strict_unit,
    is_unit,
)
from ainfty_toolkit.utils.inputs import resolve_category
from ainfty_toolkit.utils.settings import RunOptions, load_settings

logger = logging.getLogger(__name__)

#=============================
# Router endpoints
#=============================

def register(subparsers, parents):
    check = subparsers.add_parser("check", parents=parents,
                                  help="A∞ relations, units and hom cohomology of a category file")
    check.add_argument("category", help="category file or examples/<name>")
    check.set_defaults(handler=handle_check)

    cohomology = subparsers.add_parser("cohomology", parents=parents, help="cohomology of every hom complex")
    cohomology.add_argument("category", help="category file or examples/<name>")
    cohomology.set_defaults(handler=handle_cohomology)


def handle_check(args, options: RunOptions) -> Tuple[bool, Dict]:
    cat = resolve_category(args.category, options.parsed_ring())
    return check_category(cat, options)


def handle_cohomology(args, options: RunOptions) -> Tuple[bool, Dict]:
    cat = resolve_category(args.category, options.parsed_ring())
    return True, {"category": cat.name, "ring": cat.ring.name, "homs": hom_table(cat, options.window)}

#=============================
# Service functions
#=============================

def hom_table(cat: AInftyCategory, window: Tuple[int, int]) -> Dict[str, Dict[str, str]]:
    """
    H^d(hom(X, Y)) for d in the window, for every ordered pair with a nonzero hom.
    """
    lo, hi = window
    pairs = [(X, Y) for X in cat.objects() for Y in cat.objects() if cat.hom_basis(X, Y)]
    with ThreadPoolExecutor(max_workers=max(1, load_settings().threads)) as pool:
        results = list(pool.map(lambda pair: hom_cohomology(cat, *pair), pairs))
    return {f"{X}->{Y}": {str(d): str(groups[d]) for d in sorted(groups) if lo <= d <= hi}
            for (X, Y), groups in zip(pairs, results)}


def unit_table(cat: AInftyCategory, arity: int) -> Dict[str, Dict]:
    """Strict units are units; over non-free homs only strictness is decided."""
    free = getattr(cat, "is_free", lambda: True)()
    table = {}
    for X in cat.objects():
        e = cat.units.get(X)
        if e is None:
            table[X] = {"recorded": False}
            continue
        strict = is_strict_unit(cat, X, e, arity)
        if strict or not free:
            table[X] = {"recorded": True, "unit": strict, "strict": strict}
            continue
        verdict = is_unit(cat, X, e)
        table[X] = {"recorded": True, "unit": verdict.is_unit, "strict": False}
        if verdict.reason:
            table[X]["reason"] = verdict.reason
    return table


def check_category(cat: AInftyCategory, options: RunOptions) -> Tuple[bool, Dict]:
    """
    Relations up to the arity option, the recorded units, projectivity and the hom cohomology table.
    """
    logger.info("checking %s up to arity %d", cat.name, options.arity)
    relations = check_relations(cat, options.arity)
    units = unit_table(cat, options.arity)
    free = getattr(cat, "is_free", lambda: True)()
    sections = {
        "category": cat.name,
        "ring": cat.ring.name,
        "objects": [str(X) for X in cat.objects()],
        "relations": relations.model_dump(exclude_none=True),
        "units": units,
        "projectivity": is_homotopically_projective(cat).model_dump(),
        "cohomology": hom_table(cat, options.window),
    }
    if not free:
        sections["note"] = "non-free homs are reported directly from their presentation"
    passed = relations.passed and all(u.get("unit", True) for u in units.values())
    return passed, sections
