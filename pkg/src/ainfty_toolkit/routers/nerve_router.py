import logging
from typing import Dict, Optional, Sequence, Tuple

from ainfty_toolkit.ainfty import AInftyCategory
from ainfty_toolkit.nerve import Nerve, ainfty_nerve, dg_nerve, inner_horns, pi1_core, same_simplices
from ainfty_toolkit.utils.inputs import resolve_category
from ainfty_toolkit.utils.settings import RunOptions, load_settings

logger = logging.getLogger(__name__)

INTEGER_COEFFICIENTS = (-1, 0, 1)

#=============================
# Router endpoints
#=============================

def register(subparsers, parents):
    parser = subparsers.add_parser("nerve", parents=parents,
                                   help="truncated nerve: simplices, horn filling, π_0 and π_1 of the core")
    parser.add_argument("category", help="category file or examples/<name>")
    parser.set_defaults(handler=handle_nerve)


def handle_nerve(args, options: RunOptions) -> Tuple[bool, Dict]:
    cat = resolve_category(args.category, options.parsed_ring())
    return nerve_summary(cat, options.nerve_dimension)

#=============================
# Service functions
#=============================

def enumeration_coefficients(cat: AInftyCategory) -> Optional[Sequence[int]]:
    return None if cat.ring.is_finite else INTEGER_COEFFICIENTS


def build_nerve(cat: AInftyCategory, dimension: int) -> Nerve:
    """
    The A∞ nerve when the category is strictly unital, otherwise the dg nerve.
    """
    kwargs = {"coefficients": enumeration_coefficients(cat), "limit": load_settings().limits.max_simplices}
    if cat.strictly_unital:
        return ainfty_nerve(cat, dimension, **kwargs)
    return dg_nerve(cat, dimension, **kwargs)


def horn_table(nerve: Nerve) -> Dict[str, Dict[str, int]]:
    table = {}
    for n in range(2, min(3, nerve.dim_bound) + 1):
        counts: Dict[str, Dict[str, int]] = {}
        for faces, i in inner_horns(nerve, n):
            entry = counts.setdefault(f"{n},{i}", {"checked": 0, "filled": 0})
            entry["checked"] += 1
            if nerve.fill_inner_horn(faces, i) is not None:
                entry["filled"] += 1
        table.update(counts)
    return table


def nerve_summary(cat: AInftyCategory, dimension: int) -> Tuple[bool, Dict]:
    nerve = build_nerve(cat, dimension)
    logger.info("enumerating %r", nerve)
    sections: Dict = {
        "category": cat.name,
        "ring": cat.ring.name,
        "kind": nerve.kind,
        "simplices": {str(n): len(nerve.simplices(n)) for n in range(dimension + 1)},
        "simplicial_identities": nerve.check_simplicial_identities(dimension),
        "horns": horn_table(nerve),
        "core_components": [[str(X) for X in c] for c in nerve.core().pi0()],
    }
    if nerve.coefficients is not None and not cat.ring.is_finite:
        sections["note"] = f"simplices enumerated with coefficients {list(INTEGER_COEFFICIENTS)}"
    passed = sections["simplicial_identities"] and all(
        h["filled"] == h["checked"] for h in sections["horns"].values())
    if nerve.kind == "ainfty" and cat.highest_arity() <= 2:
        agree = same_simplices(nerve, dg_nerve(cat, dimension, coefficients=nerve.coefficients, limit=nerve.limit))
        sections["dg_nerve_agrees"] = agree
        passed = passed and agree
    if dimension >= 2 and cat.ring.is_finite and cat.strictly_unital:
        pi1 = {str(x): pi1_core(nerve, x).model_dump() for x in cat.objects()}
        sections["pi1_core"] = pi1
        passed = passed and all(r["isomorphic_to_h0_units"] for r in pi1.values())
    return passed, sections
