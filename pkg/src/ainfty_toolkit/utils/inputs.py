from pathlib import Path
from typing import Optional, Tuple

from ainfty_toolkit.ainfty import PresentedCategory
from ainfty_toolkit.catalog import STANDARD_EXAMPLES
from ainfty_toolkit.coefficients import Ring
from ainfty_toolkit.errors import ParseError
from ainfty_toolkit.formats import functor_from_document, load_category, parse_functor_document
from ainfty_toolkit.functors import PresentedFunctor

DATA_DIR = Path(__file__).resolve().parent.parent / "data"
EXAMPLE_PREFIX = "examples/"


def bundled_names():
    names = {path.stem for path in DATA_DIR.glob("*.yaml")}
    return sorted(names | set(STANDARD_EXAMPLES))


def resolve_category(reference: str, ring: Ring, base: Optional[Path] = None) -> PresentedCategory:
    """
    A category from ``examples/<name>`` (bundled file first, then the built-in catalog) or from a path.
    """
    if reference.startswith(EXAMPLE_PREFIX):
        name = reference[len(EXAMPLE_PREFIX):]
        bundled = DATA_DIR / f"{name}.yaml"
        if bundled.exists():
            return load_category(bundled, ring)
        if name in STANDARD_EXAMPLES:
            return STANDARD_EXAMPLES[name](ring)
        raise ParseError(f"no bundled example '{name}' (known: {', '.join(bundled_names())})", reference)
    path = Path(reference)
    if base is not None and not path.is_absolute() and not path.exists():
        path = base / path
    return load_category(path, ring)


def resolve_functor(reference: str, ring: Ring, source: Optional[str] = None,
                    target: Optional[str] = None) -> Tuple[PresentedFunctor, PresentedCategory, PresentedCategory]:
    """A functor file with its source and target categories (flags override the file's own references)."""
    if reference.startswith(EXAMPLE_PREFIX):
        path = DATA_DIR / "functors" / f"{reference[len(EXAMPLE_PREFIX):]}.yaml"
    else:
        path = Path(reference)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc}", str(path)) from exc
    doc = parse_functor_document(text, str(path))
    source = source or doc.source
    target = target or doc.target
    if not source or not target:
        raise ParseError("a functor needs a source and a target category", str(path))
    A = resolve_category(source, ring, path.parent)
    B = resolve_category(target, ring, path.parent)
    return functor_from_document(doc, A, B, str(path)), A, B
