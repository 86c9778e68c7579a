"""
YAML presentation files for categories and functors.

A category file lists objects, the graded basis of every nonzero hom, the nonzero
structure constants and the units. Generators are referenced as ``SRC->TGT:label``;
operation inputs are written leftmost first (m^2(g, f) = g ∘ f).

    name: z2-resolution
    ring: Z
    objects: [X]
    homs:
      - {source: X, target: X, basis: [{label: "1", degree: 0}, {label: eps, degree: -1}]}
    operations:
      - {inputs: ["X->X:eps"], output: {"X->X:1": 2}}
    units: {X: {"X->X:1": 1}}
    strictly_unital: true
"""
import re
from pathlib import Path
from typing import Dict, List, Optional, Union

import yaml
from pydantic import BaseModel, Field, ValidationError

from ainfty_toolkit.ainfty import DEFAULT_ARITY_BOUND, Element, Gen, PresentedCategory
from ainfty_toolkit.coefficients import Ring
from ainfty_toolkit.errors import AInftyToolkitError, ParseError
from ainfty_toolkit.functors import PresentedFunctor

Coefficient = Union[int, str]

_REFERENCE = re.compile(r"^\s*(?P<source>[^:]+?)\s*->\s*(?P<target>[^:]+?)\s*:\s*(?P<label>.+?)\s*$")


class GeneratorSpec(BaseModel):
    label: str
    degree: int
    order: Optional[int] = Field(default=None, ge=2)


class HomSpec(BaseModel):
    source: str
    target: str
    basis: List[GeneratorSpec]


class OperationSpec(BaseModel):
    inputs: List[str]
    output: Dict[str, Coefficient]


class CategoryDocument(BaseModel):
    name: str = ""
    ring: Optional[str] = None
    arity_bound: int = DEFAULT_ARITY_BOUND
    vanishes_above_bound: bool = True
    strictly_unital: bool = False
    objects: List[str]
    homs: List[HomSpec] = []
    operations: List[OperationSpec] = []
    units: Dict[str, Dict[str, Coefficient]] = {}


def reference(gen: Gen) -> str:
    return f"{gen.source}->{gen.target}:{gen.label}"


def _load_yaml(text: str, location: str):
    try:
        return yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ParseError(f"invalid YAML: {exc}", location) from exc


def _resolve(lookup: Dict, ref: str, location: str) -> Gen:
    match = _REFERENCE.match(ref)
    if not match:
        raise ParseError(f"'{ref}' is not of the form SRC->TGT:label", location)
    key = (match["source"], match["target"], match["label"])
    if key not in lookup:
        raise ParseError(f"unknown generator '{ref}'", location)
    return lookup[key]


def _lookup(cat: PresentedCategory) -> Dict:
    return {(g.source, g.target, g.label): g
            for X in cat.objects() for Y in cat.objects() for g in cat.hom_basis(X, Y)}


def resolve_reference(cat: PresentedCategory, ref: str, location: str = "<argument>") -> Gen:
    """The generator named by a ``SRC->TGT:label`` reference."""
    return _resolve(_lookup(cat), ref, location)


def _combination(ring: Ring, lookup: Dict, terms: Dict[str, Coefficient], location: str) -> Dict[Gen, object]:
    out = {}
    for ref, c in terms.items():
        out[_resolve(lookup, ref, location)] = ring.coerce(c)
    return out


def category_from_document(doc: CategoryDocument, ring: Optional[Ring] = None,
                           source: str = "<document>") -> PresentedCategory:
    if doc.ring is not None:
        ring = Ring.parse(doc.ring)
    if ring is None:
        raise ParseError("no ring given in the file or on the command line", source)
    lookup: Dict = {}
    basis: Dict = {}
    orders = {}
    for i, hom in enumerate(doc.homs):
        gens = []
        for spec in hom.basis:
            g = Gen(hom.source, hom.target, spec.label, spec.degree)
            if (hom.source, hom.target, spec.label) in lookup:
                raise ParseError(f"duplicate generator {reference(g)}", f"{source}:homs[{i}]")
            lookup[(hom.source, hom.target, spec.label)] = g
            if spec.order:
                orders[g] = spec.order
            gens.append(g)
        basis.setdefault((hom.source, hom.target), []).extend(gens)
    operations = {}
    for i, op in enumerate(doc.operations):
        location = f"{source}:operations[{i}]"
        inputs = tuple(_resolve(lookup, ref, location) for ref in op.inputs)
        if not inputs:
            raise ParseError("an operation needs at least one input", location)
        if inputs in operations:
            raise ParseError("operation listed twice", location)
        operations[inputs] = _combination(ring, lookup, op.output, location)
    units = {}
    for X, terms in doc.units.items():
        location = f"{source}:units[{X}]"
        combo = _combination(ring, lookup, terms, location)
        element = Element(ring, X, X, {g: c for g, c in combo.items() if c})
        if any((g.source, g.target) != (X, X) for g in combo):
            raise ParseError(f"unit of {X} must lie in hom({X}, {X})", location)
        units[X] = element
    try:
        return PresentedCategory(ring, doc.objects, basis, operations, units=units,
                                 strictly_unital=doc.strictly_unital, name=doc.name,
                                 arity_bound=doc.arity_bound, vanishes_above_bound=doc.vanishes_above_bound,
                                 orders=orders)
    except AInftyToolkitError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc), source) from exc
    except ValueError as exc:
        raise ParseError(str(exc), source) from exc


def parse_category(text: str, ring: Optional[Ring] = None, source: str = "<string>") -> PresentedCategory:
    data = _load_yaml(text, source)
    if not isinstance(data, dict):
        raise ParseError("a category file must be a mapping", source)
    try:
        doc = CategoryDocument.model_validate(data)
    except ValidationError as exc:
        raise ParseError(str(exc), source) from exc
    return category_from_document(doc, ring, source)


def load_category(path: Union[str, Path], ring: Optional[Ring] = None) -> PresentedCategory:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc}", str(path)) from exc
    return parse_category(text, ring, str(path))


def category_document(cat: PresentedCategory) -> CategoryDocument:
    ring = cat.ring
    homs = []
    for X in cat.objects():
        for Y in cat.objects():
            gens = cat.hom_basis(X, Y)
            if gens:
                homs.append(HomSpec(source=X, target=Y, basis=[
                    GeneratorSpec(label=g.label, degree=g.degree, order=cat.orders.get(g)) for g in gens
                ]))
    operations = [
        OperationSpec(inputs=[reference(g) for g in inputs],
                      output={reference(g): ring.format(c) for g, c in output.items()})
        for inputs, output in cat.operations.items()
    ]
    units = {X: {reference(g): ring.format(c) for g, c in e.terms.items()} for X, e in cat.units.items()}
    return CategoryDocument(name=cat.name, ring=ring.name.replace("_", ""), arity_bound=cat.arity_bound,
                            vanishes_above_bound=cat.vanishes_above_bound, strictly_unital=cat.strictly_unital,
                            objects=cat.objects(), homs=homs, operations=operations, units=units)


def serialize_category(cat: PresentedCategory) -> str:
    """Canonical YAML text; parse_category(serialize_category(A)) has the same structure constants."""
    data = category_document(cat).model_dump(exclude_none=True)
    return yaml.safe_dump(data, sort_keys=False, allow_unicode=True)


def same_presentation(a: PresentedCategory, b: PresentedCategory) -> bool:
    """Equal objects, bases, structure constants, units and flags."""
    return (
        a.ring == b.ring
        and a.objects() == b.objects()
        and all(list(a.hom_basis(X, Y)) == list(b.hom_basis(X, Y)) for X in a.objects() for Y in a.objects())
        and a.operations == b.operations
        and {X: e.terms for X, e in a.units.items()} == {X: e.terms for X, e in b.units.items()}
        and a.strictly_unital == b.strictly_unital
        and a.orders == b.orders
    )


# ---------------------------------------------------------------------------
# Functors
# ---------------------------------------------------------------------------

class FunctorDocument(BaseModel):
    """
    A functor file: source and target category files (paths relative to the functor file, or
    ``examples/<name>``), the object map and the nonzero components f^k.
    """
    name: str = ""
    source: Optional[str] = None
    target: Optional[str] = None
    objects: Dict[str, str]
    components: List[OperationSpec] = []


def functor_from_document(doc: FunctorDocument, source_cat: PresentedCategory, target_cat: PresentedCategory,
                          location: str = "<document>") -> PresentedFunctor:
    ring = target_cat.ring
    source_lookup, target_lookup = _lookup(source_cat), _lookup(target_cat)
    components = {}
    for i, spec in enumerate(doc.components):
        where = f"{location}:components[{i}]"
        inputs = tuple(_resolve(source_lookup, ref, where) for ref in spec.inputs)
        if not inputs:
            raise ParseError("a component needs at least one input", where)
        if inputs in components:
            raise ParseError("component listed twice", where)
        components[inputs] = _combination(ring, target_lookup, spec.output, where)
    try:
        return PresentedFunctor(source_cat, target_cat, doc.objects, components, name=doc.name)
    except AInftyToolkitError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc), location) from exc


def parse_functor_document(text: str, location: str = "<string>") -> FunctorDocument:
    data = _load_yaml(text, location)
    if not isinstance(data, dict):
        raise ParseError("a functor file must be a mapping", location)
    try:
        return FunctorDocument.model_validate(data)
    except ValidationError as exc:
        raise ParseError(str(exc), location) from exc


def parse_functor(text: str, source_cat: PresentedCategory, target_cat: PresentedCategory,
                  location: str = "<string>") -> PresentedFunctor:
    return functor_from_document(parse_functor_document(text, location), source_cat, target_cat, location)


def functor_document(F: PresentedFunctor, source: Optional[str] = None, target: Optional[str] = None) -> FunctorDocument:
    ring = F.target.ring
    components = [
        OperationSpec(inputs=[reference(g) for g in inputs],
                      output={reference(g): ring.format(c) for g, c in output.items()})
        for inputs, output in F.components.items()
    ]
    return FunctorDocument(name=F.name, source=source, target=target,
                           objects={str(X): str(Y) for X, Y in F.object_map.items()}, components=components)


def serialize_functor(F: PresentedFunctor, source: Optional[str] = None, target: Optional[str] = None) -> str:
    data = functor_document(F, source, target).model_dump(exclude_none=True)
    return yaml.safe_dump(data, sort_keys=False, allow_unicode=True)
