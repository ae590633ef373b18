"""
Versioned JSON documents
Input documents (curve, motion, explicit factors), the factorization result, the
linkage document and the collision report. Every document carries a "schema"
field; values are stored as canonical text so exact documents round-trip without
loss.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from kinematics.algebra import (
    Backend,
    CPoly,
    KElement,
    MotionPolynomial,
    PlanePoint,
    format_real,
    midpt,
)
from kinematics.collision import CollisionEvent, OrderingResult
from kinematics.curves import CurveSpec, apply_drawing_multiplier, curve_motion
from kinematics.factor import FactorizationResult
from kinematics.flip import LadderMeta
from kinematics.layers import JointType, LayerAssignment, LinkLayer, LinkType
from kinematics.linkage import Joint, Linkage, LinkageKind, SynthesisMeta
from utils.error_handling import DocumentError
from utils.logger import get_logger

from .grammar import (
    format_cpoly,
    format_kelement,
    format_motion,
    format_parameter,
    format_scalar,
    parse_cpoly,
    parse_kelement,
    parse_motion,
    parse_parameter,
)

logger = get_logger(__name__)

CURVE_SCHEMA = "linkforge/curve@1"
MOTION_SCHEMA = "linkforge/motion@1"
FACTORS_SCHEMA = "linkforge/factors@1"
FACTORIZATION_SCHEMA = "linkforge/factorization@1"
LINKAGE_SCHEMA = "linkforge/linkage@1"
COLLISIONS_SCHEMA = "linkforge/collisions@1"

BackendName = Literal["exact", "approx"]


class _Document(BaseModel):
    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, exclude_none=True, indent=2)


# Inputs


class CurveDocument(_Document):
    """Rational curve (f / h, g / h) given by three real polynomials"""

    schema_id: Literal["linkforge/curve@1"] = Field(default=CURVE_SCHEMA, alias="schema")
    f: str
    g: str
    h: str


class MotionDocument(_Document):
    schema_id: Literal["linkforge/motion@1"] = Field(default=MOTION_SCHEMA, alias="schema")
    motion: str


class FactorsDocument(_Document):
    """Explicit factor list k_1..k_n of (t - k_1)...(t - k_n)"""

    schema_id: Literal["linkforge/factors@1"] = Field(default=FACTORS_SCHEMA, alias="schema")
    factors: list[str] = Field(min_length=1)


# Outputs


class FactorizationDocument(_Document):
    schema_id: Literal["linkforge/factorization@1"] = Field(
        default=FACTORIZATION_SCHEMA, alias="schema"
    )
    backend: BackendName
    motion: str
    R: str
    factors: list[str]
    permutation: list[str]
    centers: list[tuple[str, str]]
    C: Optional[str] = None
    S: Optional[str] = None


class JointModel(BaseModel):
    links: tuple[int, int]
    center: tuple[str, str]
    factor: Optional[str] = None
    label: str = ""


class LadderModel(BaseModel):
    l: list[str]
    ktilde: list[str]


class MetaModel(BaseModel):
    factors: list[str]
    frame_link: int
    drawing_link: int
    ladder: Optional[LadderModel] = None
    motion: Optional[str] = None
    R: Optional[str] = None
    S: Optional[str] = None
    C: Optional[str] = None


class LinkLayerModel(BaseModel):
    kind: Literal["F", "U", "Z"]
    layers: list[int]


class LayersModel(BaseModel):
    links: dict[int, LinkLayerModel]
    joints: list[Literal["T", "Z"]]
    n_layers: int


class CollisionEventModel(BaseModel):
    joint: int
    links: tuple[int, int]
    link: int
    t: str
    s: str
    segment: tuple[int, int]
    exact: bool


class CollisionReportDocument(_Document):
    schema_id: Literal["linkforge/collisions@1"] = Field(
        default=COLLISIONS_SCHEMA, alias="schema"
    )
    ordering: list[int]
    finite: int
    infinite: int
    events: list[CollisionEventModel]


class LinkageDocument(_Document):
    schema_id: Literal["linkforge/linkage@1"] = Field(default=LINKAGE_SCHEMA, alias="schema")
    backend: BackendName
    kind: LinkageKind
    n_links: int = Field(ge=1)
    joints: list[JointModel]
    meta: Optional[MetaModel] = None
    layers: Optional[LayersModel] = None
    collisions: Optional[CollisionReportDocument] = None


# Reading


def _load_json(text: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"invalid JSON: {e}") from e
    if not isinstance(data, dict) or "schema" not in data:
        raise DocumentError("document has no schema field")
    return data


def _validate(model: type[_Document], data: dict):
    try:
        return model.model_validate(data)
    except ValidationError as e:
        raise DocumentError(f"malformed {data.get('schema')} document: {e}") from e


def _common_backend(values: list) -> list:
    if any(v.backend is Backend.APPROX for v in values):
        return [v.to_approx() for v in values]
    return values


@dataclass(frozen=True)
class SynthesisInput:
    """Parsed input of the factor and synthesize commands"""

    curve: Optional[CurveSpec] = None
    motion: Optional[MotionPolynomial] = None
    factors: Optional[tuple[KElement, ...]] = None

    def motion_polynomial(self) -> MotionPolynomial:
        if self.curve is not None:
            return curve_motion(self.curve)
        if self.motion is not None:
            return self.motion
        raise DocumentError("explicit factor lists carry no motion polynomial")

    def prepared(self, drawing: bool = False) -> tuple[MotionPolynomial, Optional[CPoly]]:
        """Motion polynomial to factor and the drawing multiplier C (None without drawing)"""
        P = self.motion_polynomial()
        if not drawing:
            return P, None
        C, CP = apply_drawing_multiplier(P)
        logger.debug(f"drawing multiplier C = {C}")
        return CP, C


def read_input(text: str) -> SynthesisInput:
    """JSON curve/motion/factors document or plain text holding one motion polynomial"""
    if not text.lstrip().startswith("{"):
        return SynthesisInput(motion=parse_motion(text.strip()))
    data = _load_json(text)
    schema = data["schema"]
    if schema == CURVE_SCHEMA:
        doc = _validate(CurveDocument, data)
        f, g, h = _common_backend([parse_cpoly(p) for p in (doc.f, doc.g, doc.h)])
        return SynthesisInput(curve=CurveSpec(f, g, h))
    if schema == MOTION_SCHEMA:
        doc = _validate(MotionDocument, data)
        return SynthesisInput(motion=parse_motion(doc.motion))
    if schema == FACTORS_SCHEMA:
        doc = _validate(FactorsDocument, data)
        factors = _common_backend([parse_kelement(k) for k in doc.factors])
        return SynthesisInput(factors=tuple(factors))
    raise DocumentError(f"unsupported input schema {schema!r}")


def _parse_real(text: str, backend: Backend) -> Union[Fraction, float]:
    try:
        return Fraction(text) if backend is Backend.EXACT else float(text)
    except (ValueError, ZeroDivisionError) as e:
        raise DocumentError(f"invalid coordinate {text!r}") from e


def _point(center: tuple[str, str], backend: Backend) -> PlanePoint:
    x, y = (_parse_real(v, backend) for v in center)
    return PlanePoint.from_xy(x, y, backend)


def _point_text(p: PlanePoint) -> tuple[str, str]:
    return (format_real(p.x), format_real(p.y))


def _optional(text: Optional[str], parse, backend: Backend):
    return None if text is None else parse(text, backend)


def _meta_from_model(meta: MetaModel, backend: Backend) -> SynthesisMeta:
    ladder = None
    if meta.ladder is not None:
        ladder = LadderMeta(
            tuple(parse_kelement(k, backend) for k in meta.ladder.l),
            tuple(parse_kelement(k, backend) for k in meta.ladder.ktilde),
        )
    return SynthesisMeta(
        factors=tuple(parse_kelement(k, backend) for k in meta.factors),
        frame_link=meta.frame_link,
        drawing_link=meta.drawing_link,
        ladder=ladder,
        motion=_optional(meta.motion, parse_motion, backend),
        R=_optional(meta.R, parse_cpoly, backend),
        S=_optional(meta.S, parse_cpoly, backend),
        C=_optional(meta.C, parse_cpoly, backend),
    )


def document_to_linkage(doc: LinkageDocument) -> Linkage:
    backend = Backend(doc.backend)
    joints = tuple(
        Joint(
            j.links[0],
            j.links[1],
            _point(j.center, backend),
            _optional(j.factor, parse_kelement, backend),
            j.label,
        )
        for j in doc.joints
    )
    meta = _meta_from_model(doc.meta, backend) if doc.meta else None
    return Linkage(doc.n_links, joints, doc.kind, meta)


def document_layers(doc: LinkageDocument) -> Optional[LayerAssignment]:
    if doc.layers is None:
        return None
    links = {
        link: LinkLayer(LinkType(layer.kind), tuple(layer.layers))
        for link, layer in doc.layers.links.items()
    }
    joints = tuple(JointType(kind) for kind in doc.layers.joints)
    return LayerAssignment(links, joints, doc.layers.n_layers)


def read_linkage_document(text: str) -> LinkageDocument:
    data = _load_json(text)
    if data["schema"] != LINKAGE_SCHEMA:
        raise DocumentError(f"expected a {LINKAGE_SCHEMA} document, got {data['schema']!r}")
    return _validate(LinkageDocument, data)


def load_linkage(text: str) -> tuple[Linkage, Optional[LayerAssignment]]:
    doc = read_linkage_document(text)
    return document_to_linkage(doc), document_layers(doc)


def read_collision_report(text: str) -> CollisionReportDocument:
    data = _load_json(text)
    if data["schema"] != COLLISIONS_SCHEMA:
        raise DocumentError(f"expected a {COLLISIONS_SCHEMA} document, got {data['schema']!r}")
    return _validate(CollisionReportDocument, data)


# Writing


def _meta_model(meta: SynthesisMeta) -> MetaModel:
    ladder = None
    if meta.ladder is not None:
        ladder = LadderModel(
            l=[format_kelement(k) for k in meta.ladder.l],
            ktilde=[format_kelement(k) for k in meta.ladder.ktilde],
        )
    return MetaModel(
        factors=[format_kelement(k) for k in meta.factors],
        frame_link=meta.frame_link,
        drawing_link=meta.drawing_link,
        ladder=ladder,
        motion=None if meta.motion is None else format_motion(meta.motion),
        R=None if meta.R is None else format_cpoly(meta.R),
        S=None if meta.S is None else format_cpoly(meta.S),
        C=None if meta.C is None else format_cpoly(meta.C),
    )


def layers_model(A: LayerAssignment) -> LayersModel:
    return LayersModel(
        links={
            link: LinkLayerModel(kind=layer.kind.value, layers=list(layer.layers))
            for link, layer in sorted(A.links.items())
        },
        joints=[kind.value for kind in A.joints],
        n_layers=A.n_layers,
    )


def _event_model(event: CollisionEvent) -> CollisionEventModel:
    return CollisionEventModel(
        joint=event.joint,
        links=event.links,
        link=event.link,
        t=format_parameter(event.t),
        s=format_parameter(event.s),
        segment=event.segment,
        exact=event.exact,
    )


def collision_report(
    ordering, events: list[CollisionEvent]
) -> CollisionReportDocument:
    infinite = sum(1 for e in events if e.at_infinity)
    return CollisionReportDocument(
        ordering=list(ordering),
        finite=len(events) - infinite,
        infinite=infinite,
        events=[_event_model(e) for e in events],
    )


def ordering_report(result: OrderingResult) -> CollisionReportDocument:
    return collision_report(result.ordering, list(result.events))


def event_from_model(model: CollisionEventModel, backend: Backend) -> CollisionEvent:
    exact = model.exact and backend is Backend.EXACT
    t = parse_parameter(model.t)
    s = parse_parameter(model.s)
    if not exact:
        t, s = float(t), float(s)
    return CollisionEvent(model.joint, model.links, model.link, t, s, model.segment, exact)


def linkage_to_document(
    L: Linkage,
    layers: Optional[LayerAssignment] = None,
    collisions: Optional[CollisionReportDocument] = None,
) -> LinkageDocument:
    joints = [
        JointModel(
            links=j.links,
            center=_point_text(j.center),
            factor=None if j.factor is None else format_kelement(j.factor),
            label=j.label,
        )
        for j in L.joints
    ]
    return LinkageDocument(
        backend=L.backend.value,
        kind=L.kind,
        n_links=L.n_links,
        joints=joints,
        meta=_meta_model(L.meta) if L.meta else None,
        layers=layers_model(layers) if layers else None,
        collisions=collisions,
    )


def factorization_document(
    P: MotionPolynomial,
    result: FactorizationResult,
    C: Optional[CPoly] = None,
    S: Optional[CPoly] = None,
) -> FactorizationDocument:
    return FactorizationDocument(
        backend=result.backend.value,
        motion=format_motion(P),
        R=format_cpoly(result.R),
        factors=[format_kelement(k) for k in result.factors],
        permutation=[format_scalar(z) for z in result.permutation],
        centers=[_point_text(midpt(k)) for k in result.factors],
        C=None if C is None else format_cpoly(C),
        S=None if S is None or S.degree < 1 else format_cpoly(S),
    )
