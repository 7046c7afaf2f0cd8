"""
Machine-readable report models, converters and the GL(3,2) duality report.

Field names of these models are the stable output interface.
"""

import logging
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from .constructions import gl32_with_duality
from .frattini import FrattiniWitness, class_is_stable, e_pi_criterion
from .hall import HallAnalysis, PrimeSet, hall_classes
from .perm_core import GroupLike, Subgroup, SubgroupClass, as_group, conjugacy_witness, conjugates, format_perm, normalizer
from .subgroup_enum import subgroups_of_order

logger = logging.getLogger(__name__)

TOOL_NAME = "hallfrattini"


class SubgroupRecord(BaseModel):
    order: int
    class_size: int = 1
    generators: List[str] = Field(default_factory=list)
    label: Optional[str] = None


class HallReport(BaseModel):
    group: str
    group_order: int
    pi: str
    status: str
    target_order: int
    factorwise: bool = False
    symbolic: bool = False
    base_class_count: Optional[int] = None
    classes: List[SubgroupRecord] = Field(default_factory=list)


class TraceRecord(BaseModel):
    kind: str
    depth: int
    detail: str
    orders: Dict[str, int] = Field(default_factory=dict)


class WitnessRecord(BaseModel):
    group: str
    pi: str
    method: str
    normal_subgroup: SubgroupRecord
    hall: SubgroupRecord
    normalizer: SubgroupRecord
    product_covers_G: bool
    normalizer_in_E_pi: bool
    normalizer_hall_is_G_hall: bool
    stable_class_count: int = 0
    trace: List[TraceRecord] = Field(default_factory=list)


class Remark1Report(BaseModel):
    socle_order: int
    group_order: int
    iota: str
    iota_is_involution: bool
    iota_outside_socle: bool
    pi: str
    socle_hall_status: str
    socle_hall_classes: List[SubgroupRecord]
    h1_h2_conjugate_in_socle: bool
    fusing_element: Optional[str]
    subgroups_of_hall_order: int
    group_in_E_pi: bool
    normalizers_inside_socle: bool
    stable_socle_classes: int
    e_pi_criterion: bool


class Remark2Report(BaseModel):
    factor_group: str
    pi: str
    copies: int
    factor_class_orders: List[int]
    a_class_count: int
    orbit_count: int
    burnside_count: int
    orbit_sizes: List[int]
    stable_classes: List[List[int]]
    k1: List[int]
    k2: List[int]
    k1_k2_fused: bool
    k1_k2_a_conjugate: bool
    verdicts: Dict[str, str] = Field(default_factory=dict)
    stable_class_exists: bool = True


class CorpusRecord(BaseModel):
    group: str
    order: int
    pi: str
    status: str
    normal_subgroups: int = 0
    checks: Dict[str, bool] = Field(default_factory=dict)
    violations: List[str] = Field(default_factory=list)
    k_values: List[int] = Field(default_factory=list)
    error: Optional[str] = None


class RunHeader(BaseModel):
    tool: str = TOOL_NAME
    version: str
    command: str
    flags: Dict[str, Any] = Field(default_factory=dict)


class RunFooter(BaseModel):
    records: int
    violations: int
    errors: int = 0


class RunDocument(BaseModel):
    """One document per run: header, per-query records, summary counts."""
    header: RunHeader
    body: List[Dict[str, Any]] = Field(default_factory=list)
    footer: RunFooter


def subgroup_record(H: GroupLike, class_size: int = 1, label: Optional[str] = None) -> SubgroupRecord:
    Hg = as_group(H)
    if label is None and isinstance(H, Subgroup):
        label = H.label
    return SubgroupRecord(
        order=Hg.order,
        class_size=class_size,
        generators=[format_perm(g) for g in Hg.generators],
        label=label,
    )


def class_record(cls: SubgroupClass) -> SubgroupRecord:
    return subgroup_record(cls.representative, cls.class_size)


def hall_report(analysis: HallAnalysis, group_name: str) -> HallReport:
    return HallReport(
        group=group_name,
        group_order=analysis.group.order,
        pi=str(analysis.pi),
        status=analysis.status.value,
        target_order=analysis.target_order,
        factorwise=analysis.factorwise,
        classes=[class_record(c) for c in analysis.classes],
    )


def witness_record(witness: FrattiniWitness, group_name: str) -> WitnessRecord:
    return WitnessRecord(
        group=group_name,
        pi=str(witness.pi),
        method=witness.method.value,
        normal_subgroup=subgroup_record(witness.A),
        hall=subgroup_record(witness.H),
        normalizer=subgroup_record(witness.normalizer),
        product_covers_G=witness.checks.product_covers_G,
        normalizer_in_E_pi=witness.checks.normalizer_in_E_pi,
        normalizer_hall_is_G_hall=witness.checks.normalizer_hall_is_G_hall,
        stable_class_count=len(witness.stable_classes),
        trace=[TraceRecord(kind=s.kind.value, depth=s.depth, detail=s.detail, orders=s.orders) for s in witness.trace],
    )


def remark1_report() -> Remark1Report:
    """
    GL(3,2) with its inverse-transpose involution: two Hall classes fused
    by the involution, and no {2,3}-Hall subgroup in the extension.
    """
    A_built, G_built, iota = gl32_with_duality()
    A, G = A_built.group, G_built.group
    pi = PrimeSet.of([2, 3])
    analysis = hall_classes(A, pi)
    H1 = A_built.named_subgroups["H1"]
    H2 = A_built.named_subgroups["H2"]

    fusing = conjugacy_witness(G, H1, H2)
    hall_in_g = subgroups_of_order(G, 48)

    inside = True
    for cls in analysis.classes:
        for H in conjugates(A, cls.representative):
            if not normalizer(G, H).group.is_subgroup_of(A):
                inside = False
    stable = sum(1 for c in analysis.classes if class_is_stable(G, A, c.representative))
    verdict, _ = e_pi_criterion(G, A, pi)

    report = Remark1Report(
        socle_order=A.order,
        group_order=G.order,
        iota=format_perm(iota),
        iota_is_involution=(iota * iota).is_Identity and not iota.is_Identity,
        iota_outside_socle=iota not in A,
        pi=str(pi),
        socle_hall_status=analysis.status.value,
        socle_hall_classes=[class_record(c) for c in analysis.classes],
        h1_h2_conjugate_in_socle=conjugacy_witness(A, H1, H2) is not None,
        fusing_element=format_perm(fusing) if fusing is not None else None,
        subgroups_of_hall_order=len(hall_in_g),
        group_in_E_pi=bool(hall_in_g),
        normalizers_inside_socle=inside,
        stable_socle_classes=stable,
        e_pi_criterion=verdict,
    )
    logger.info(f"Duality report: {len(analysis.classes)} socle classes, {len(hall_in_g)} subgroups of order 48")
    return report
