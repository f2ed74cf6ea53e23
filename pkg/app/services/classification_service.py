"""
Classification of Grassmannian cases: (co)minuscule detection and affine diagram selection
"""

import logging
from typing import List

from app.core.exceptions import InvalidNodeError
from app.lie.dynkin import (
    DynkinDiagram,
    affinize_twisted,
    affinize_untwisted,
    build_finite,
    cominuscule_nodes,
    minuscule_nodes,
)
from app.models.schemas import (
    CaseClass,
    CaseSpec,
    ClassificationResult,
    Family,
    NodeClassification,
)

logger = logging.getLogger(__name__)

TWISTED_FAMILIES = (Family.B, Family.C)


def _node_class(d: DynkinDiagram, m: int) -> CaseClass:
    if m in cominuscule_nodes(d):
        return CaseClass.COMINUSCULE
    if m in minuscule_nodes(d):
        return CaseClass.MINUSCULE_ONLY
    return CaseClass.NEITHER


def _affine_for(d: DynkinDiagram, case_class: CaseClass) -> DynkinDiagram:
    if case_class == CaseClass.MINUSCULE_ONLY:
        return affinize_twisted(d)
    return affinize_untwisted(d)


def classify_case(family, rank: int, m: int) -> CaseSpec:
    """Class of node m and the affine diagram its checks run on"""
    d = build_finite(family, rank)
    if m not in d.labels:
        raise InvalidNodeError(f"node {m} is not a node of {d.name}")
    case_class = _node_class(d, m)
    g = _affine_for(d, case_class)
    logger.debug("%s node %d classified as %s on %s", d.name, m, case_class.value, g.name)
    return CaseSpec(
        family=d.family,
        rank=d.rank,
        node=m,
        case_class=case_class,
        affine=g.kind,
        diagram=g.name,
    )


def case_diagram(case: CaseSpec) -> DynkinDiagram:
    """Affine diagram selected for a case"""
    return _affine_for(build_finite(case.family, case.rank), case.case_class)


def classify_diagram(family, rank: int) -> ClassificationResult:
    """Per-node classes plus the cominuscule and minuscule node sets of a finite type"""
    d = build_finite(family, rank)
    nodes: List[NodeClassification] = []
    for m in d.labels:
        case = classify_case(d.family, d.rank, m)
        nodes.append(
            NodeClassification(node=m, case_class=case.case_class, affine=case.affine, diagram=case.diagram)
        )
    twisted = affinize_twisted(d).name if d.family in TWISTED_FAMILIES else None
    return ClassificationResult(
        family=d.family,
        rank=d.rank,
        diagram=d.name,
        untwisted=affinize_untwisted(d).name,
        twisted=twisted,
        cominuscule=sorted(cominuscule_nodes(d)),
        minuscule=sorted(minuscule_nodes(d)),
        nodes=nodes,
    )
