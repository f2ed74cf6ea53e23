"""
Sweep service: every cominuscule and minuscule-only case up to a rank, plus negative controls
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Tuple

from app.core.config import settings
from app.core.exceptions import InvalidSweepError
from app.lie.dynkin import EXCEPTIONAL_RANKS, MIN_RANK
from app.models.schemas import CaseClass, CaseSpec, Family, LemmaId, LemmaReport
from app.services.classification_service import classify_case
from app.services.verification_service import VerificationService

logger = logging.getLogger(__name__)

LEMMA_PLAN = {
    CaseClass.COMINUSCULE: (LemmaId.ISO, LemmaId.BP, LemmaId.PHI, LemmaId.WEIGHTS, LemmaId.DIMENSION),
    CaseClass.MINUSCULE_ONLY: (LemmaId.ISO, LemmaId.BP, LemmaId.SPLIT, LemmaId.WEIGHTS),
    CaseClass.NEITHER: (LemmaId.BP, LemmaId.PHI),
}


def _ranks(family: Family, max_rank: int) -> List[int]:
    if family in EXCEPTIONAL_RANKS:
        return [rank for rank in EXCEPTIONAL_RANKS[family] if rank <= max_rank]
    return list(range(MIN_RANK[family], max_rank + 1))


def sweep_cases(max_rank: int) -> List[CaseSpec]:
    """Cases of a sweep in (family, rank, node) order"""
    if not isinstance(max_rank, int) or not 1 <= max_rank <= settings.MAX_SWEEP_RANK:
        raise InvalidSweepError(f"max rank must lie in [1, {settings.MAX_SWEEP_RANK}], got {max_rank!r}")
    cases = []
    for family in Family:
        for rank in _ranks(family, max_rank):
            for node in range(1, rank + 1):
                case = classify_case(family, rank, node)
                if case.case_class == CaseClass.NEITHER and rank > settings.NEGATIVE_CONTROL_MAX_RANK:
                    continue
                cases.append(case)
    return sorted(cases, key=lambda case: case.sort_key)


def plan_lemmas(case: CaseSpec) -> Tuple[LemmaId, ...]:
    return LEMMA_PLAN[case.case_class]


def run_case(case: CaseSpec) -> List[LemmaReport]:
    logger.info("verifying %s node %d (%s, %s)", case.diagram, case.node, case.case_class.value, case.affine.value)
    return VerificationService(case).run(plan_lemmas(case))


def run_sweep(max_rank: int, workers: Optional[int] = None) -> List[LemmaReport]:
    """Verify every planned case; output order does not depend on the worker count"""
    cases = sweep_cases(max_rank)
    workers = settings.SWEEP_MAX_WORKERS if workers is None else workers
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(run_case, cases))
    else:
        batches = [run_case(case) for case in cases]
    reports = [report for batch in batches for report in batch]
    logger.info("sweep up to rank %d: %d cases, %d checks", max_rank, len(cases), len(reports))
    return sorted(reports, key=lambda report: report.sort_key)
