"""
Verification service: the lemma checks behind the compactification of T*X
"""

import logging
from collections import Counter
from functools import cached_property
from typing import Any, Callable, Dict, FrozenSet, Iterable, List, Optional

from app.core.exceptions import NotMinimalCosetRepError
from app.lie.dynkin import build_finite, diagram_isomorphism
from app.lie.roots import (
    AffineRoot,
    RootSet,
    coweight_pairing,
    delta,
    excess_root,
    is_real_root,
    nilradical_roots,
    parabolic_roots,
    reduce_mod_delta,
)
from app.lie.weyl import (
    WeylElement,
    coset_descents,
    format_word,
    is_bp,
    max_parabolic_quotient_rep,
    parabolic_decomposition,
    support,
)
from app.models.schemas import (
    LEMMA_ORDER,
    CaseClass,
    CaseSpec,
    DiagramKind,
    LemmaId,
    LemmaMetrics,
    LemmaReport,
    LengthTag,
    Verdict,
)
from app.services.classification_service import case_diagram

logger = logging.getLogger(__name__)

NON_SPLIT_NOTE = "non-split at weight level"
SCHUBERT_INDEX_NOTE = "Schubert variety indexed by y = w0 wm for the chosen node m, not w0 w1"


def _nodes(labels: Iterable[int]) -> List[int]:
    return sorted(labels)


class VerificationService:
    """Service class running the lemma checks of one (family, rank, node) case"""

    def __init__(self, case: CaseSpec):
        self.case = case
        self.m = case.node
        self.finite = build_finite(case.family, case.rank)
        self.g = case_diagram(case)
        self.S = self.g.nodes
        self.S0 = self.S - {0}
        self.Sm = self.S - {self.m}
        self.J = self.S - {0, self.m}

    # Weyl group data
    @cached_property
    def w0(self) -> WeylElement:
        return max_parabolic_quotient_rep(self.g, self.S0, self.J)

    @cached_property
    def wm(self) -> WeylElement:
        return max_parabolic_quotient_rep(self.g, self.Sm, self.J)

    @cached_property
    def y(self) -> WeylElement:
        return self.w0 * self.wm

    @cached_property
    def descents(self) -> Dict[str, FrozenSet[int]]:
        return {"w0": coset_descents(self.w0, self.J), "wm": coset_descents(self.wm, self.J)}

    # Root data
    @cached_property
    def u0(self) -> RootSet:
        return nilradical_roots(self.g, 0, self.m)

    @cached_property
    def um_minus(self) -> RootSet:
        return nilradical_roots(self.g, self.m, self.m, -1)

    @cached_property
    def p0(self) -> RootSet:
        return parabolic_roots(self.g, self.m)

    @property
    def _dim_x(self) -> Optional[int]:
        return None if self.case.case_class == CaseClass.NEITHER else len(self.u0)

    def _metrics(self) -> Optional[LemmaMetrics]:
        lengths = (self.w0.length, self.wm.length, self.y.length)
        if lengths[2] != lengths[0] + lengths[1]:
            return None
        return LemmaMetrics(dim_x=self._dim_x, length_w0=lengths[0], length_wm=lengths[1], length_y=lengths[2])

    def _report(
        self,
        lemma: LemmaId,
        verdict: Verdict,
        witness: Optional[Dict[str, Any]] = None,
        metrics: Optional[LemmaMetrics] = None,
        notes: Iterable[str] = (),
    ) -> LemmaReport:
        logger.debug(
            "%s%s m=%d %s: %s", self.case.family.value, self.case.rank, self.m, lemma.value, verdict.value
        )
        return LemmaReport(
            case=self.case,
            lemma=lemma,
            verdict=verdict,
            witness=witness,
            metrics=metrics,
            notes=list(notes),
        )

    def _is_root(self, root: AffineRoot) -> bool:
        return not root.is_zero and is_real_root(self.g, root)

    # Checks
    def check_diagram_iso(self) -> LemmaReport:
        """Diagram of S0 is isomorphic to the diagram of Sm with m sent to 0"""
        source = self.g.delete(0)
        target = self.g.delete(self.m)
        sigma = diagram_isomorphism(source, target, pin=(self.m, 0))
        if sigma is None:
            witness = {
                "reason": "no Cartan-preserving bijection",
                "pin": f"{self.m}->0",
                "source": source.name,
                "target": target.name,
            }
            return self._report(LemmaId.ISO, Verdict.FAIL, witness)
        bijection = {str(node): image for node, image in sigma.items()}
        return self._report(LemmaId.ISO, Verdict.PASS, {"bijection": bijection})

    def check_bp(self) -> LemmaReport:
        """y = w0 wm is a BP decomposition with respect to Sm and D^J(y) = S0"""
        words = {"w0": format_word(self.w0), "wm": format_word(self.wm), "y": format_word(self.y)}
        notes = [SCHUBERT_INDEX_NOTE] if self.g.kind == DiagramKind.TWISTED else []
        try:
            decomposition = parabolic_decomposition(self.y, self.Sm, self.J)
        except NotMinimalCosetRepError:
            witness = dict(words, reason="y has a right descent in J")
            return self._report(LemmaId.BP, Verdict.FAIL, witness, self._metrics(), notes)

        failed = self._maximality_failures()
        words.update(
            descents_w0=_nodes(self.descents["w0"]),
            descents_wm=_nodes(self.descents["wm"]),
        )
        if decomposition.v != self.w0 or decomposition.u != self.wm:
            failed.append("parabolic decomposition is not (w0, wm)")
        if not is_bp(self.y, self.Sm, self.J):
            failed.append("supp(v) & Sm is not contained in D^J(u)")
        descents = coset_descents(self.y, self.J)
        if descents != self.S0:
            failed.append(f"D^J(y) = {_nodes(descents)} differs from S0 = {_nodes(self.S0)}")

        metrics = self._metrics()
        if metrics is None:
            failed.append("l(y) != l(w0) + l(wm)")
        if failed:
            return self._report(LemmaId.BP, Verdict.FAIL, dict(words, failed=failed), metrics, notes)
        return self._report(LemmaId.BP, Verdict.PASS, words, metrics, notes)

    def _maximality_failures(self) -> List[str]:
        """w0 and wm are maximal in their quotients: D^J(w0) = S0, D^J(wm) = Sm, supp(w0) & Sm = J"""
        failed = []
        for name, expected in (("w0", self.S0), ("wm", self.Sm)):
            found = self.descents[name]
            if found != expected:
                failed.append(f"D^J({name}) = {_nodes(found)} differs from {_nodes(expected)}")
        overlap = support(self.w0) & self.Sm
        if overlap != self.J:
            failed.append(f"supp(w0) & Sm = {_nodes(overlap)} differs from J = {_nodes(self.J)}")
        return failed

    def _not_applicable(self, lemma: LemmaId) -> LemmaReport:
        root = excess_root(self.finite, self.m)
        witness = None
        if root is not None:
            witness = {"root": str(root.embed(self.g.labels)), "coefficient": root.coefficient(self.m)}
        note = f"node {self.m} is {self.case.case_class.value}"
        return self._report(lemma, Verdict.NOT_APPLICABLE, witness, notes=[note])

    def check_phi_bijection(self) -> LemmaReport:
        """alpha -> alpha - delta maps R(u0) onto R(um-) compatibly with R(p0)"""
        if self.case.case_class != CaseClass.COMINUSCULE:
            return self._not_applicable(LemmaId.PHI)

        step = delta(self.g)
        image = {(alpha - step).coeffs for alpha in self.u0}
        if image != self.um_minus.vectors:
            witness = {
                "missing": [str(AffineRoot(self.g.labels, v)) for v in sorted(self.um_minus.vectors - image)],
                "unexpected": [str(AffineRoot(self.g.labels, v)) for v in sorted(image - self.um_minus.vectors)],
            }
            return self._report(LemmaId.PHI, Verdict.FAIL, witness)

        pairs = 0
        for alpha in self.u0:
            shifted = alpha - step
            for beta in self.p0:
                total = alpha + beta
                moved = shifted + beta
                if self._is_root(total) != self._is_root(moved):
                    witness = {"alpha": str(alpha), "beta": str(beta), "reason": "shift does not commute with p0"}
                    return self._report(LemmaId.PHI, Verdict.FAIL, witness)
                if not self._is_root(total):
                    continue
                if total not in self.u0 or moved not in self.um_minus:
                    witness = {"alpha": str(alpha), "beta": str(beta), "reason": "nilradical not p0-stable"}
                    return self._report(LemmaId.PHI, Verdict.FAIL, witness)
                pairs += 1
        notes = [f"{len(self.u0)} roots shifted by -delta", f"{pairs} root sums with R(p0) checked"]
        return self._report(LemmaId.PHI, Verdict.PASS, notes=notes)

    def check_twisted_split(self) -> LemmaReport:
        """R(um-) splits into short and long p0-stable parts while R(u0) does not"""
        if self.case.case_class != CaseClass.MINUSCULE_ONLY:
            return self._report(
                LemmaId.SPLIT,
                Verdict.NOT_APPLICABLE,
                notes=["splitting is checked on minuscule-only cases only"],
            )

        expected = {-1: LengthTag.SHORT, -2: LengthTag.LONG}
        parts: Dict[int, List[AffineRoot]] = {-1: [], -2: []}
        for root in self.um_minus:
            level = root.coefficient(0)
            if expected.get(level) != root.length:
                witness = {"root": str(root), "a0": level, "length": root.length.value if root.length else None}
                return self._report(LemmaId.SPLIT, Verdict.FAIL, witness)
            parts[level].append(root)

        for level, part in parts.items():
            members = {root.coeffs for root in part}
            for alpha in part:
                for beta in self.p0:
                    total = alpha + beta
                    if self._is_root(total) and total.coeffs not in members:
                        witness = {"alpha": str(alpha), "beta": str(beta), "sum": str(total), "a0": level}
                        return self._report(LemmaId.SPLIT, Verdict.FAIL, witness)

        for alpha in self.u0.with_length(LengthTag.SHORT):
            for beta in self.p0:
                total = self.u0.lookup(alpha + beta)
                if total is not None and total.length == LengthTag.LONG:
                    witness = {
                        "alpha": str(alpha),
                        "beta": str(beta),
                        "sum": str(total),
                        "short_part": len(parts[-1]),
                        "long_part": len(parts[-2]),
                    }
                    return self._report(LemmaId.SPLIT, Verdict.PASS, witness, notes=[NON_SPLIT_NOTE])

        witness = {"reason": "no short root of R(u0) reaches a long root under R(p0)"}
        return self._report(LemmaId.SPLIT, Verdict.FAIL, witness)

    def check_weight_agreement_and_attractivity(self) -> LemmaReport:
        """Same weights modulo delta, and every weight pairs positively with omega_m"""
        if self.case.case_class == CaseClass.NEITHER:
            return self._not_applicable(LemmaId.WEIGHTS)

        def weights(roots: RootSet) -> Counter:
            return Counter(reduce_mod_delta(self.g, root)[0].coeffs for root in roots)

        top, bottom = weights(self.u0), weights(self.um_minus)
        if top != bottom:
            witness = {
                "only_in_u0": [str(AffineRoot(self.finite.labels, v)) for v in sorted((top - bottom).elements())],
                "only_in_um": [str(AffineRoot(self.finite.labels, v)) for v in sorted((bottom - top).elements())],
            }
            return self._report(LemmaId.WEIGHTS, Verdict.FAIL, witness)

        for root in list(self.u0) + list(self.um_minus):
            pairing = coweight_pairing(self.g, root, self.m)
            if pairing <= 0:
                return self._report(LemmaId.WEIGHTS, Verdict.FAIL, {"root": str(root), "pairing": pairing})

        imaginary = coweight_pairing(self.g, delta(self.g), self.m)
        if imaginary != 0:
            return self._report(LemmaId.WEIGHTS, Verdict.FAIL, {"root": str(delta(self.g)), "pairing": imaginary})
        return self._report(LemmaId.WEIGHTS, Verdict.PASS, notes=[f"{sum(top.values())} weights agree"])

    def dimension_report(self) -> LemmaReport:
        """l(w0) = l(wm) = dim X and l(y) = 2 dim X"""
        if self.case.case_class != CaseClass.COMINUSCULE:
            return self._not_applicable(LemmaId.DIMENSION)
        dim_x = len(self.u0)
        metrics = self._metrics()
        lengths = {"w0": self.w0.length, "wm": self.wm.length, "y": self.y.length}
        if metrics is None or not (lengths["w0"] == lengths["wm"] == dim_x and lengths["y"] == 2 * dim_x):
            return self._report(LemmaId.DIMENSION, Verdict.FAIL, dict(lengths, dim_x=dim_x), metrics)
        return self._report(LemmaId.DIMENSION, Verdict.PASS, metrics=metrics)

    # Driver
    @property
    def checks(self) -> Dict[LemmaId, Callable[[], LemmaReport]]:
        return {
            LemmaId.ISO: self.check_diagram_iso,
            LemmaId.BP: self.check_bp,
            LemmaId.PHI: self.check_phi_bijection,
            LemmaId.SPLIT: self.check_twisted_split,
            LemmaId.WEIGHTS: self.check_weight_agreement_and_attractivity,
            LemmaId.DIMENSION: self.dimension_report,
        }

    def run(self, lemmas: Optional[Iterable[LemmaId]] = None) -> List[LemmaReport]:
        """Run the requested checks (all by default) in lemma order"""
        selected = sorted(set(lemmas) if lemmas is not None else set(LemmaId), key=LEMMA_ORDER.get)
        return [self.checks[lemma]() for lemma in selected]
