"""
Brute-force oracle for small finite Weyl groups

Elements are enumerated breadth-first from the identity; every derived table
(left multiplication, inverses, Bruhat intervals, coset minima) is computed
from the BFS words alone, independently of the descent-stripping engine.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Tuple

import networkx as nx
import numpy as np

from app.core.config import settings
from app.core.exceptions import (
    EnumerationTooLargeError,
    InvalidCartanTypeError,
    LieEngineError,
    OracleMismatchError,
)
from app.lie.dynkin import DynkinDiagram
from app.lie.roots import positive_roots
from app.lie.weyl import (
    WeylElement,
    coset_descents,
    identity,
    is_bp,
    longest_element,
    min_coset_rep,
    simple_reflection,
)
from app.models.schemas import OracleReport

logger = logging.getLogger(__name__)


@dataclass
class EnumeratedGroup:
    """Complete element list of a finite Weyl group with BFS words and lengths"""

    diagram: DynkinDiagram
    elements: List[WeylElement]
    words: List[Tuple[int, ...]]
    right: np.ndarray  # right[k, i] = index of elements[k] * s_i
    index: Dict[WeylElement, int]
    _intervals: Dict[int, FrozenSet[int]] = field(default_factory=dict, repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def lengths(self) -> List[int]:
        return [len(word) for word in self.words]

    def position(self, w: WeylElement) -> int:
        try:
            return self.index[w]
        except KeyError:
            raise LieEngineError(f"{w!r} is not an element of W({self.diagram.name})") from None

    def apply_word(self, start: int, word: Iterable[int]) -> int:
        current = start
        for label in word:
            current = int(self.right[current, self.diagram.index(label)])
        return current

    def product(self, left: int, right: int) -> int:
        return self.apply_word(left, self.words[right])

    def inverse(self, k: int) -> int:
        return self.apply_word(0, reversed(self.words[k]))

    def left_multiply(self, label: int, k: int) -> int:
        return self.apply_word(0, (label,) + self.words[k])

    def generator(self, label: int) -> int:
        return int(self.right[0, self.diagram.index(label)])

    def lower_interval(self, k: int) -> FrozenSet[int]:
        """Bruhat interval [e, w]: products of all subwords of one reduced word of w"""
        if k not in self._intervals:
            reached = {0}
            for label in self.words[k]:
                column = self.diagram.index(label)
                reached |= {int(self.right[x, column]) for x in reached}
            self._intervals[k] = frozenset(reached)
        return self._intervals[k]

    def coset_minima(self, subset: Iterable[int]) -> List[int]:
        """Minimum of the coset w W_I for every element, via components of right multiplication"""
        columns = [self.diagram.index(label) for label in subset]
        graph = nx.Graph()
        graph.add_nodes_from(range(self.order))
        graph.add_edges_from((k, int(self.right[k, column])) for k in range(self.order) for column in columns)
        minima = [0] * self.order
        for component in nx.connected_components(graph):
            lowest = min(component, key=lambda x: (len(self.words[x]), x))
            for member in component:
                minima[member] = lowest
        return minima


def enumerate_group(d: DynkinDiagram) -> EnumeratedGroup:
    """BFS over right multiplication by simple reflections, deduplicating by matrix"""
    if d.is_affine:
        raise InvalidCartanTypeError(f"{d.name} has an infinite Weyl group")
    limit = settings.ORACLE_MAX_GROUP_ORDER
    generators = [simple_reflection(d, label) for label in d.labels]
    start = identity(d)
    elements = [start]
    words: List[Tuple[int, ...]] = [()]
    index = {start: 0}
    edges: List[List[int]] = []
    position = 0
    while position < len(elements):
        current = elements[position]
        row = []
        for label, generator in zip(d.labels, generators):
            image = current * generator
            if image not in index:
                if len(elements) >= limit:
                    raise EnumerationTooLargeError(f"W({d.name}) has more than {limit} elements")
                index[image] = len(elements)
                elements.append(image)
                words.append(words[position] + (label,))
            row.append(index[image])
        edges.append(row)
        position += 1
    logger.info("enumerated W(%s): %d elements", d.name, len(elements))
    return EnumeratedGroup(d, elements, words, np.array(edges, dtype=np.int64), index)


def bruhat_leq(u: WeylElement, w: WeylElement, group: EnumeratedGroup) -> bool:
    return group.position(u) in group.lower_interval(group.position(w))


def inversion_count(w: WeylElement) -> int:
    """|{alpha in R+ : w(alpha) < 0}|"""
    roots = np.array([root.coeffs for root in positive_roots(w.diagram)], dtype=np.int64).T
    images = w.matrix @ roots
    return int(np.sum(np.all(images <= 0, axis=0)))


def _subsets(labels: Iterable[int]) -> List[FrozenSet[int]]:
    labels = sorted(labels)
    return [frozenset(chosen) for size in range(len(labels) + 1) for chosen in combinations(labels, size)]


def _show(group: EnumeratedGroup, k: int) -> str:
    return "[" + " ".join(str(label) for label in group.words[k]) + "]"


def _oracle_descents(group: EnumeratedGroup, u: int, minima: List[int]) -> FrozenSet[int]:
    """{s : min(s u W_I) <= u} read off the Bruhat intervals"""
    below = group.lower_interval(u)
    return frozenset(
        label for label in group.diagram.labels if minima[group.left_multiply(label, u)] in below
    )


def _check_lengths(group: EnumeratedGroup) -> int:
    for k, w in enumerate(group.elements):
        depth = len(group.words[k])
        if not (w.length == depth == inversion_count(w)):
            raise OracleMismatchError(
                "lengths",
                f"{_show(group, k)}: engine {w.length}, BFS {depth}, inversions {inversion_count(w)}",
            )
    return group.order


def _check_longest(group: EnumeratedGroup) -> int:
    top = max(range(group.order), key=lambda k: len(group.words[k]))
    engine = longest_element(group.diagram, group.diagram.labels)
    if engine != group.elements[top]:
        raise OracleMismatchError("longest", f"engine {engine!r}, oracle {_show(group, top)}")
    return 1


def _check_cosets(group: EnumeratedGroup) -> Tuple[int, int]:
    representatives = descents = 0
    for subset in _subsets(group.diagram.labels):
        minima = group.coset_minima(subset)
        for k, w in enumerate(group.elements):
            engine = min_coset_rep(w, subset)
            if engine != group.elements[minima[k]]:
                raise OracleMismatchError(
                    "min_coset_rep",
                    f"w={_show(group, k)}, I={sorted(subset)}: engine {engine!r}, oracle {_show(group, minima[k])}",
                )
            representatives += 1
            if minima[k] != k:
                continue
            expected = _oracle_descents(group, k, minima)
            found = coset_descents(w, subset)
            if found != expected:
                raise OracleMismatchError(
                    "coset_descents",
                    f"u={_show(group, k)}, I={sorted(subset)}: engine {sorted(found)}, oracle {sorted(expected)}",
                )
            descents += 1
    return representatives, descents


def _check_bp(group: EnumeratedGroup) -> int:
    labels = group.diagram.labels
    generators = {label: group.generator(label) for label in labels}
    checked = 0
    for parabolic in _subsets(labels):
        parabolic_minima = group.coset_minima(parabolic)
        for quotient in _subsets(parabolic):
            minima = group.coset_minima(quotient)
            for k, w in enumerate(group.elements):
                if minima[k] != k:
                    continue
                v = parabolic_minima[k]
                u = group.product(group.inverse(v), k)
                support = {label for label, s in generators.items() if s in group.lower_interval(v)}
                expected = support & parabolic <= _oracle_descents(group, u, minima)
                if is_bp(w, parabolic, quotient) != expected:
                    raise OracleMismatchError(
                        "is_bp",
                        f"w={_show(group, k)}, K={sorted(parabolic)}, I={sorted(quotient)}: oracle says {expected}",
                    )
                checked += 1
    return checked


def cross_check(d: DynkinDiagram) -> OracleReport:
    """Compare the matrix engine with brute force on every element, coset and BP triple"""
    if d.name not in settings.ORACLE_TYPES:
        raise InvalidCartanTypeError(f"oracle cross-check is limited to {', '.join(settings.ORACLE_TYPES)}")
    group = enumerate_group(d)
    checks: Dict[str, int] = {}
    checks["lengths"] = _check_lengths(group)
    checks["longest"] = _check_longest(group)
    checks["min_coset_rep"], checks["coset_descents"] = _check_cosets(group)
    checks["is_bp"] = _check_bp(group)
    logger.info("oracle agrees with the engine on %s: %s", d.name, checks)
    return OracleReport(
        diagram=d.name,
        group_order=group.order,
        longest_length=max(group.lengths),
        checks=checks,
    )
