"""
Dynkin diagrams: finite Cartan data, affine extensions and constrained isomorphisms

Cartan convention: C[i][j] = <alpha_j, alpha_i^vee>, so that the simple
reflection s_i sends alpha_j to alpha_j - C[i][j] alpha_i.  Node labels follow
the diagrams of the cominuscule tables (E6: chain 1-2-3-4-5 with 6 above 3,
E7: chain 1-...-6 with 7 above 3, E8: chain 1-...-7 with 8 above 3).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd, lcm
from typing import Dict, FrozenSet, List, Optional, Tuple

import networkx as nx
import numpy as np
from networkx.algorithms.isomorphism import DiGraphMatcher

from app.core.config import settings
from app.core.exceptions import (
    InvalidCartanTypeError,
    InvalidNodeError,
    InvariantViolation,
    UnsupportedFamilyError,
)
from app.models.schemas import DiagramKind, Family

logger = logging.getLogger(__name__)

NodeSet = FrozenSet[int]

DUAL_FAMILY = {
    Family.A: Family.A,
    Family.B: Family.C,
    Family.C: Family.B,
    Family.D: Family.D,
    Family.E: Family.E,
}
EXCEPTIONAL_RANKS = {Family.E: (6, 7, 8), Family.F: (4,), Family.G: (2,)}
MIN_RANK = {Family.A: 1, Family.B: 2, Family.C: 2, Family.D: 4}


@dataclass(frozen=True)
class DynkinDiagram:
    """Generalized Cartan matrix with node labels and a kind tag"""

    kind: DiagramKind
    labels: Tuple[int, ...]
    cartan: Tuple[Tuple[int, ...], ...]
    family: Optional[Family] = None
    rank: Optional[int] = None

    def __post_init__(self):
        size = len(self.labels)
        if len(set(self.labels)) != size:
            raise InvariantViolation(f"duplicate node labels {self.labels}")
        if len(self.cartan) != size or any(len(row) != size for row in self.cartan):
            raise InvariantViolation("Cartan matrix must be square and match the labels")
        for i in range(size):
            if self.cartan[i][i] != 2:
                raise InvariantViolation(f"diagonal entry at {self.labels[i]} is not 2")
            for j in range(size):
                if i == j:
                    continue
                if self.cartan[i][j] > 0:
                    raise InvariantViolation("off-diagonal Cartan entries must be <= 0")
                if (self.cartan[i][j] < 0) != (self.cartan[j][i] < 0):
                    raise InvariantViolation("Cartan zero pattern must be symmetric")

    # Structure
    @cached_property
    def matrix(self) -> np.ndarray:
        matrix = np.array(self.cartan, dtype=np.int64).reshape(len(self.labels), len(self.labels))
        matrix.setflags(write=False)
        return matrix

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def is_affine(self) -> bool:
        return self.kind != DiagramKind.FINITE

    @property
    def nodes(self) -> NodeSet:
        return frozenset(self.labels)

    @cached_property
    def finite_part(self) -> "DynkinDiagram":
        return self.delete(0) if self.is_affine else self

    @property
    def finite_labels(self) -> Tuple[int, ...]:
        return tuple(label for label in self.labels if not (self.is_affine and label == 0))

    def index(self, label: int) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise InvalidNodeError(f"node {label} is not a node of {self.name}") from None

    def entry(self, i: int, j: int) -> int:
        """Cartan entry addressed by node labels"""
        return self.cartan[self.index(i)][self.index(j)]

    @property
    def name(self) -> str:
        if self.family is None:
            return "sub(" + ",".join(str(label) for label in self.labels) + ")"
        if self.kind == DiagramKind.FINITE:
            return f"{self.family.value}{self.rank}"
        if self.kind == DiagramKind.UNTWISTED:
            return f"{self.family.value}(1)_{self.rank}"
        if self.family == Family.C:
            return f"A(2)_{2 * self.rank - 1}"
        return f"D(2)_{self.rank + 1}"

    # Derived diagrams
    def delete(self, label: int) -> "DynkinDiagram":
        """Sub-diagram on all nodes except ``label``"""
        position = self.index(label)
        keep = [k for k in range(self.size) if k != position]
        cartan = tuple(tuple(self.cartan[i][j] for j in keep) for i in keep)
        labels = tuple(self.labels[k] for k in keep)
        if self.is_affine and label == 0:
            return DynkinDiagram(DiagramKind.FINITE, labels, cartan, self.family, self.rank)
        return DynkinDiagram(DiagramKind.FINITE, labels, cartan)

    def transpose(self) -> "DynkinDiagram":
        """Diagram of the dual root system"""
        cartan = tuple(zip(*self.cartan))
        family = DUAL_FAMILY.get(self.family)
        return DynkinDiagram(self.kind, self.labels, cartan, family, self.rank if family else None)

    @cached_property
    def symmetrizer(self) -> Tuple[int, ...]:
        """Smallest positive integers d_i with diag(d) C symmetric, per component"""
        factors: Dict[int, Fraction] = {}
        for start in range(self.size):
            if start in factors:
                continue
            factors[start] = Fraction(1)
            stack = [start]
            component = [start]
            while stack:
                i = stack.pop()
                for j in range(self.size):
                    if j == i or self.cartan[i][j] == 0 or j in factors:
                        continue
                    factors[j] = factors[i] * Fraction(self.cartan[i][j], self.cartan[j][i])
                    stack.append(j)
                    component.append(j)
            scale = lcm(*(factors[k].denominator for k in component))
            values = [int(factors[k] * scale) for k in component]
            common = gcd(*values)
            for k, value in zip(component, values):
                factors[k] = Fraction(value // common)
        result = tuple(int(factors[k]) for k in range(self.size))
        form = np.diag(result) @ self.matrix
        if not np.array_equal(form, form.T):
            raise InvariantViolation(f"{self.name} is not symmetrizable")
        return result

    @cached_property
    def bilinear_form(self) -> np.ndarray:
        """Gram matrix (alpha_i, alpha_j) = d_i C[i][j]"""
        form = np.diag(self.symmetrizer).astype(np.int64) @ self.matrix
        form.setflags(write=False)
        return form

    def null_vector(self) -> Tuple[int, ...]:
        """Primitive positive integer vector spanning ker C (affine kinds only)"""
        if not self.is_affine:
            raise InvalidCartanTypeError(f"{self.name} is of finite type")
        # every affine kind handled here has a_0 = 1
        finite_part = self.matrix[1:, 1:].astype(float)
        solution = np.linalg.solve(finite_part, -self.matrix[1:, 0].astype(float))
        vector = (1,) + tuple(int(round(value)) for value in solution)
        if np.any(self.matrix @ np.array(vector, dtype=np.int64) != 0) or min(vector) <= 0:
            raise InvariantViolation(f"{self.name} has no positive null vector with a_0 = 1")
        return vector


def _validate_kind(diagram: DynkinDiagram) -> DynkinDiagram:
    rank = np.linalg.matrix_rank(diagram.matrix.astype(float))
    if diagram.kind == DiagramKind.FINITE and rank != diagram.size:
        raise InvariantViolation(f"{diagram.name} Cartan matrix is singular")
    if diagram.is_affine:
        if rank != diagram.size - 1:
            raise InvariantViolation(f"{diagram.name} Cartan matrix must have corank 1")
        diagram.null_vector()
    return diagram


def _chain(size: int) -> List[List[int]]:
    cartan = [[2 if i == j else 0 for j in range(size)] for i in range(size)]
    for i in range(size - 1):
        cartan[i][i + 1] = cartan[i + 1][i] = -1
    return cartan


def _link(cartan: List[List[int]], long: int, short: int, multiplicity: int) -> None:
    """Edge between 1-based nodes; the arrow points from the long root to the short one"""
    cartan[long - 1][short - 1] = -1
    cartan[short - 1][long - 1] = -multiplicity


def _branch(cartan: List[List[int]], first: int, second: int) -> None:
    for i, j in ((first, second), (second, first)):
        cartan[i - 1][j - 1] = -1


def _unlink(cartan: List[List[int]], first: int, second: int) -> None:
    cartan[first - 1][second - 1] = cartan[second - 1][first - 1] = 0


def build_finite(family, rank: int) -> DynkinDiagram:
    """Finite Dynkin diagram with nodes 1..n"""
    try:
        family = Family(family)
    except ValueError:
        raise InvalidCartanTypeError(f"unknown family {family!r}") from None
    if not isinstance(rank, int) or isinstance(rank, bool):
        raise InvalidCartanTypeError(f"rank must be an integer, got {rank!r}")
    if family in EXCEPTIONAL_RANKS:
        if rank not in EXCEPTIONAL_RANKS[family]:
            raise InvalidCartanTypeError(f"{family.value}{rank} is not a finite type")
    elif rank < MIN_RANK[family]:
        raise InvalidCartanTypeError(f"{family.value}{rank} is not a supported finite type")
    return _build_finite(family, rank)


@lru_cache(maxsize=None)
def _build_finite(family: Family, rank: int) -> DynkinDiagram:
    cartan = _chain(rank)
    if family == Family.B:
        _link(cartan, rank - 1, rank, 2)
    elif family == Family.C:
        _link(cartan, rank, rank - 1, 2)
    elif family == Family.D:
        _unlink(cartan, rank - 1, rank)
        _branch(cartan, rank - 2, rank)
    elif family == Family.E:
        _unlink(cartan, rank - 1, rank)
        _branch(cartan, 3, rank)
    elif family == Family.F:
        _link(cartan, 2, 3, 2)
    elif family == Family.G:
        _link(cartan, 2, 1, 3)
    labels = tuple(range(1, rank + 1))
    frozen = tuple(tuple(row) for row in cartan)
    return _validate_kind(DynkinDiagram(DiagramKind.FINITE, labels, frozen, family, rank))


def _extend(d: DynkinDiagram, extension: Tuple[int, ...], kind: DiagramKind) -> DynkinDiagram:
    """Prepend node 0 with alpha_0 acting as -extension on the finite part"""
    form = d.bilinear_form
    vector = np.array(extension, dtype=np.int64)
    pairings = vector @ form  # (extension, alpha_j)
    norm = int(vector @ form @ vector)
    size = d.size + 1
    cartan = [[0] * size for _ in range(size)]
    cartan[0][0] = 2
    for j in range(d.size):
        for i in range(d.size):
            cartan[i + 1][j + 1] = d.cartan[i][j]
        to_zero = Fraction(-2 * int(pairings[j]), norm)
        from_zero = Fraction(-2 * int(pairings[j]), int(form[j][j]))
        if to_zero.denominator != 1 or from_zero.denominator != 1:
            raise InvariantViolation(f"non-integral extended Cartan entry for {d.name}")
        cartan[0][j + 1] = int(to_zero)
        cartan[j + 1][0] = int(from_zero)
    labels = (0,) + d.labels
    frozen = tuple(tuple(row) for row in cartan)
    return _validate_kind(DynkinDiagram(kind, labels, frozen, d.family, d.rank))


def _require_named_finite(d: DynkinDiagram) -> None:
    if d.kind != DiagramKind.FINITE or d.family is None:
        raise InvalidCartanTypeError(f"{d.name} is not a named finite diagram")


@lru_cache(maxsize=None)
def affinize_untwisted(d: DynkinDiagram) -> DynkinDiagram:
    """Untwisted affine diagram: alpha_0 = delta - theta"""
    from app.lie.roots import highest_root

    _require_named_finite(d)
    return _extend(d, highest_root(d).coeffs, DiagramKind.UNTWISTED)


@lru_cache(maxsize=None)
def affinize_twisted(d: DynkinDiagram) -> DynkinDiagram:
    """Twisted affine diagram: A(2)_{2n-1} from C_n, D(2)_{n+1} from B_n; alpha_0 = delta - theta_0"""
    from app.lie.roots import highest_short_root

    _require_named_finite(d)
    if d.family not in (Family.B, Family.C):
        raise UnsupportedFamilyError(f"no twisted affinization of {d.name} is provided")
    return _extend(d, highest_short_root(d).coeffs, DiagramKind.TWISTED)


def cominuscule_nodes(d: DynkinDiagram) -> NodeSet:
    """Nodes whose coefficient in the highest root is 1"""
    from app.lie.roots import highest_root

    if d.is_affine:
        raise InvalidCartanTypeError(f"{d.name} is not of finite type")
    theta = highest_root(d)
    return frozenset(label for label, coeff in zip(d.labels, theta.coeffs) if coeff == 1)


def minuscule_nodes(d: DynkinDiagram) -> NodeSet:
    return cominuscule_nodes(d.transpose())


def _cartan_graph(d: DynkinDiagram, pinned: Optional[int]) -> nx.DiGraph:
    graph = nx.DiGraph()
    for label in d.labels:
        graph.add_node(label, pinned=(label == pinned))
    for i, source in enumerate(d.labels):
        for j, target in enumerate(d.labels):
            if i != j and d.cartan[i][j] != 0:
                graph.add_edge(source, target, entry=d.cartan[i][j])
    return graph


def _row_profile(d: DynkinDiagram) -> List[Tuple[int, ...]]:
    return sorted(tuple(sorted(row)) for row in d.cartan)


def diagram_isomorphism(
    d1: DynkinDiagram,
    d2: DynkinDiagram,
    pin: Optional[Tuple[int, int]] = None,
) -> Optional[Dict[int, int]]:
    """Label bijection sigma with C1[i][j] = C2[sigma(i)][sigma(j)], or None"""
    if d1.size != d2.size or _row_profile(d1) != _row_profile(d2):
        return None
    if d1.size > settings.ISOMORPHISM_MAX_NODES:
        raise InvalidNodeError(f"isomorphism search is limited to {settings.ISOMORPHISM_MAX_NODES} nodes")
    source_pin, target_pin = pin if pin is not None else (None, None)
    if pin is not None:
        d1.index(source_pin)
        d2.index(target_pin)

    matcher = DiGraphMatcher(
        _cartan_graph(d1, source_pin),
        _cartan_graph(d2, target_pin),
        node_match=lambda a, b: a["pinned"] == b["pinned"],
        edge_match=lambda a, b: a["entry"] == b["entry"],
    )
    mapping = next(matcher.isomorphisms_iter(), None)
    if mapping is None:
        logger.debug("no isomorphism %s -> %s with pin %s", d1.name, d2.name, pin)
        return None

    sigma = dict(sorted(mapping.items()))
    for i in d1.labels:
        for j in d1.labels:
            if d1.entry(i, j) != d2.entry(sigma[i], sigma[j]):
                raise InvariantViolation(f"bijection {sigma} breaks the Cartan entry at ({i}, {j})")
    if pin is not None and sigma[source_pin] != target_pin:
        raise InvariantViolation(f"bijection {sigma} ignores the pin {pin}")
    return sigma


def describe(d: DynkinDiagram) -> str:
    """One line per edge, the arrow pointing towards the short root"""
    lines = [f"{d.name} [{d.kind.value}] nodes: {' '.join(str(label) for label in d.labels)}"]
    for source, target, multiplicity in _edges(d):
        arrow = {1: "--", 2: "=>", 3: "=>>", 4: "<=>"}[multiplicity]
        lines.append(f"  {source} {arrow} {target}")
    return "\n".join(lines)


def to_dot(d: DynkinDiagram) -> str:
    """Graphviz rendering of the diagram"""
    lines = [f'digraph "{d.name}" {{']
    for label in d.labels:
        shape = "doublecircle" if d.is_affine and label == 0 else "circle"
        lines.append(f'  "{label}" [shape={shape}];')
    for source, target, multiplicity in _edges(d):
        if multiplicity == 1:
            lines.append(f'  "{source}" -> "{target}" [dir=none];')
        else:
            lines.append(f'  "{source}" -> "{target}" [label="{multiplicity}"];')
    lines.append("}")
    return "\n".join(lines)


def _edges(d: DynkinDiagram) -> List[Tuple[int, int, int]]:
    edges = []
    for i in range(d.size):
        for j in range(i + 1, d.size):
            if d.cartan[i][j] == 0:
                continue
            multiplicity = d.cartan[i][j] * d.cartan[j][i]
            # the long end has the entry of absolute value 1 in its row
            if abs(d.cartan[i][j]) <= abs(d.cartan[j][i]):
                edges.append((d.labels[i], d.labels[j], multiplicity))
            else:
                edges.append((d.labels[j], d.labels[i], multiplicity))
    return edges
