"""
Weyl groups of finite and affine diagrams acting on the root lattice

Elements are stored as integer matrices on coefficient vectors; reduced words
are recovered by stripping the smallest-labelled right descent.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, List, Tuple

import numpy as np

from app.core.exceptions import (
    InfiniteParabolicError,
    InvalidNodeError,
    InvariantViolation,
    NotMinimalCosetRepError,
)
from app.lie.dynkin import DynkinDiagram, NodeSet
from app.lie.roots import AffineRoot

logger = logging.getLogger(__name__)

Word = Tuple[int, ...]


def _freeze(matrix: np.ndarray) -> np.ndarray:
    matrix = np.ascontiguousarray(matrix, dtype=np.int64)
    matrix.setflags(write=False)
    return matrix


def _is_negative(column: np.ndarray) -> bool:
    return bool(np.all(column <= 0)) and bool(np.any(column < 0))


def _label_order(d: DynkinDiagram) -> List[int]:
    return sorted(range(d.size), key=lambda k: d.labels[k])


@dataclass(frozen=True, eq=False)
class WeylElement:
    """Root-lattice matrix of a Weyl group element; column i is w(alpha_i)"""

    diagram: DynkinDiagram
    matrix: np.ndarray

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.diagram.labels == other.diagram.labels and np.array_equal(self.matrix, other.matrix)

    def __hash__(self) -> int:
        return hash((self.diagram.labels, self.matrix.tobytes()))

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        if other.diagram != self.diagram:
            raise InvalidNodeError("cannot multiply elements of different Weyl groups")
        return WeylElement(self.diagram, _freeze(self.matrix @ other.matrix))

    def __repr__(self) -> str:
        return f"WeylElement({self.diagram.name}, [{format_word(self)}])"

    @cached_property
    def reduced_word(self) -> Word:
        d = self.diagram
        order = _label_order(d)
        cartan = d.matrix
        current = np.array(self.matrix, dtype=np.int64)
        stripped: List[int] = []
        while True:
            for k in order:
                if _is_negative(current[:, k]):
                    # w -> w s_k subtracts column k times row k of C
                    current = current - np.outer(current[:, k], cartan[k])
                    stripped.append(d.labels[k])
                    break
            else:
                break
        if not np.array_equal(current, np.eye(d.size, dtype=np.int64)):
            raise InvariantViolation(f"descent stripping of {self.diagram.name} element did not reach e")
        return tuple(reversed(stripped))

    @property
    def length(self) -> int:
        return len(self.reduced_word)

    def inverse(self) -> "WeylElement":
        return from_word(self.diagram, tuple(reversed(self.reduced_word)))

    def right_descents(self) -> NodeSet:
        """{i : w(alpha_i) < 0}"""
        return frozenset(
            label for k, label in enumerate(self.diagram.labels) if _is_negative(self.matrix[:, k])
        )

    def left_descents(self) -> NodeSet:
        """{i : w^-1(alpha_i) < 0}"""
        return self.inverse().right_descents()

    def is_identity(self) -> bool:
        return np.array_equal(self.matrix, np.eye(self.diagram.size, dtype=np.int64))


def identity(g: DynkinDiagram) -> WeylElement:
    return WeylElement(g, _freeze(np.eye(g.size, dtype=np.int64)))


def simple_reflection(g: DynkinDiagram, i: int) -> WeylElement:
    """s_i(v) = v - (Cv)_i e_i"""
    k = g.index(i)
    matrix = np.eye(g.size, dtype=np.int64)
    matrix[k] -= g.matrix[k]
    return WeylElement(g, _freeze(matrix))


def from_word(g: DynkinDiagram, word: Iterable[int]) -> WeylElement:
    element = identity(g)
    for label in word:
        element = element * simple_reflection(g, label)
    return element


def multiply(left: WeylElement, right: WeylElement) -> WeylElement:
    return left * right


def inverse(w: WeylElement) -> WeylElement:
    return w.inverse()


def length(w: WeylElement) -> int:
    return w.length


def left_descents(w: WeylElement) -> NodeSet:
    return w.left_descents()


def right_descents(w: WeylElement) -> NodeSet:
    return w.right_descents()


def act_on_root(w: WeylElement, root: AffineRoot) -> AffineRoot:
    if root.labels != w.diagram.labels:
        root = root.embed(w.diagram.labels)
    image = w.matrix @ np.array(root.coeffs, dtype=np.int64)
    return AffineRoot(root.labels, tuple(int(a) for a in image), root.length)


def format_word(w: WeylElement) -> str:
    """Reduced word as space-separated node labels"""
    return " ".join(str(label) for label in w.reduced_word)


def node_set(g: DynkinDiagram, nodes: Iterable[int]) -> NodeSet:
    result = frozenset(nodes)
    for label in result:
        g.index(label)
    return result


# Parabolic machinery
def min_coset_rep(w: WeylElement, subset: Iterable[int]) -> WeylElement:
    """Shortest element of w W_I, by stripping right descents lying in I"""
    g = w.diagram
    positions = [k for k in _label_order(g) if g.labels[k] in node_set(g, subset)]
    cartan = g.matrix
    current = np.array(w.matrix, dtype=np.int64)
    while True:
        for k in positions:
            if _is_negative(current[:, k]):
                current = current - np.outer(current[:, k], cartan[k])
                break
        else:
            return WeylElement(g, _freeze(current))


def is_minimal(w: WeylElement, subset: Iterable[int]) -> bool:
    """w lies in W^I"""
    return not (w.right_descents() & node_set(w.diagram, subset))


def longest_element(g: DynkinDiagram, subset: Iterable[int]) -> WeylElement:
    """Longest element of the finite parabolic subgroup W_K, by climbing ascents in K"""
    nodes = node_set(g, subset)
    if g.is_affine and nodes == g.nodes:
        raise InfiniteParabolicError(f"W_K is infinite for K = all nodes of {g.name}")
    positions = [k for k in _label_order(g) if g.labels[k] in nodes]
    cartan = g.matrix
    current = np.eye(g.size, dtype=np.int64)
    while True:
        for k in positions:
            if not _is_negative(current[:, k]):
                current = current - np.outer(current[:, k], cartan[k])
                break
        else:
            longest = WeylElement(g, _freeze(current))
            logger.debug("longest element of W_K, K = %s in %s: length %d", sorted(nodes), g.name, longest.length)
            return longest


def max_parabolic_quotient_rep(g: DynkinDiagram, subset: Iterable[int], quotient: Iterable[int]) -> WeylElement:
    """Maximal element of W_K^I: min_coset_rep(longest(W_K), I)"""
    nodes = node_set(g, subset)
    quotient_nodes = node_set(g, quotient)
    if not quotient_nodes <= nodes:
        raise InvalidNodeError(f"I = {sorted(quotient_nodes)} is not contained in K = {sorted(nodes)}")
    return min_coset_rep(longest_element(g, nodes), quotient_nodes)


def coset_descents(u: WeylElement, subset: Iterable[int]) -> NodeSet:
    """
    D^I(u) for u in W^I.

    For every simple s exactly one of: su < u (descent), su > u with su in W^I
    (not a descent), su in u W_I (descent).
    """
    g = u.diagram
    nodes = node_set(g, subset)
    if not is_minimal(u, nodes):
        raise NotMinimalCosetRepError(f"[{format_word(u)}] has a right descent in {sorted(nodes)}")
    lowered = u.left_descents()
    descents = set(lowered)
    for label in g.labels:
        if label in lowered:
            continue
        if not is_minimal(simple_reflection(g, label) * u, nodes):
            descents.add(label)
    return frozenset(descents)


def support(w: WeylElement) -> NodeSet:
    return frozenset(w.reduced_word)


@dataclass(frozen=True)
class ParabolicDecomposition:
    """w = v u with v in W^K and u in W_K^I"""

    v: WeylElement
    u: WeylElement
    parabolic: NodeSet
    quotient: NodeSet

    @property
    def product(self) -> WeylElement:
        return self.v * self.u


def parabolic_decomposition(
    w: WeylElement, subset: Iterable[int], quotient: Iterable[int] = ()
) -> ParabolicDecomposition:
    g = w.diagram
    nodes = node_set(g, subset)
    quotient_nodes = node_set(g, quotient)
    if not is_minimal(w, quotient_nodes):
        raise NotMinimalCosetRepError(f"[{format_word(w)}] is not in W^I for I = {sorted(quotient_nodes)}")
    v = min_coset_rep(w, nodes)
    u = v.inverse() * w
    if v.length + u.length != w.length:
        raise InvariantViolation(
            f"parabolic decomposition of [{format_word(w)}] is not length additive: "
            f"{v.length} + {u.length} != {w.length}"
        )
    return ParabolicDecomposition(v, u, nodes, quotient_nodes)


def is_bp(w: WeylElement, subset: Iterable[int], quotient: Iterable[int] = ()) -> bool:
    """Billey-Postnikov criterion supp(v) & K <= D^I(u)"""
    decomposition = parabolic_decomposition(w, subset, quotient)
    lowered = coset_descents(decomposition.u, decomposition.quotient)
    return support(decomposition.v) & decomposition.parabolic <= lowered
