"""
Root systems: closure enumeration, highest (short) roots, affine real roots and
the nilradical / parabolic weight sets of the Grassmannian cases

Affine roots are stored in the alpha_0..alpha_n basis; the (alpha_bar, k)
presentation alpha_bar + k*delta is derived by reducing modulo delta.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, Optional, Tuple

import numpy as np

from app.core.config import settings
from app.core.exceptions import InvalidCartanTypeError, InvalidNodeError, InvariantViolation
from app.lie.dynkin import DynkinDiagram
from app.models.schemas import DiagramKind, LengthTag, RootSetKind

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]

# a simple reflection orbit this large means the diagram is not of finite type
MAX_CLOSURE_SIZE = 1000


@dataclass(frozen=True)
class AffineRoot:
    """Integer coefficient vector over the diagram's simple roots"""

    labels: Tuple[int, ...]
    coeffs: Vector
    length: Optional[LengthTag] = field(default=None, compare=False)

    def coefficient(self, label: int) -> int:
        try:
            return self.coeffs[self.labels.index(label)]
        except ValueError:
            raise InvalidNodeError(f"root has no coefficient for node {label}") from None

    @property
    def height(self) -> int:
        return sum(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def is_positive(self) -> bool:
        return not self.is_zero and min(self.coeffs) >= 0

    @property
    def is_negative(self) -> bool:
        return not self.is_zero and max(self.coeffs) <= 0

    @property
    def sort_key(self):
        return (self.height, self.coeffs)

    def _combine(self, other: "AffineRoot", sign: int) -> "AffineRoot":
        if other.labels != self.labels:
            raise InvalidNodeError("roots live on different node sets")
        return AffineRoot(self.labels, tuple(a + sign * b for a, b in zip(self.coeffs, other.coeffs)))

    def __add__(self, other: "AffineRoot") -> "AffineRoot":
        return self._combine(other, 1)

    def __sub__(self, other: "AffineRoot") -> "AffineRoot":
        return self._combine(other, -1)

    def __neg__(self) -> "AffineRoot":
        return AffineRoot(self.labels, tuple(-a for a in self.coeffs), self.length)

    def scaled(self, factor: int) -> "AffineRoot":
        return AffineRoot(self.labels, tuple(factor * a for a in self.coeffs))

    def tagged(self, length: Optional[LengthTag]) -> "AffineRoot":
        return AffineRoot(self.labels, self.coeffs, length)

    def embed(self, labels: Tuple[int, ...]) -> "AffineRoot":
        """Same root over a larger node set, zero on the new nodes"""
        values = dict(zip(self.labels, self.coeffs))
        if not set(values) <= set(labels):
            raise InvalidNodeError(f"cannot embed {self} into nodes {labels}")
        return AffineRoot(labels, tuple(values.get(label, 0) for label in labels), self.length)

    def __str__(self) -> str:
        return "[" + ",".join(str(a) for a in self.coeffs) + "]"


@dataclass(frozen=True)
class RootSet:
    """Finite set of roots with a provenance tag"""

    kind: RootSetKind
    roots: Tuple[AffineRoot, ...]

    def __iter__(self) -> Iterator[AffineRoot]:
        return iter(self.roots)

    def __len__(self) -> int:
        return len(self.roots)

    def __contains__(self, root: AffineRoot) -> bool:
        return root.coeffs in self.vectors

    @cached_property
    def vectors(self) -> FrozenSet[Vector]:
        return frozenset(root.coeffs for root in self.roots)

    def lookup(self, root: AffineRoot) -> Optional[AffineRoot]:
        """Member equal to ``root`` (carrying its length tag)"""
        return self._by_vector.get(root.coeffs)

    @cached_property
    def _by_vector(self):
        return {root.coeffs: root for root in self.roots}

    def with_length(self, length: LengthTag) -> Tuple[AffineRoot, ...]:
        return tuple(root for root in self.roots if root.length == length)


def _make_set(kind: RootSetKind, roots: Iterable[AffineRoot]) -> RootSet:
    return RootSet(kind, tuple(sorted(roots, key=lambda root: root.sort_key)))


def _unit(size: int, position: int) -> Vector:
    return tuple(1 if k == position else 0 for k in range(size))


@lru_cache(maxsize=None)
def _root_vectors(d: DynkinDiagram) -> FrozenSet[Vector]:
    """All roots (both signs) by closing the simple roots under simple reflections"""
    if d.is_affine:
        raise InvalidCartanTypeError(f"{d.name} has infinitely many real roots")
    cartan = d.cartan
    frontier = [_unit(d.size, i) for i in range(d.size)]
    seen = set(frontier)
    while frontier:
        vector = frontier.pop()
        for i in range(d.size):
            pairing = sum(cartan[i][j] * vector[j] for j in range(d.size))
            if pairing == 0:
                continue
            image = vector[:i] + (vector[i] - pairing,) + vector[i + 1:]
            if image not in seen:
                seen.add(image)
                frontier.append(image)
        if len(seen) > MAX_CLOSURE_SIZE:
            raise InvalidCartanTypeError(f"{d.name} is not of finite type")
    for vector in seen:
        if min(vector) < 0 < max(vector):
            raise InvariantViolation(f"root {vector} of {d.name} has mixed signs")
    return frozenset(seen)


def norm(d: DynkinDiagram, coeffs: Vector) -> int:
    """(v, v) for the symmetrized form of ``d``"""
    vector = np.array(coeffs, dtype=np.int64)
    return int(vector @ d.bilinear_form @ vector)


def length_tag(d: DynkinDiagram, coeffs: Vector) -> LengthTag:
    """Short = below the longest simple-root norm; one-length systems are all long"""
    value = norm(d, coeffs)
    if value == 0:
        return LengthTag.IMAGINARY
    long_norm = int(np.max(np.diag(d.bilinear_form)))
    return LengthTag.LONG if value == long_norm else LengthTag.SHORT


@lru_cache(maxsize=None)
def positive_roots(d: DynkinDiagram) -> RootSet:
    """R+(g0) in the simple root basis"""
    roots = (
        AffineRoot(d.labels, vector, length_tag(d, vector))
        for vector in _root_vectors(d)
        if min(vector) >= 0
    )
    return _make_set(RootSetKind.POSITIVE, roots)


def _dominant(roots: Tuple[AffineRoot, ...]) -> AffineRoot:
    top = max(roots, key=lambda root: root.sort_key)
    for root in roots:
        if any(a > b for a, b in zip(root.coeffs, top.coeffs)):
            raise InvariantViolation(f"{top} does not dominate {root}")
    return top


@lru_cache(maxsize=None)
def highest_root(d: DynkinDiagram) -> AffineRoot:
    if d.is_affine:
        raise InvalidCartanTypeError(f"{d.name} is not of finite type")
    return _dominant(positive_roots(d).roots)


@lru_cache(maxsize=None)
def highest_short_root(d: DynkinDiagram) -> AffineRoot:
    """theta_0; equals theta on simply-laced input"""
    if d.is_affine:
        raise InvalidCartanTypeError(f"{d.name} is not of finite type")
    short = positive_roots(d).with_length(LengthTag.SHORT)
    return _dominant(short) if short else highest_root(d)


def _require_affine(g: DynkinDiagram) -> None:
    if not g.is_affine:
        raise InvalidCartanTypeError(f"{g.name} is not an affine diagram")


@lru_cache(maxsize=None)
def delta(g: DynkinDiagram) -> AffineRoot:
    """Basic imaginary root: alpha_0 + theta (untwisted) or alpha_0 + theta_0 (twisted)"""
    _require_affine(g)
    finite = g.finite_part
    top = highest_short_root(finite) if g.kind == DiagramKind.TWISTED else highest_root(finite)
    coeffs = (1,) + top.coeffs
    if coeffs != g.null_vector():
        raise InvariantViolation(f"delta {coeffs} of {g.name} is not the Cartan null vector")
    return AffineRoot(g.labels, coeffs, LengthTag.IMAGINARY)


def reduce_mod_delta(g: DynkinDiagram, root: AffineRoot) -> Tuple[AffineRoot, int]:
    """Write ``root`` as alpha_bar + k*delta with alpha_bar on the finite nodes"""
    _require_affine(g)
    if root.labels != g.labels:
        root = root.embed(g.labels)
    k = root.coeffs[0]
    shifted = root - delta(g).scaled(k)
    return AffineRoot(g.labels[1:], shifted.coeffs[1:]), k


@lru_cache(maxsize=None)
def _finite_tags(g: DynkinDiagram) -> Dict[Vector, LengthTag]:
    finite = g.finite_part
    return {vector: length_tag(finite, vector) for vector in _root_vectors(finite)}


def _admissible(g: DynkinDiagram, alpha_bar: Vector, k: int) -> bool:
    tag = _finite_tags(g).get(alpha_bar)
    if tag is None:
        return False
    if g.kind == DiagramKind.TWISTED and k % 2:
        # long roots only shift by even multiples of delta
        return tag == LengthTag.SHORT
    return True


def is_real_root(g: DynkinDiagram, root: AffineRoot) -> bool:
    """Whether ``root`` is alpha_bar + k*delta with k admissible for the length of alpha_bar"""
    if not g.is_affine:
        return root.coeffs in _root_vectors(g)
    alpha_bar, k = reduce_mod_delta(g, root)
    return _admissible(g, alpha_bar.coeffs, k)


def _tag_affine(g: DynkinDiagram, root: AffineRoot) -> AffineRoot:
    alpha_bar, _ = reduce_mod_delta(g, root)
    return root.tagged(_finite_tags(g)[alpha_bar.coeffs])


def real_roots(g: DynkinDiagram, level_bound: Optional[int] = None) -> RootSet:
    """Every real root alpha_bar + k*delta with |k| <= level_bound"""
    _require_affine(g)
    bound = settings.DELTA_LEVEL_BOUND if level_bound is None else level_bound
    finite = g.finite_part
    step = delta(g)
    roots = []
    for vector, tag in sorted(_finite_tags(g).items()):
        alpha_bar = AffineRoot(finite.labels, vector).embed(g.labels)
        for k in range(-bound, bound + 1):
            if _admissible(g, vector, k):
                roots.append((alpha_bar + step.scaled(k)).tagged(tag))
    return _make_set(RootSetKind.REAL, roots)


NILRADICAL_KINDS = {
    (True, 1): RootSetKind.NILRADICAL_0,
    (True, -1): RootSetKind.NILRADICAL_0_MINUS,
    (False, 1): RootSetKind.NILRADICAL_M,
    (False, -1): RootSetKind.NILRADICAL_M_MINUS,
}


def _check_finite_node(g: DynkinDiagram, m: int) -> None:
    if m not in g.finite_labels:
        raise InvalidNodeError(f"{m} is not a finite node of {g.name}")


@lru_cache(maxsize=None)
def nilradical_roots(g: DynkinDiagram, levi: int, m: int, sign: int = 1) -> RootSet:
    """
    Weights of the nilradical of the parabolic with Levi J inside the Levi S minus ``levi``.

    ``levi`` = 0 gives R(u0) (coefficient of alpha_m restricted), ``levi`` = m gives
    R(um) (coefficient of alpha_0 restricted).  The admissible coefficient is 1 in the
    untwisted case and 1 or 2 in the twisted case; ``sign`` = -1 gives the opposite
    nilradical.
    """
    _require_affine(g)
    _check_finite_node(g, m)
    if levi not in (0, m):
        raise InvalidNodeError(f"Levi node must be 0 or {m}, got {levi}")
    if sign not in (1, -1):
        raise InvalidNodeError(f"sign must be +1 or -1, got {sign}")
    other = m if levi == 0 else 0
    allowed = (1, 2) if g.kind == DiagramKind.TWISTED else (1,)

    roots = []
    for root in positive_roots(g.delete(levi)):
        lifted = root.embed(g.labels)
        if lifted.coefficient(other) not in allowed:
            continue
        if not is_real_root(g, lifted):
            raise InvariantViolation(f"{lifted} is not a real root of {g.name}")
        tagged = _tag_affine(g, lifted)
        roots.append(-tagged if sign < 0 else tagged)
    kind = NILRADICAL_KINDS[(levi == 0, sign)]
    logger.debug("%s of %s at node %d: %d roots", kind.value, g.name, m, len(roots))
    return _make_set(kind, roots)


@lru_cache(maxsize=None)
def parabolic_roots(g: DynkinDiagram, m: int) -> RootSet:
    """R(p0) = R+(g0) together with the negative roots of g0 having a_m = 0"""
    _check_finite_node(g, m)
    finite = g.finite_part
    roots = []
    for root in positive_roots(finite):
        roots.append(root)
        if root.coefficient(m) == 0:
            roots.append(-root)
    if g.is_affine:
        roots = [root.embed(g.labels) for root in roots]
    return _make_set(RootSetKind.PARABOLIC, roots)


def coweight_pairing(g: DynkinDiagram, root: AffineRoot, m: int) -> int:
    """root(omega_m): the alpha_m coefficient after reducing modulo delta"""
    _check_finite_node(g, m)
    if not g.is_affine:
        return root.coefficient(m)
    alpha_bar, _ = reduce_mod_delta(g, root)
    return alpha_bar.coefficient(m)


def excess_root(d: DynkinDiagram, m: int) -> Optional[AffineRoot]:
    """Lowest positive root with a_m >= 2, if any"""
    finite = d.finite_part
    _check_finite_node(finite, m)
    for root in positive_roots(finite):
        if root.coefficient(m) >= 2:
            return root
    return None
