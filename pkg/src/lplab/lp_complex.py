"""Truncated p-summable chain and cochain spaces over catalog groups.

A truncated space carries coefficient families indexed by (copy, ball element)
with the deterministic ball order.  Boundary operators act by right
convolution with the group-ring entries of a resolution; the codomain ball is
enlarged by the largest word length in those entries, so supports grow and are
never clipped.  Chains measure with exponent p, cochains with the conjugate
exponent, and the evaluation pairing aligns coefficients by basis label so
vectors living at different radii can be paired.
"""

from __future__ import annotations

import numpy as np
from scipy import linalg as _sla

from .groups import Group, GroupElement
from .group_ring import RingElement
from .resolutions import Resolution


class TruncatedSpace:
    """Coefficient space on (copy, ball element) pairs with a fixed exponent."""

    __slots__ = ("group", "rank", "radius", "p", "elements", "_positions")

    def __init__(self, group: Group, rank: int, radius: int, p: float):
        if rank < 0:
            raise ValueError(f"rank must be nonnegative, got {rank}")
        if not 1.0 < p < float("inf"):
            raise ValueError(f"exponent p must lie in (1, inf), got {p}")
        self.group = group
        self.rank = int(rank)
        self.radius = int(radius)
        self.p = float(p)
        self.elements = tuple(group.ball(radius))
        self._positions = {g.key: i for i, g in enumerate(self.elements)}

    @property
    def q(self) -> float:
        """Conjugate exponent: 1/p + 1/q = 1."""
        return self.p / (self.p - 1.0)

    @property
    def dim(self) -> int:
        return self.rank * len(self.elements)

    def index_of(self, copy: int, g: GroupElement) -> int | None:
        pos = self._positions.get(g.key)
        if pos is None or not 0 <= copy < self.rank:
            return None
        return copy * len(self.elements) + pos

    def basis_labels(self):
        """Iterate (copy, element) in coefficient order."""
        for copy in range(self.rank):
            for g in self.elements:
                yield copy, g

    def compatible_with(self, other: "TruncatedSpace") -> bool:
        return (self.group.signature == other.group.signature
                and self.rank == other.rank and self.p == other.p)


class _Vector:
    __slots__ = ("space", "coefficients")

    def __init__(self, space: TruncatedSpace, coefficients):
        arr = np.array(coefficients, dtype=float).reshape(-1)
        if arr.shape[0] != space.dim:
            raise ValueError(
                f"expected {space.dim} coefficients, got {arr.shape[0]}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("coefficients must be finite")
        self.space = space
        self.coefficients = arr

    def _exponent(self) -> float:
        raise NotImplementedError

    def norm(self) -> float:
        """(sum of |coefficient|^exponent)^(1/exponent), copies summed flat."""
        e = self._exponent()
        return float(np.sum(np.abs(self.coefficients) ** e) ** (1.0 / e))

    def coefficient(self, copy: int, g: GroupElement) -> float:
        idx = self.space.index_of(copy, g)
        return 0.0 if idx is None else float(self.coefficients[idx])

    def __add__(self, other):
        if type(other) is not type(self) or other.space is not self.space:
            return NotImplemented
        return type(self)(self.space, self.coefficients + other.coefficients)

    def __mul__(self, scalar):
        if not isinstance(scalar, (int, float)):
            return NotImplemented
        return type(self)(self.space, self.coefficients * float(scalar))

    __rmul__ = __mul__


class ChainVector(_Vector):
    """Coefficient family measured with the space exponent p."""

    def _exponent(self) -> float:
        return self.space.p


class CochainVector(_Vector):
    """Coefficient family measured with the conjugate exponent q."""

    def _exponent(self) -> float:
        return self.space.q


def zero_chain(space: TruncatedSpace) -> ChainVector:
    return ChainVector(space, np.zeros(space.dim))


def delta_chain(space: TruncatedSpace, copy: int, g: GroupElement) -> ChainVector:
    arr = np.zeros(space.dim)
    idx = space.index_of(copy, g)
    if idx is None:
        raise ValueError(f"basis slot ({copy}, {g}) not present in the space")
    arr[idx] = 1.0
    return ChainVector(space, arr)


def vector_from_ring_parts(space: TruncatedSpace, parts, cls=ChainVector):
    """Embed one exact group-ring element per copy into float coefficients."""
    parts = list(parts)
    if len(parts) != space.rank:
        raise ValueError(f"expected {space.rank} parts, got {len(parts)}")
    arr = np.zeros(space.dim)
    for copy, part in enumerate(parts):
        if part is None:
            continue
        for g, coeff in part.items_sorted():
            idx = space.index_of(copy, g)
            if idx is None:
                raise ValueError(
                    f"support element {g} escapes radius {space.radius}")
            arr[idx] = float(coeff)
    return cls(space, arr)


class BoundaryOperator:
    """Dense matrix of a truncated boundary together with its two spaces."""

    __slots__ = ("domain", "codomain", "matrix", "label")

    def __init__(self, domain: TruncatedSpace, codomain: TruncatedSpace,
                 matrix: np.ndarray, label: str):
        self.domain = domain
        self.codomain = codomain
        self.matrix = matrix
        self.label = label

    def apply(self, x: ChainVector) -> ChainVector:
        if x.space is not self.domain and not (
                x.space.compatible_with(self.domain)
                and x.space.radius == self.domain.radius):
            raise ValueError("vector does not live on the operator domain")
        return ChainVector(self.codomain, self.matrix @ x.coefficients)

    def apply_dual(self, y: CochainVector) -> CochainVector:
        if y.space is not self.codomain and not (
                y.space.compatible_with(self.codomain)
                and y.space.radius == self.codomain.radius):
            raise ValueError("cochain does not live on the dual domain")
        return CochainVector(self.domain, self.matrix.T @ y.coefficients)


def assemble_boundary(res: Resolution, i: int, radius: int,
                      p: float = 2.0) -> BoundaryOperator:
    """Finite matrix of the i-th boundary tensored with coefficient functions.

    Columns are indexed by (copy, ball element) at the given radius; each
    column carries the right convolution of its basis delta with the matching
    group-ring entries, landing in the ball enlarged by the largest entry word
    length.  Entries are exact integers embedded in doubles.
    """
    mat = res.boundary(i)
    group = res.group
    growth = 0
    for row in mat:
        for entry in row:
            growth = max(growth, entry.max_word_length())
    domain = TruncatedSpace(group, res.ranks[i], radius, p)
    codomain = TruncatedSpace(group, res.ranks[i - 1], radius + growth, p)
    out = np.zeros((codomain.dim, domain.dim))
    n_dom = len(domain.elements)
    for b in range(domain.rank):
        for h_pos, h in enumerate(domain.elements):
            col = b * n_dom + h_pos
            for a in range(codomain.rank):
                entry = mat[a][b]
                for g, coeff in entry.items_sorted():
                    row_idx = codomain.index_of(a, h * g)
                    if row_idx is None:
                        raise RuntimeError(
                            "convolution support escaped the enlarged ball")
                    out[row_idx, col] += float(coeff)
    return BoundaryOperator(domain, codomain, out,
                            f"{res.name}:boundary_{i}:R={radius}")


def dual_boundary(res: Resolution, i: int, radius: int,
                  p: float = 2.0) -> BoundaryOperator:
    """Transpose of the assembled boundary, acting on cochain coefficients."""
    op = assemble_boundary(res, i, radius, p)
    return BoundaryOperator(op.codomain, op.domain, op.matrix.T.copy(),
                            f"{res.name}:dual_boundary_{i}:R={radius}")


def embed(vec, target: TruncatedSpace):
    """Re-express a vector on a larger (or equal) ball, padding with zeros."""
    src = vec.space
    if not src.compatible_with(target):
        raise ValueError("spaces differ in group, rank, or exponent")
    arr = np.zeros(target.dim)
    n_src = len(src.elements)
    for copy in range(src.rank):
        for pos, g in enumerate(src.elements):
            c = vec.coefficients[copy * n_src + pos]
            if c != 0.0:
                idx = target.index_of(copy, g)
                if idx is None:
                    raise ValueError(
                        f"support element {g} escapes radius {target.radius}")
                arr[idx] = c
    return type(vec)(target, arr)


def pairing(y: CochainVector, x: ChainVector) -> float:
    """Evaluation pairing: sum over copies and elements of products of
    coefficients, aligned by basis label; missing slots count as zero."""
    ys, xs = y.space, x.space
    if ys.group.signature != xs.group.signature:
        raise ValueError("pairing needs vectors over the same group")
    if ys.rank != xs.rank:
        raise ValueError(f"rank mismatch: {ys.rank} vs {xs.rank}")
    if ys.p != xs.p:
        raise ValueError("pairing needs conjugate exponents on a common p")
    if ys.radius == xs.radius:
        return float(np.dot(y.coefficients, x.coefficients))
    if xs.radius < ys.radius:
        x = embed(x, ys)
    else:
        y = embed(y, xs)
    return float(np.dot(y.coefficients, x.coefficients))


def translate(x, g: GroupElement):
    """Left translation: the new coefficient at h is the old one at g^-1 h."""
    space = x.space
    space.group._require_member(g)
    new_space = TruncatedSpace(space.group, space.rank,
                               space.radius + g.word_length(), space.p)
    arr = np.zeros(new_space.dim)
    n_src = len(space.elements)
    for copy in range(space.rank):
        for pos, h in enumerate(space.elements):
            c = x.coefficients[copy * n_src + pos]
            if c != 0.0:
                idx = new_space.index_of(copy, g * h)
                if idx is None:
                    raise RuntimeError("translated support escaped the ball")
                arr[idx] = c
    return type(x)(new_space, arr)


def translate_ring(x, u: RingElement):
    """Weighted sum of left translations over the support of a ring element."""
    space = x.space
    if u.group.signature != space.group.signature:
        raise ValueError("ring element belongs to a different group")
    if u.is_zero():
        return type(x)(space, np.zeros(space.dim))
    shift = u.max_word_length()
    new_space = TruncatedSpace(space.group, space.rank, space.radius + shift,
                               space.p)
    arr = np.zeros(new_space.dim)
    n_src = len(space.elements)
    for g, coeff in u.items_sorted():
        weight = float(coeff)
        for copy in range(space.rank):
            for pos, h in enumerate(space.elements):
                c = x.coefficients[copy * n_src + pos]
                if c != 0.0:
                    idx = new_space.index_of(copy, g * h)
                    if idx is None:
                        raise RuntimeError("translated support escaped the ball")
                    arr[idx] += weight * c
    return type(x)(new_space, arr)


def annihilator_residual(res: Resolution, i: int, radius: int) -> float:
    """Largest inner product between orthonormal bases of ker(T^t) and im(T).

    Both bases come from rank-revealing factorizations; the kernel of the
    transpose annihilates the image, so the residual should vanish up to
    rounding.
    """
    T = assemble_boundary(res, i, radius).matrix
    kernel = _sla.null_space(T.T)
    image = _sla.orth(T)
    if kernel.size == 0 or image.size == 0:
        return 0.0
    return float(np.max(np.abs(kernel.T @ image)))


def export_matrix_coordinate(op: BoundaryOperator, path, *, resolution: str,
                             index: int, radius: int):
    """Write nonzero entries as "row col value" lines under a naming header."""
    lines = [
        f"# group={op.domain.group.name} resolution={resolution} "
        f"i={index} R={radius}",
        f"# shape={op.matrix.shape[0]}x{op.matrix.shape[1]}",
    ]
    rows, cols = np.nonzero(op.matrix)
    for r, c in zip(rows.tolist(), cols.tolist()):
        lines.append(f"{r} {c} {op.matrix[r, c]:.17g}")
    text = "\n".join(lines) + "\n"
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def export_vector_csv(vec, path):
    """Write all coefficients as CSV rows (copy, element, value)."""
    lines = ["copy,element,value"]
    for pos, (copy, g) in enumerate(vec.space.basis_labels()):
        token = str(g)
        if "," in token:
            token = f'"{token}"'
        lines.append(f"{copy},{token},{vec.coefficients[pos]:.17g}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
