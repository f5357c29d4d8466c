"""Partial free resolutions of the trivial module over catalog group rings.

A resolution is stored as explicit boundary matrices with group-ring entries.
Basis coefficients act from the left, so the composite of two boundaries has
entries sum_b inner[b][c] * outer[a][b]; the factor order matters over
noncommutative group rings and is what makes the free-differential identity
close the complexes built from presentations.

validate() checks the complex property (vanishing composites) and that every
degree-one entry has augmentation zero; exactness of the catalog resolutions
holds by construction and is not machine-checked.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .groups import (
    DEFAULT_BALL_CAP,
    BallCapError,
    Group,
    GroupElement,
    GroupSpec,
    group_from_name,
    make_group,
)
from .group_ring import RingElement

BAR_DEGREE_CAP = 3

RESOLUTION_NAME_SYNTAX = (
    "cyclic-inf",
    "cyclic:<n>:<N>",
    "fox:<group>",
    "lattice:<d>",
    "bar:<group>:<degree>:<radius>",
)

Matrix = tuple[tuple[RingElement, ...], ...]
Word = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class Resolution:
    """Free ranks plus boundary matrices; boundary(i) maps rank i to rank i-1."""

    group: Group
    name: str
    ranks: tuple[int, ...]
    boundaries: tuple[Matrix, ...]

    def __post_init__(self):
        if len(self.ranks) != len(self.boundaries) + 1:
            raise ValueError("ranks must have one more entry than boundaries")
        for i, mat in enumerate(self.boundaries, start=1):
            rows, cols = self.ranks[i - 1], self.ranks[i]
            if len(mat) != rows or any(len(row) != cols for row in mat):
                raise ValueError(f"boundary {i} has the wrong shape")

    @property
    def length(self) -> int:
        return len(self.boundaries)

    def boundary(self, i: int) -> Matrix:
        if not 1 <= i <= self.length:
            raise ValueError(f"boundary index {i} out of range 1..{self.length}")
        return self.boundaries[i - 1]


@dataclass(frozen=True)
class CheckResult:
    name: str
    index: int | None
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    checks: tuple[CheckResult, ...]

    @property
    def first_failure(self) -> CheckResult | None:
        for check in self.checks:
            if not check.ok:
                return check
        return None


def compose_boundary_matrices(outer: Matrix, inner: Matrix, group: Group) -> Matrix:
    """Entries of (outer boundary) applied after (inner boundary).

    With left coefficient action, the composite on a basis column c is
    sum_b inner[b][c] * outer[a][b] in slot a.
    """
    rows = len(outer)
    mid = len(inner)
    if any(len(row) != mid for row in outer):
        raise ValueError("boundary shapes do not compose")
    cols = len(inner[0]) if inner else 0
    out = []
    for a in range(rows):
        row = []
        for c in range(cols):
            entry = RingElement.zero(group)
            for b in range(mid):
                entry = entry + inner[b][c] * outer[a][b]
            row.append(entry)
        out.append(tuple(row))
    return tuple(out)


def validate(res: Resolution) -> ValidationReport:
    """Check all composites vanish and degree-one entries have augmentation zero."""
    checks: list[CheckResult] = []
    for i in range(1, res.length):
        composite = compose_boundary_matrices(res.boundary(i), res.boundary(i + 1),
                                              res.group)
        bad = None
        for a, row in enumerate(composite):
            for c, entry in enumerate(row):
                if not entry.is_zero():
                    bad = (a, c, entry)
                    break
            if bad:
                break
        if bad:
            a, c, entry = bad
            checks.append(CheckResult(
                "boundary_composition", i, False,
                f"composite of boundaries {i} and {i + 1} is nonzero at "
                f"({a},{c}): {entry}"))
        else:
            checks.append(CheckResult("boundary_composition", i, True))
    if res.length >= 1:
        bad_aug = None
        for j, entry in enumerate(res.boundary(1)[0]):
            if entry.augment() != 0:
                bad_aug = (j, entry.augment())
                break
        if bad_aug:
            checks.append(CheckResult(
                "augmentation", 1, False,
                f"degree-1 entry {bad_aug[0]} has augmentation {bad_aug[1]}"))
        else:
            checks.append(CheckResult("augmentation", 1, True))
    ok = all(c.ok for c in checks)
    return ValidationReport(ok, tuple(checks))


# -- catalog resolutions -------------------------------------------------------


def cyclic_infinite_resolution(ball_cap: int = DEFAULT_BALL_CAP) -> Resolution:
    """The two-term resolution over the infinite cyclic group: boundary t - 1."""
    group = make_group(GroupSpec("lattice", 1), ball_cap)
    t = group.generators[0]
    entry = RingElement.from_element(t) - RingElement.one(group)
    return Resolution(group, "cyclic-inf", (1, 1), (((entry,),),))


def periodic_cyclic_resolution(n: int, length: int,
                               ball_cap: int = DEFAULT_BALL_CAP) -> Resolution:
    """Period-two resolution over a finite cyclic group.

    Odd boundaries are t - 1, even boundaries the norm element
    1 + t + ... + t^(n-1); all ranks are 1.
    """
    if n < 2:
        raise ValueError(f"cyclic order must be at least 2, got {n}")
    if length < 1:
        raise ValueError(f"resolution length must be at least 1, got {length}")
    group = make_group(GroupSpec("cyclic", n), ball_cap)
    t = group.generators[0]
    minus = RingElement.from_element(t) - RingElement.one(group)
    norm = RingElement(group, [(t ** k, Fraction(1)) for k in range(n)])
    boundaries = tuple(((minus if i % 2 == 1 else norm,),)
                       for i in range(1, length + 1))
    return Resolution(group, f"cyclic:{n}:{length}", (1,) * (length + 1), boundaries)


def lattice_resolution(d: int, ball_cap: int = DEFAULT_BALL_CAP) -> Resolution:
    """Tensor-product resolution over the rank-d lattice, length d.

    Degree-i basis vectors are the i-element subsets S of {1..d}; the boundary
    sends e_S to sum over j in S of sign(j, S) (t_j - 1) e_(S minus j) with
    sign(j, S) = (-1)^(number of i in S below j).
    """
    if not 1 <= d <= 3:
        raise ValueError(f"lattice resolution supports 1 <= d <= 3, got {d}")
    group = make_group(GroupSpec("lattice", d), ball_cap)
    gens = group.generators
    bases = [list(combinations(range(1, d + 1), i)) for i in range(d + 1)]
    boundaries = []
    for i in range(1, d + 1):
        rows = {S: r for r, S in enumerate(bases[i - 1])}
        mat = [[RingElement.zero(group) for _ in bases[i]] for _ in bases[i - 1]]
        for c, S in enumerate(bases[i]):
            for j in S:
                smaller = tuple(x for x in S if x != j)
                sign = (-1) ** sum(1 for x in S if x < j)
                entry = RingElement.from_element(gens[j - 1]) - RingElement.one(group)
                mat[rows[smaller]][c] = entry.scale(sign)
        boundaries.append(tuple(tuple(row) for row in mat))
    ranks = tuple(len(b) for b in bases)
    return Resolution(group, f"lattice:{d}", ranks, tuple(boundaries))


# -- presentations and the free differential calculus --------------------------


@dataclass(frozen=True)
class Presentation:
    """Generator labels plus relator words.

    Words are tuples of letters (generator index, +1 or -1), freely reduced
    and nonempty.
    """

    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        if not self.generators:
            raise ValueError("presentation needs at least one generator")
        for word in self.relators:
            if not word:
                raise ValueError("relators must be nonempty words")
            for pos, (idx, exp) in enumerate(word):
                if not 0 <= idx < len(self.generators) or exp not in (1, -1):
                    raise ValueError(f"invalid letter {(idx, exp)} in relator")
                if pos > 0 and word[pos - 1] == (idx, -exp):
                    raise ValueError(f"relator {word} is not freely reduced")


def reduce_word(letters) -> Word:
    """Freely reduce a sequence of (generator index, +-1) letters."""
    out: list[tuple[int, int]] = []
    for idx, exp in letters:
        if out and out[-1] == (idx, -exp):
            out.pop()
        else:
            out.append((idx, exp))
    return tuple(out)


def parse_word(text: str, labels: tuple[str, ...]) -> Word:
    """Parse "x*y*x^-1*y^-1" into letters over the given labels."""
    index = {label: i for i, label in enumerate(labels)}
    letters: list[tuple[int, int]] = []
    for piece in text.split("*"):
        m = re.match(r"^([A-Za-z][A-Za-z0-9]*)(?:\^(-?\d+))?$", piece.strip())
        if not m or m.group(1) not in index:
            raise ValueError(f"cannot parse word piece {piece!r}")
        idx = index[m.group(1)]
        exp = int(m.group(2)) if m.group(2) is not None else 1
        sign = 1 if exp > 0 else -1
        letters.extend([(idx, sign)] * abs(exp))
    return reduce_word(letters)


def word_inverse(word: Word) -> Word:
    return tuple((idx, -exp) for idx, exp in reversed(word))


def evaluate_word(group: Group, word: Word,
                  gens: tuple[GroupElement, ...] | None = None) -> GroupElement:
    gens = group.generators if gens is None else gens
    out = group.identity
    for idx, exp in word:
        g = gens[idx] if exp == 1 else gens[idx].inverse()
        out = out * g
    return out


def fox_derivative(group: Group, word: Word, gen_index: int,
                   gens: tuple[GroupElement, ...] | None = None) -> RingElement:
    """Free derivative of a word with respect to one generator.

    Rules: d(x)/dx = 1, d(x^-1)/dx = -x^-1, d(uv)/dx = du/dx + u dv/dx, with
    prefixes evaluated in the target group.
    """
    gens = group.generators if gens is None else gens
    result = RingElement.zero(group)
    prefix = group.identity
    for idx, exp in word:
        if exp == 1:
            if idx == gen_index:
                result = result + RingElement.from_element(prefix)
            prefix = prefix * gens[idx]
        else:
            ginv = gens[idx].inverse()
            if idx == gen_index:
                result = result - RingElement.from_element(prefix * ginv)
            prefix = prefix * ginv
    return result


def fox_partial_resolution(presentation: Presentation, group: Group) -> Resolution:
    """Length-2 partial resolution from a presentation.

    Ranks are (1, k, m); the degree-1 entries are x_j - 1 and the degree-2
    entries are the free derivatives of the relators.  The identity
    sum_j (dr/dx_j)(x_j - 1) = r - 1 makes the composite vanish whenever each
    relator evaluates to the identity, which is checked and enforced.
    """
    if len(presentation.generators) != len(group.generators):
        raise ValueError(
            f"presentation has {len(presentation.generators)} generators but "
            f"{group.name} has {len(group.generators)}")
    gens = group.generators
    for word in presentation.relators:
        value = evaluate_word(group, word, gens)
        if not value.is_identity():
            raise ValueError(
                f"presentation mismatch: relator evaluates to {value} in {group.name}")
    k = len(gens)
    m = len(presentation.relators)
    d1 = (tuple(RingElement.from_element(g) - RingElement.one(group) for g in gens),)
    d2 = tuple(
        tuple(fox_derivative(group, word, j, gens) for word in presentation.relators)
        for j in range(k))
    return Resolution(group, f"fox:{group.name}", (1, k, m), (d1, d2))


def catalog_presentation(group_name: str,
                         ball_cap: int = DEFAULT_BALL_CAP) -> tuple[Presentation, Group]:
    """Built-in presentation for a catalog group name."""
    group = group_from_name(group_name, ball_cap)
    kind = group.signature[0]
    labels = group.generator_labels
    if kind == "free":
        return Presentation(labels, ()), group
    if kind == "lattice":
        d = group.signature[1]
        if d > 3:
            raise ValueError(f"no catalog presentation for lattice rank {d}")
        relators = []
        for i, j in combinations(range(d), 2):
            a, b = labels[i], labels[j]
            relators.append(parse_word(f"{a}*{b}*{a}^-1*{b}^-1", labels))
        if not relators:
            return Presentation(labels, ()), group
        return Presentation(labels, tuple(relators)), group
    if kind == "cyclic":
        n = group.signature[1]
        return Presentation(labels, (tuple([(0, 1)] * n),)), group
    if kind == "dihedral-inf":
        return Presentation(labels, (parse_word("s*s", labels),
                                     parse_word("s*r*s*r", labels))), group
    if kind == "heisenberg":
        zw = parse_word("x*y*x^-1*y^-1", labels)
        zw_inv = word_inverse(zw)
        r1 = reduce_word(zw + ((0, 1),) + zw_inv + ((0, -1),))
        r2 = reduce_word(zw + ((1, 1),) + zw_inv + ((1, -1),))
        return Presentation(labels, (r1, r2)), group
    if kind == "S3":
        return Presentation(labels, (parse_word("s1*s1", labels),
                                     parse_word("s2*s2", labels),
                                     parse_word("s1*s2*s1*s2*s1*s2", labels))), group
    raise ValueError(f"no catalog presentation for group {group_name!r}")


# -- bar resolution slice -------------------------------------------------------


def bar_resolution_basis(group: Group, degree: int,
                         radius: int) -> list[tuple[GroupElement, ...]]:
    """Tuples (1, x_1, ..., x_n) with every x_i in the radius ball.

    These index the equivariant slice of the degree-n piece of the standard
    resolution; a cochain is determined by its values here.
    """
    if not 0 <= degree <= BAR_DEGREE_CAP:
        raise ValueError(f"degree must lie in 0..{BAR_DEGREE_CAP}, got {degree}")
    ball = group.ball(radius)
    count = len(ball) ** degree
    if count > group.ball_cap:
        raise BallCapError(
            f"{count} bar tuples would exceed the cap of {group.ball_cap}")
    e = group.identity
    return [(e,) + tail for tail in product(ball, repeat=degree)]


def bar_basis_from_name(name: str,
                        ball_cap: int = DEFAULT_BALL_CAP
                        ) -> list[tuple[GroupElement, ...]]:
    """Resolve "bar:<group>:<degree>:<radius>" to the slice basis."""
    m = re.match(r"^bar:(.+):(\d+):(\d+)$", name.strip())
    if not m:
        raise ValueError(f"cannot parse bar basis name {name!r}")
    group = group_from_name(m.group(1), ball_cap)
    return bar_resolution_basis(group, int(m.group(2)), int(m.group(3)))


def resolution_from_name(name: str, ball_cap: int = DEFAULT_BALL_CAP) -> Resolution:
    """Resolve a catalog resolution name.

    Known forms: "cyclic-inf", "cyclic:<n>:<N>", "lattice:<d>", "fox:<group>".
    """
    name = name.strip()
    if name == "cyclic-inf":
        return cyclic_infinite_resolution(ball_cap)
    m = re.match(r"^cyclic:(\d+):(\d+)$", name)
    if m:
        return periodic_cyclic_resolution(int(m.group(1)), int(m.group(2)), ball_cap)
    m = re.match(r"^lattice:(\d+)$", name)
    if m:
        return lattice_resolution(int(m.group(1)), ball_cap)
    if name.startswith("fox:"):
        presentation, group = catalog_presentation(name[4:], ball_cap)
        return fox_partial_resolution(presentation, group)
    raise ValueError(
        f"unknown resolution name {name!r}; known forms: "
        f"{', '.join(RESOLUTION_NAME_SYNTAX[:4])}"
    )
