"""Catalog of finitely generated groups with exact normal forms and Cayley balls.

Every group here has its word problem solved by an injective normal form, so
equality, multiplication, and inversion are exact integer computations.  Balls
in the word metric (taken with respect to the symmetric closure of the listed
generators, so that balls are closed under inversion) are enumerated breadth
first with a deterministic order: layer by layer, lexicographically by normal
form inside each layer.  Matrix assembly downstream indexes its bases by this
order, which keeps emitted files reproducible across runs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

DEFAULT_BALL_CAP = 200_000

GROUP_NAME_SYNTAX = (
    "trivial",
    "cyclic:<n>",
    "Z^<d>",
    "free:<k>",
    "dihedral-inf",
    "heisenberg",
    "S3",
)


class BallCapError(RuntimeError):
    """A Cayley-ball enumeration would exceed the configured element cap."""


class GroupElement:
    """Element of a catalog group, held in canonical normal form.

    Two elements compare equal iff they belong to the same group and their
    normal forms coincide.  Elements are immutable and hashable.
    """

    __slots__ = ("group", "key")

    def __init__(self, group: "Group", key):
        self.group = group
        self.key = key

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return self.group.mul(self, other)

    def __pow__(self, n: int) -> "GroupElement":
        if n < 0:
            return self.inverse() ** (-n)
        result = self.group.identity
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "GroupElement":
        return self.group.inverse(self)

    def word_length(self) -> int:
        return self.group.word_length(self)

    def is_identity(self) -> bool:
        return self.key == self.group.identity.key

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.group.signature == other.group.signature and self.key == other.key

    def __ne__(self, other) -> bool:
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self) -> int:
        return hash((self.group.signature, self.key))

    def __lt__(self, other: "GroupElement") -> bool:
        # Sort order for elements of one group: lexicographic on normal forms.
        return self.key < other.key

    def __str__(self) -> str:
        return self.group.format_key(self.key)

    def __repr__(self) -> str:
        return f"{self.group.name}!{self.group.format_key(self.key)}"


class Group:
    """Shared machinery: exact operations plus a cached breadth-first ball."""

    kind = "abstract"

    def __init__(self, name: str, generator_labels: tuple[str, ...],
                 ball_cap: int = DEFAULT_BALL_CAP):
        if not generator_labels:
            raise ValueError("generator list must be nonempty")
        self.name = name
        self.generator_labels = tuple(generator_labels)
        self.ball_cap = int(ball_cap)
        self._layers: list[list[GroupElement]] | None = None
        self._dist: dict = {}
        self._exhausted = False

    # -- per-kind interface -------------------------------------------------

    def _identity_key(self):
        raise NotImplementedError

    def _generator_keys(self) -> list:
        raise NotImplementedError

    def _mul_keys(self, a, b):
        raise NotImplementedError

    def _inv_key(self, a):
        raise NotImplementedError

    def _check_key(self, key):
        raise NotImplementedError

    @property
    def signature(self) -> tuple:
        raise NotImplementedError

    def format_key(self, key) -> str:
        raise NotImplementedError

    def parse_element(self, token: str) -> GroupElement:
        raise NotImplementedError

    # -- shared operations ----------------------------------------------------

    @property
    def identity(self) -> GroupElement:
        return GroupElement(self, self._identity_key())

    @property
    def generators(self) -> tuple[GroupElement, ...]:
        return tuple(GroupElement(self, k) for k in self._generator_keys())

    @property
    def symmetric_generators(self) -> tuple[GroupElement, ...]:
        gens = list(self.generators)
        keys = {g.key for g in gens}
        for g in list(gens):
            inv = self.inverse(g)
            if inv.key not in keys:
                gens.append(inv)
                keys.add(inv.key)
        return tuple(gens)

    def element(self, key) -> GroupElement:
        """Construct an element from a raw normal form, after validation."""
        self._check_key(key)
        return GroupElement(self, key)

    def _require_member(self, a: GroupElement):
        if not isinstance(a, GroupElement) or a.group.signature != self.signature:
            raise ValueError(
                f"cross-group operand: expected an element of {self.name}, got {a!r}"
            )

    def mul(self, a: GroupElement, b: GroupElement) -> GroupElement:
        self._require_member(a)
        self._require_member(b)
        return GroupElement(self, self._mul_keys(a.key, b.key))

    def inverse(self, a: GroupElement) -> GroupElement:
        self._require_member(a)
        return GroupElement(self, self._inv_key(a.key))

    # -- Cayley balls ----------------------------------------------------------

    def _grow_one_layer(self):
        if self._layers is None:
            e = self.identity
            self._layers = [[e]]
            self._dist = {e.key: 0}
            self._exhausted = False
            return
        if self._exhausted:
            return
        frontier = self._layers[-1]
        next_keys = set()
        for a in frontier:
            for s in self.symmetric_generators:
                k = self._mul_keys(a.key, s.key)
                if k not in self._dist:
                    next_keys.add(k)
        if not next_keys:
            self._exhausted = True
            return
        total = sum(len(layer) for layer in self._layers) + len(next_keys)
        if total > self.ball_cap:
            raise BallCapError(
                f"ball of {self.name} would exceed the cap of {self.ball_cap} elements"
            )
        depth = len(self._layers)
        layer = [GroupElement(self, k) for k in sorted(next_keys)]
        for g in layer:
            self._dist[g.key] = depth
        self._layers.append(layer)

    def _ensure_radius(self, radius: int):
        if self._layers is None:
            self._grow_one_layer()
        while len(self._layers) <= radius and not self._exhausted:
            self._grow_one_layer()

    def ball(self, radius: int) -> list[GroupElement]:
        """Elements of word length <= radius, in (layer, normal form) order."""
        if radius < 0:
            raise ValueError(f"ball radius must be nonnegative, got {radius}")
        self._ensure_radius(radius)
        out: list[GroupElement] = []
        for layer in self._layers[: radius + 1]:
            out.extend(layer)
        return out

    def word_length(self, a: GroupElement) -> int:
        self._require_member(a)
        if self._layers is None:
            self._grow_one_layer()
        while a.key not in self._dist:
            if self._exhausted:
                raise RuntimeError(
                    f"element {a} of {self.name} was not reached by the generators"
                )
            self._grow_one_layer()
        return self._dist[a.key]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Group):
            return NotImplemented
        return self.signature == other.signature

    def __hash__(self) -> int:
        return hash(self.signature)

    def __repr__(self) -> str:
        return f"<group {self.name}>"


def _pow_token(symbol: str, exponent: int) -> str:
    return symbol if exponent == 1 else f"{symbol}^{exponent}"


_INT_TUPLE_RE = re.compile(r"^\((-?\d+(?:,-?\d+)*)\)$")
_POW_RE = re.compile(r"^([A-Za-z][A-Za-z0-9]*)(?:\^(-?\d+))?$")


def _parse_int_tuple(token: str, arity: int, name: str) -> tuple[int, ...]:
    m = _INT_TUPLE_RE.match(token)
    if not m:
        raise ValueError(f"cannot parse {token!r} as an element of {name}")
    parts = tuple(int(x) for x in m.group(1).split(","))
    if len(parts) != arity:
        raise ValueError(
            f"element of {name} needs {arity} coordinates, got {len(parts)} in {token!r}"
        )
    return parts


class TrivialGroup(Group):
    kind = "trivial"

    def __init__(self, ball_cap: int = DEFAULT_BALL_CAP):
        super().__init__("trivial", ("e",), ball_cap)

    def _identity_key(self):
        return ()

    def _generator_keys(self):
        return [()]

    def _mul_keys(self, a, b):
        return ()

    def _inv_key(self, a):
        return ()

    def _check_key(self, key):
        if key != ():
            raise ValueError(f"invalid trivial-group normal form {key!r}")

    @property
    def signature(self):
        return ("trivial",)

    def format_key(self, key) -> str:
        return "1"

    def parse_element(self, token: str) -> GroupElement:
        if token in ("1", "e"):
            return self.identity
        raise ValueError(f"cannot parse {token!r} as an element of {self.name}")


class CyclicGroup(Group):
    """Cyclic group of order n; normal form is the exponent in [0, n)."""

    kind = "cyclic"

    def __init__(self, n: int, ball_cap: int = DEFAULT_BALL_CAP):
        if n < 1:
            raise ValueError(f"cyclic order must be at least 1, got {n}")
        self.order = int(n)
        super().__init__(f"cyclic:{n}", ("t",), ball_cap)

    def _identity_key(self):
        return 0

    def _generator_keys(self):
        return [1 % self.order]

    def _mul_keys(self, a, b):
        return (a + b) % self.order

    def _inv_key(self, a):
        return (-a) % self.order

    def _check_key(self, key):
        if not isinstance(key, int) or not 0 <= key < self.order:
            raise ValueError(f"invalid exponent {key!r} for {self.name}")

    @property
    def signature(self):
        return ("cyclic", self.order)

    def format_key(self, key) -> str:
        return "1" if key == 0 else _pow_token("t", key)

    def parse_element(self, token: str) -> GroupElement:
        if token == "1":
            return self.identity
        m = _POW_RE.match(token)
        if m and m.group(1) == "t":
            exp = int(m.group(2)) if m.group(2) is not None else 1
            return GroupElement(self, exp % self.order)
        raise ValueError(f"cannot parse {token!r} as an element of {self.name}")


class LatticeGroup(Group):
    """Free abelian group of rank d; normal form is the integer vector."""

    kind = "lattice"

    def __init__(self, d: int, ball_cap: int = DEFAULT_BALL_CAP):
        if d < 1:
            raise ValueError(f"lattice rank must be at least 1, got {d}")
        self.rank = int(d)
        labels = ("t",) if d == 1 else tuple(f"t{i + 1}" for i in range(d))
        super().__init__(f"Z^{d}", labels, ball_cap)

    def _identity_key(self):
        return (0,) * self.rank

    def _generator_keys(self):
        keys = []
        for i in range(self.rank):
            v = [0] * self.rank
            v[i] = 1
            keys.append(tuple(v))
        return keys

    def _mul_keys(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def _inv_key(self, a):
        return tuple(-x for x in a)

    def _check_key(self, key):
        if (not isinstance(key, tuple) or len(key) != self.rank
                or not all(isinstance(x, int) for x in key)):
            raise ValueError(f"invalid vector {key!r} for {self.name}")

    @property
    def signature(self):
        return ("lattice", self.rank)

    def format_key(self, key) -> str:
        if self.rank == 1:
            return "1" if key[0] == 0 else _pow_token("t", key[0])
        return "(" + ",".join(str(x) for x in key) + ")"

    def parse_element(self, token: str) -> GroupElement:
        if token == "1":
            return self.identity
        if self.rank == 1:
            m = _POW_RE.match(token)
            if m and m.group(1) == "t":
                exp = int(m.group(2)) if m.group(2) is not None else 1
                return GroupElement(self, (exp,))
        elif not token.startswith("("):
            # powers of labelled generators, e.g. "t1^2*t2^-1"
            vector = [0] * self.rank
            for piece in token.split("*"):
                m = _POW_RE.match(piece)
                if not m or m.group(1) not in self.generator_labels:
                    raise ValueError(
                        f"cannot parse {token!r} as an element of {self.name}")
                idx = self.generator_labels.index(m.group(1))
                vector[idx] += int(m.group(2)) if m.group(2) is not None else 1
            return GroupElement(self, tuple(vector))
        return GroupElement(self, _parse_int_tuple(token, self.rank, self.name))


class FreeGroup(Group):
    """Free group of rank k; normal form is the freely reduced word.

    Words are tuples of nonzero signed letters: +i encodes the i-th generator,
    -i its inverse (1-based), with no adjacent cancelling pair.
    """

    kind = "free"

    def __init__(self, k: int, ball_cap: int = DEFAULT_BALL_CAP):
        if k < 1:
            raise ValueError(f"free rank must be at least 1, got {k}")
        self.rank = int(k)
        if k <= 3:
            labels = ("x", "y", "z")[:k]
        else:
            labels = tuple(f"x{i + 1}" for i in range(k))
        super().__init__(f"free:{k}", labels, ball_cap)
        self._label_index = {lab: i for i, lab in enumerate(labels)}

    def _identity_key(self):
        return ()

    def _generator_keys(self):
        return [(i + 1,) for i in range(self.rank)]

    def _mul_keys(self, a, b):
        out = list(a)
        for letter in b:
            if out and out[-1] == -letter:
                out.pop()
            else:
                out.append(letter)
        return tuple(out)

    def _inv_key(self, a):
        return tuple(-letter for letter in reversed(a))

    def _check_key(self, key):
        if not isinstance(key, tuple):
            raise ValueError(f"invalid word {key!r} for {self.name}")
        for i, letter in enumerate(key):
            if not isinstance(letter, int) or letter == 0 or abs(letter) > self.rank:
                raise ValueError(f"invalid letter {letter!r} in word for {self.name}")
            if i > 0 and key[i - 1] == -letter:
                raise ValueError(f"word {key!r} is not freely reduced")

    @property
    def signature(self):
        return ("free", self.rank)

    def format_key(self, key) -> str:
        if not key:
            return "1"
        parts = []
        run_letter, run_len = key[0], 1
        for letter in key[1:]:
            if letter == run_letter:
                run_len += 1
            else:
                parts.append((run_letter, run_len))
                run_letter, run_len = letter, 1
        parts.append((run_letter, run_len))
        tokens = []
        for letter, count in parts:
            label = self.generator_labels[abs(letter) - 1]
            exp = count if letter > 0 else -count
            tokens.append(_pow_token(label, exp))
        return "*".join(tokens)

    def parse_element(self, token: str) -> GroupElement:
        if token == "1":
            return self.identity
        key: tuple = ()
        for piece in token.split("*"):
            m = _POW_RE.match(piece)
            if not m or m.group(1) not in self._label_index:
                raise ValueError(f"cannot parse {token!r} as an element of {self.name}")
            idx = self._label_index[m.group(1)] + 1
            exp = int(m.group(2)) if m.group(2) is not None else 1
            letter = idx if exp > 0 else -idx
            key = self._mul_keys(key, (letter,) * abs(exp))
        return GroupElement(self, key)


class InfiniteDihedralGroup(Group):
    """Infinite dihedral group; normal form (a, e) encodes r^a s^e, e in {0, 1}."""

    kind = "dihedral-inf"

    def __init__(self, ball_cap: int = DEFAULT_BALL_CAP):
        super().__init__("dihedral-inf", ("r", "s"), ball_cap)

    def _identity_key(self):
        return (0, 0)

    def _generator_keys(self):
        return [(1, 0), (0, 1)]

    def _mul_keys(self, a, b):
        a1, e1 = a
        a2, e2 = b
        return (a1 - a2 if e1 else a1 + a2, e1 ^ e2)

    def _inv_key(self, a):
        a1, e1 = a
        return (a1, 1) if e1 else (-a1, 0)

    def _check_key(self, key):
        if (not isinstance(key, tuple) or len(key) != 2
                or not isinstance(key[0], int) or key[1] not in (0, 1)):
            raise ValueError(f"invalid normal form {key!r} for {self.name}")

    @property
    def signature(self):
        return ("dihedral-inf",)

    def format_key(self, key) -> str:
        a, e = key
        parts = []
        if a != 0:
            parts.append(_pow_token("r", a))
        if e:
            parts.append("s")
        return "*".join(parts) if parts else "1"

    def parse_element(self, token: str) -> GroupElement:
        if token == "1":
            return self.identity
        a, e = 0, 0
        pieces = token.split("*")
        for i, piece in enumerate(pieces):
            if piece == "s":
                if e or i != len(pieces) - 1:
                    raise ValueError(f"cannot parse {token!r}: flip must come last")
                e = 1
                continue
            m = _POW_RE.match(piece)
            if not m or m.group(1) != "r" or e:
                raise ValueError(f"cannot parse {token!r} as an element of {self.name}")
            a += int(m.group(2)) if m.group(2) is not None else 1
        return GroupElement(self, (a, e))


class HeisenbergGroup(Group):
    """Discrete Heisenberg group on integer triples (a, b, c).

    The product is the upper-triangular matrix product:
    (a, b, c) * (a', b', c') = (a + a', b + b', c + c' + a * b').
    """

    kind = "heisenberg"

    def __init__(self, ball_cap: int = DEFAULT_BALL_CAP):
        super().__init__("heisenberg", ("x", "y"), ball_cap)

    def _identity_key(self):
        return (0, 0, 0)

    def _generator_keys(self):
        return [(1, 0, 0), (0, 1, 0)]

    def _mul_keys(self, a, b):
        a1, b1, c1 = a
        a2, b2, c2 = b
        return (a1 + a2, b1 + b2, c1 + c2 + a1 * b2)

    def _inv_key(self, a):
        a1, b1, c1 = a
        return (-a1, -b1, a1 * b1 - c1)

    def _check_key(self, key):
        if (not isinstance(key, tuple) or len(key) != 3
                or not all(isinstance(x, int) for x in key)):
            raise ValueError(f"invalid triple {key!r} for {self.name}")

    @property
    def signature(self):
        return ("heisenberg",)

    def format_key(self, key) -> str:
        return "(" + ",".join(str(x) for x in key) + ")"

    def parse_element(self, token: str) -> GroupElement:
        if token == "1":
            return self.identity
        return GroupElement(self, _parse_int_tuple(token, 3, self.name))


class SymmetricGroupS3(Group):
    """Symmetric group on three points, generated by the adjacent transpositions."""

    kind = "S3"

    def __init__(self, ball_cap: int = DEFAULT_BALL_CAP):
        super().__init__("S3", ("s1", "s2"), ball_cap)

    def _identity_key(self):
        return (0, 1, 2)

    def _generator_keys(self):
        return [(1, 0, 2), (0, 2, 1)]

    def _mul_keys(self, a, b):
        # Composition as functions: (a * b)(i) = a(b(i)).
        return tuple(a[b[i]] for i in range(3))

    def _inv_key(self, a):
        inv = [0, 0, 0]
        for i, image in enumerate(a):
            inv[image] = i
        return tuple(inv)

    def _check_key(self, key):
        if not isinstance(key, tuple) or sorted(key) != [0, 1, 2]:
            raise ValueError(f"invalid permutation {key!r} for {self.name}")

    @property
    def signature(self):
        return ("S3",)

    def format_key(self, key) -> str:
        if key == (0, 1, 2):
            return "1"
        seen = set()
        cycles = []
        for start in range(3):
            if start in seen or key[start] == start:
                continue
            cycle = [start]
            seen.add(start)
            point = key[start]
            while point != start:
                cycle.append(point)
                seen.add(point)
                point = key[point]
            cycles.append(cycle)
        return "".join("(" + "".join(str(p + 1) for p in c) + ")" for c in cycles)

    def parse_element(self, token: str) -> GroupElement:
        if token == "1":
            return self.identity
        m = re.match(r"^\((\d+)\)$", token)
        if not m:
            raise ValueError(f"cannot parse {token!r} as an element of {self.name}")
        points = [int(ch) - 1 for ch in m.group(1)]
        if len(points) < 2 or len(set(points)) != len(points) or any(
                p not in (0, 1, 2) for p in points):
            raise ValueError(f"cannot parse {token!r} as a cycle on three points")
        perm = [0, 1, 2]
        for i, p in enumerate(points):
            perm[p] = points[(i + 1) % len(points)]
        return GroupElement(self, tuple(perm))


@dataclass(frozen=True)
class GroupSpec:
    """Declarative description of a catalog group.

    kind is one of "trivial", "cyclic", "lattice", "free", "dihedral-inf",
    "heisenberg", "S3"; param carries n, d, or k where applicable.
    """

    kind: str
    param: int | None = None


def make_group(spec: GroupSpec, ball_cap: int = DEFAULT_BALL_CAP) -> Group:
    """Build a group handle from a spec, rejecting invalid parameters."""
    kind = spec.kind
    if kind == "trivial":
        return TrivialGroup(ball_cap)
    if kind == "cyclic":
        if spec.param is None or spec.param < 1:
            raise ValueError(f"cyclic order must be at least 1, got {spec.param}")
        return CyclicGroup(spec.param, ball_cap)
    if kind == "lattice":
        if spec.param is None or spec.param < 1:
            raise ValueError(f"lattice rank must be at least 1, got {spec.param}")
        return LatticeGroup(spec.param, ball_cap)
    if kind == "free":
        if spec.param is None or spec.param < 1:
            raise ValueError(f"free rank must be at least 1, got {spec.param}")
        return FreeGroup(spec.param, ball_cap)
    if kind == "dihedral-inf":
        return InfiniteDihedralGroup(ball_cap)
    if kind == "heisenberg":
        return HeisenbergGroup(ball_cap)
    if kind == "S3":
        return SymmetricGroupS3(ball_cap)
    raise ValueError(f"unknown group kind {kind!r}")


def group_from_name(name: str, ball_cap: int = DEFAULT_BALL_CAP) -> Group:
    """Resolve a catalog name like "cyclic:4", "Z^2", or "heisenberg"."""
    name = name.strip()
    if name == "trivial":
        return make_group(GroupSpec("trivial"), ball_cap)
    if name in ("Z", "Z^1"):
        return make_group(GroupSpec("lattice", 1), ball_cap)
    m = re.match(r"^Z\^(\d+)$", name)
    if m:
        return make_group(GroupSpec("lattice", int(m.group(1))), ball_cap)
    m = re.match(r"^cyclic:(\d+)$", name)
    if m:
        return make_group(GroupSpec("cyclic", int(m.group(1))), ball_cap)
    m = re.match(r"^free:(\d+)$", name)
    if m:
        return make_group(GroupSpec("free", int(m.group(1))), ball_cap)
    if name == "dihedral-inf":
        return make_group(GroupSpec("dihedral-inf"), ball_cap)
    if name == "heisenberg":
        return make_group(GroupSpec("heisenberg"), ball_cap)
    if name == "S3":
        return make_group(GroupSpec("S3"), ball_cap)
    raise ValueError(
        f"unknown group name {name!r}; known forms: {', '.join(GROUP_NAME_SYNTAX)}"
    )
