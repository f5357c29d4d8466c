"""Exact group-ring arithmetic: convolution, augmentation, centers, class sums.

Ring elements are finitely supported maps from group elements to rationals,
stored without zero coefficients, so algebraic identities hold on the nose.
Center membership is decided against the generators, which suffices because
the generators generate; conjugacy classes are grown by orbit closure under a
hard cap so that infinite classes terminate with a definite answer.
"""

from __future__ import annotations

from fractions import Fraction

from .groups import Group, GroupElement


class RingElement:
    """Finitely supported map from group elements to exact rationals."""

    __slots__ = ("group", "_coeffs")

    def __init__(self, group: Group, coeffs=()):
        items = coeffs.items() if hasattr(coeffs, "items") else coeffs
        acc: dict[GroupElement, Fraction] = {}
        for g, c in items:
            group._require_member(g)
            c = Fraction(c)
            if g in acc:
                acc[g] += c
            else:
                acc[g] = c
        self.group = group
        self._coeffs = {g: c for g, c in acc.items() if c != 0}

    @classmethod
    def zero(cls, group: Group) -> "RingElement":
        return cls(group)

    @classmethod
    def one(cls, group: Group) -> "RingElement":
        return cls(group, [(group.identity, Fraction(1))])

    @classmethod
    def from_element(cls, g: GroupElement, coeff=1) -> "RingElement":
        return cls(g.group, [(g, Fraction(coeff))])

    def coefficient(self, g: GroupElement) -> Fraction:
        return self._coeffs.get(g, Fraction(0))

    def items_sorted(self) -> list[tuple[GroupElement, Fraction]]:
        """Support with coefficients, sorted by normal form for reproducibility."""
        return sorted(self._coeffs.items(), key=lambda item: item[0].key)

    def support(self) -> tuple[GroupElement, ...]:
        return tuple(g for g, _ in self.items_sorted())

    def support_size(self) -> int:
        return len(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def _require_same_ring(self, other: "RingElement"):
        if self.group.signature != other.group.signature:
            raise ValueError(
                f"cross-group ring operands: {self.group.name} vs {other.group.name}"
            )

    def __add__(self, other: "RingElement") -> "RingElement":
        self._require_same_ring(other)
        out = dict(self._coeffs)
        for g, c in other._coeffs.items():
            out[g] = out.get(g, Fraction(0)) + c
        return RingElement(self.group, out)

    def __neg__(self) -> "RingElement":
        return RingElement(self.group, {g: -c for g, c in self._coeffs.items()})

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def scale(self, factor) -> "RingElement":
        factor = Fraction(factor)
        return RingElement(self.group, {g: c * factor for g, c in self._coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, RingElement):
            return self.convolve(other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def convolve(self, other: "RingElement") -> "RingElement":
        """Product extending group multiplication: (u*v)(g) = sum u(a) v(b) over ab = g."""
        self._require_same_ring(other)
        out: dict[GroupElement, Fraction] = {}
        for a, ca in self._coeffs.items():
            for b, cb in other._coeffs.items():
                g = a * b
                out[g] = out.get(g, Fraction(0)) + ca * cb
        return RingElement(self.group, out)

    def augment(self) -> Fraction:
        """Sum of coefficients; a ring homomorphism onto the rationals."""
        return sum(self._coeffs.values(), Fraction(0))

    def is_central(self) -> bool:
        """True iff this element commutes with every generator."""
        for gen in self.group.generators:
            d = RingElement.from_element(gen)
            if self * d != d * self:
                return False
        return True

    def max_word_length(self) -> int:
        """Largest word length in the support (0 for the zero element)."""
        return max((g.word_length() for g in self._coeffs), default=0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingElement):
            return NotImplemented
        return (self.group.signature == other.group.signature
                and self._coeffs == other._coeffs)

    __hash__ = None

    def __str__(self) -> str:
        return format_ring_element(self)

    def __repr__(self) -> str:
        return format_ring_element(self)


def format_ring_element(u: RingElement) -> str:
    """Render as "3*t^2 + 1*t^-1"; the zero element renders as "0"."""
    if u.is_zero():
        return "0"
    terms = [f"{c}*{g}" for g, c in u.items_sorted()]
    return " + ".join(terms)


def parse_ring_element(group: Group, text: str) -> RingElement:
    """Parse "3*t^2 + 1*t^-1" style notation.

    Terms are joined by " + "; each term is "<rational>*<element>" with the
    coefficient before the first "*".  A bare element means coefficient 1 and
    a bare rational means a multiple of the identity.
    """
    text = text.strip()
    if text == "0" or not text:
        return RingElement.zero(group)
    pairs = []
    for term in text.split("+"):
        term = term.strip()
        if not term:
            raise ValueError(f"empty term in ring-element text {text!r}")
        coeff = Fraction(1)
        elem_token = term
        if "*" in term:
            head, _, tail = term.partition("*")
            try:
                coeff = Fraction(head.strip())
                elem_token = tail.strip()
            except ValueError:
                coeff = Fraction(1)
                elem_token = term
        else:
            try:
                coeff = Fraction(term)
                elem_token = None
            except ValueError:
                elem_token = term
        if elem_token is None:
            g = group.identity
        else:
            g = group.parse_element(elem_token)
        pairs.append((g, coeff))
    return RingElement(group, pairs)


def conjugacy_class(g: GroupElement, cap: int):
    """Orbit of g under conjugation, or None when it exceeds the cap.

    The orbit is closed under conjugation by the symmetric generators, hence
    under the whole group.  Returning None is the definite "not finite within
    this cap" answer, not an error.
    """
    if cap < 1:
        raise ValueError(f"conjugacy cap must be at least 1, got {cap}")
    group = g.group
    seen = {g}
    frontier = [g]
    while frontier:
        new: list[GroupElement] = []
        for x in frontier:
            for s in group.symmetric_generators:
                y = s * x * s.inverse()
                if y not in seen:
                    seen.add(y)
                    if len(seen) > cap:
                        return None
                    new.append(y)
        frontier = new
    return frozenset(seen)


def class_sum(g: GroupElement, cap: int) -> RingElement:
    """Sum of the conjugacy class of g, coefficients 1; always central."""
    orbit = conjugacy_class(g, cap)
    if orbit is None:
        raise ValueError(
            f"not a finite conjugacy class at cap {cap}: element {g} of {g.group.name}"
        )
    return RingElement(g.group, [(h, Fraction(1)) for h in sorted(orbit)])
