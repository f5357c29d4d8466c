"""Invariant battery behind the verify-all command.

Each check exercises one structural property the library promises: group and
ring axioms on random samples, ball geometry, complex validation, duality
plumbing, exactness of the homotopy identity, and monotonicity of the
minimization routines.  Checks return quietly or raise; the runner turns that
into one line per check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from random import Random

import numpy as np

from .groups import group_from_name
from .group_ring import RingElement, class_sum, conjugacy_class
from .resolutions import (
    catalog_presentation,
    evaluate_word,
    fox_derivative,
    lattice_resolution,
    resolution_from_name,
    validate,
)
from .lp_complex import (
    ChainVector,
    CochainVector,
    TruncatedSpace,
    annihilator_residual,
    assemble_boundary,
    pairing,
    translate,
)
from .homotopy import class_sum_homotopy_residual, homotopy_residual, random_cochain
from .vanishing import (
    boundary_distance_curve,
    central_catalog,
    finite_group_homology_ranks,
    lp_distance,
)

CHECK_GROUPS = ("trivial", "cyclic:4", "Z^1", "Z^2", "free:2", "dihedral-inf",
                "heisenberg", "S3")
CATALOG_RESOLUTIONS = (
    ["cyclic-inf"]
    + [f"cyclic:{n}:{N}" for n in (2, 3, 4, 6) for N in (1, 2, 3, 4)]
    + [f"lattice:{d}" for d in (1, 2, 3)]
    + ["fox:Z^2", "fox:free:2", "fox:dihedral-inf", "fox:heisenberg"]
)


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    ok: bool
    detail: str = ""


def _random_element(group, rng: Random, radius: int = 4):
    ball = group.ball(radius)
    return ball[rng.randrange(len(ball))]


def _random_ring_element(group, rng: Random, radius: int = 4, terms: int = 3):
    pairs = []
    for _ in range(rng.randint(1, terms)):
        pairs.append((_random_element(group, rng, radius),
                      Fraction(rng.randint(-5, 5), rng.randint(1, 4))))
    return RingElement(group, pairs)


def check_group_axioms(seed: int = 0, samples: int = 1000):
    rng = Random(seed)
    for name in CHECK_GROUPS:
        group = group_from_name(name)
        e = group.identity
        for _ in range(samples // len(CHECK_GROUPS) + 1):
            a = _random_element(group, rng)
            b = _random_element(group, rng)
            c = _random_element(group, rng)
            assert (a * b) * c == a * (b * c), f"associativity fails in {name}"
            assert a * e == a and e * a == a, f"identity fails in {name}"
            assert a * a.inverse() == e, f"inverse fails in {name}"


def check_ball_geometry():
    for name in CHECK_GROUPS:
        group = group_from_name(name)
        sizes = []
        for radius in range(5):
            ball = group.ball(radius)
            sizes.append(len(ball))
            keys = {g.key for g in ball}
            assert all(g.inverse().key in keys for g in ball), \
                f"ball of {name} is not inverse closed"
            if radius:
                smaller = group.ball(radius - 1)
                assert [g.key for g in ball[:len(smaller)]] == \
                    [g.key for g in smaller], f"balls of {name} do not nest"
        assert sizes == sorted(sizes), f"ball sizes of {name} decrease"
    c4 = group_from_name("cyclic:4")
    assert len(c4.ball(4)) == 4, "cyclic:4 ball(4) must be the whole group"


def check_heisenberg_center():
    group = group_from_name("heisenberg")
    for c in (1, 2):
        z = group.element((0, 0, c))
        for g in group.ball(4):
            assert z * g == g * z, f"(0,0,{c}) fails to commute with {g}"


def check_ring_axioms(seed: int = 1, samples: int = 1000):
    rng = Random(seed)
    for name in CHECK_GROUPS:
        group = group_from_name(name)
        for _ in range(samples // len(CHECK_GROUPS) + 1):
            u = _random_ring_element(group, rng)
            v = _random_ring_element(group, rng)
            w = _random_ring_element(group, rng)
            assert (u * v) * w == u * (v * w), f"ring associativity fails in {name}"
            assert u * (v + w) == u * v + u * w, f"distributivity fails in {name}"
            assert (u * v).augment() == u.augment() * v.augment(), \
                f"augmentation is not multiplicative in {name}"


def check_convolution_support_bound(seed: int = 2, samples: int = 60):
    rng = Random(seed)
    group = group_from_name("dihedral-inf")
    for _ in range(samples):
        u = _random_ring_element(group, rng, radius=3)
        v = _random_ring_element(group, rng, radius=2)
        bound = u.max_word_length() + v.max_word_length()
        assert (u * v).max_word_length() <= bound, "convolution support escaped"


def check_class_sums_central():
    dihedral = group_from_name("dihedral-inf")
    r = dihedral.generators[0]
    for n in range(1, 5):
        assert class_sum(r ** n, 100).is_central()
    s3 = group_from_name("S3")
    for g in s3.ball(3):
        assert class_sum(g, 24).is_central()
    heis = group_from_name("heisenberg")
    assert class_sum(heis.element((0, 0, 1)), 10).support_size() == 1
    assert conjugacy_class(dihedral.generators[1], 50) is None, \
        "the flip class must exceed the cap"
    lattice = group_from_name("Z^2")
    for u in (_random_ring_element(lattice, Random(5)) for _ in range(10)):
        assert u.is_central(), "abelian group rings are their own center"


def check_resolutions_validate():
    for name in CATALOG_RESOLUTIONS:
        report = validate(resolution_from_name(name))
        assert report.ok, f"{name}: {report.first_failure}"


def check_fox_identities():
    for name in ("Z^2", "Z^3", "free:2", "dihedral-inf", "heisenberg", "S3",
                 "cyclic:4"):
        presentation, group = catalog_presentation(name)
        gens = group.generators
        one = RingElement.one(group)
        for word in presentation.relators:
            lhs = RingElement.zero(group)
            for j, g in enumerate(gens):
                lhs = lhs + fox_derivative(group, word, j, gens) * \
                    (RingElement.from_element(g) - one)
            rhs = RingElement.from_element(evaluate_word(group, word, gens)) - one
            assert lhs == rhs, f"free-derivative identity fails for {name}"


def check_lattice_ranks():
    for d in (1, 2, 3):
        assert sum(lattice_resolution(d).ranks) == 2 ** d


def check_assembled_composition_zero():
    for name in CATALOG_RESOLUTIONS:
        res = resolution_from_name(name)
        for i in range(1, res.length):
            inner = assemble_boundary(res, i + 1, 2)
            outer = assemble_boundary(res, i, inner.codomain.radius)
            product = outer.matrix @ inner.matrix
            assert np.all(product == 0.0), \
                f"assembled composite is nonzero for {name} at {i}"


def check_adjointness(seed: int = 3, draws: int = 50):
    rng = np.random.default_rng(seed)
    for name in ("cyclic-inf", "cyclic:4:2", "lattice:2", "fox:dihedral-inf"):
        res = resolution_from_name(name)
        op = assemble_boundary(res, 1, 3)
        for _ in range(draws):
            x = rng.standard_normal(op.domain.dim)
            y = rng.standard_normal(op.codomain.dim)
            lhs = float(y @ (op.matrix @ x))
            rhs = float((op.matrix.T @ y) @ x)
            bound = 1e-10 * (1 + np.linalg.norm(x)) * (1 + np.linalg.norm(y))
            assert abs(lhs - rhs) <= bound, f"adjointness fails for {name}"


def check_hoelder(seed: int = 4, draws: int = 1000):
    rng = np.random.default_rng(seed)
    group = group_from_name("Z^2")
    for p in (1.5, 2.0, 3.0):
        space = TruncatedSpace(group, 2, 3, p)
        for _ in range(draws // 3 + 1):
            x = ChainVector(space, rng.standard_normal(space.dim))
            y = CochainVector(space, rng.standard_normal(space.dim))
            bound = y.norm() * x.norm()
            assert abs(pairing(y, x)) <= bound * (1 + 1e-12), \
                f"pairing bound fails at p={p}"


def check_translate_preserves_norm(seed: int = 5):
    rng = np.random.default_rng(seed)
    group = group_from_name("dihedral-inf")
    space = TruncatedSpace(group, 1, 3, 2.0)
    g = group.parse_element("r^2*s")
    for _ in range(20):
        x = ChainVector(space, rng.standard_normal(space.dim))
        shifted = translate(x, g)
        before = sorted(abs(c) for c in x.coefficients if c != 0.0)
        after = sorted(abs(c) for c in shifted.coefficients if c != 0.0)
        assert before == after, "translation must permute coefficients"


def check_annihilator():
    assert annihilator_residual(resolution_from_name("cyclic-inf"), 1, 4) <= 1e-10
    res4 = resolution_from_name("cyclic:4:2")
    assert annihilator_residual(res4, 1, 4) <= 1e-10
    assert annihilator_residual(res4, 2, 4) <= 1e-10


def check_homotopy_exact(seed: int = 6):
    rng = Random(seed)
    cases = [("Z^1", "t", 1, 3), ("cyclic:4", "t", 1, 3),
             ("heisenberg", "(0,0,1)", 1, 2)]
    for name, token, degree, radius in cases:
        group = group_from_name(name)
        h = group.parse_element(token)
        for _ in range(2):
            phi = random_cochain(group, degree, radius, rng)
            report = homotopy_residual(phi, h)
            assert report.max_abs == 0, f"homotopy residual nonzero for {name}"


def check_class_sum_singleton(seed: int = 7):
    rng = Random(seed)
    group = group_from_name("heisenberg")
    z = group.element((0, 0, 1))
    phi = random_cochain(group, 1, 2, rng)
    plain = homotopy_residual(phi, z)
    summed = class_sum_homotopy_residual(phi, [z])
    assert plain.max_abs == summed.max_abs == 0


def check_minimization(seed: int = 8):
    rng = np.random.default_rng(seed)
    T = rng.standard_normal((30, 12))
    c0 = rng.standard_normal(12)
    feasible = T @ c0
    for p in (1.5, 2.0, 3.0):
        result = lp_distance(feasible, T, p)
        assert result.value <= 1e-9, f"feasible point must have distance 0 at p={p}"
    x = rng.standard_normal(30)
    zero_cols = np.zeros((30, 0))
    res = lp_distance(x, zero_cols, 3.0)
    assert abs(res.value - float(np.sum(np.abs(x) ** 3) ** (1 / 3))) < 1e-12


def check_distance_curve(seed: int = 9):
    res = resolution_from_name("cyclic-inf")
    one = RingElement.one(res.group)
    curve = boundary_distance_curve(res, 0, [one], [2.0], range(1, 7))
    values = [row.value for row in curve.rows]
    assert all(b < a for a, b in zip(values, values[1:])), \
        "distance must strictly decrease here"
    for row in curve.rows:
        exact = (2 * row.index + 2) ** -0.5
        assert abs(row.value - exact) <= 1e-8


def check_finite_homology():
    dims = finite_group_homology_ranks(4, 3, 2.0)
    assert dims == (1, 0, 0, 0), f"unexpected dimensions {dims}"
    per_p = {p: finite_group_homology_ranks(4, 3, p) for p in (1.5, 2.0, 3.0)}
    assert len(set(per_p.values())) == 1, "dimensions must not depend on p"


def check_central_catalog():
    heis = group_from_name("heisenberg")
    seq = central_catalog(heis, 5)
    assert seq.kind == "powers" and seq.base == heis.element((0, 0, 1))
    dihedral = group_from_name("dihedral-inf")
    seq = central_catalog(dihedral, 3)
    assert seq.kind == "class-sums" and len(seq.sums) == 3
    for u in seq.sums:
        assert u.is_central()
    try:
        central_catalog(group_from_name("free:2"), 3)
    except ValueError:
        pass
    else:
        raise AssertionError("free:2 must be rejected")


ALL_CHECKS = (
    ("group-axioms", check_group_axioms),
    ("ball-geometry", check_ball_geometry),
    ("heisenberg-center", check_heisenberg_center),
    ("ring-axioms", check_ring_axioms),
    ("convolution-support", check_convolution_support_bound),
    ("class-sums-central", check_class_sums_central),
    ("resolutions-validate", check_resolutions_validate),
    ("fox-identities", check_fox_identities),
    ("lattice-ranks", check_lattice_ranks),
    ("assembled-composition", check_assembled_composition_zero),
    ("adjointness", check_adjointness),
    ("hoelder", check_hoelder),
    ("translate-norm", check_translate_preserves_norm),
    ("annihilator", check_annihilator),
    ("homotopy-exact", check_homotopy_exact),
    ("class-sum-singleton", check_class_sum_singleton),
    ("minimization", check_minimization),
    ("distance-curve", check_distance_curve),
    ("finite-homology", check_finite_homology),
    ("central-catalog", check_central_catalog),
)


def run_all(verbose: bool = True) -> list[CheckOutcome]:
    outcomes = []
    for name, fn in ALL_CHECKS:
        try:
            fn()
            outcomes.append(CheckOutcome(name, True))
        except Exception as exc:  # noqa: BLE001 - report, do not crash the suite
            outcomes.append(CheckOutcome(name, False, str(exc)))
        if verbose:
            last = outcomes[-1]
            status = "PASS" if last.ok else f"FAIL  {last.detail}"
            print(f"{last.name:<26} {status}")
    return outcomes
