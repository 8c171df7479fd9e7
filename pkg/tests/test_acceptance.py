"""Acceptance gate.

Each test prints one ``criterion N: PASS|FAIL`` line whatever the capture
mode, then asserts.  Run ``python tests/test_acceptance.py`` for just the
eight lines.
"""

import itertools
import random
import sys
import time

import pytest

from cornering.checks import (
    is_cyclic_class,
    random_hom,
    random_module,
    shipped_fixtures,
    triangle_identities,
)
from cornering.exactla import Matrix
from cornering.fdmod import is_isomorphic, regular_column
from cornering.orbifold import (
    enumerate_fixed_points,
    fixed_point_module,
    hilb_injectivity_experiment,
    overlapping_covering,
    singleton_covering,
)
from cornering.recollement import (
    coinduce,
    coinduce_hom,
    counit,
    induce,
    induce_hom,
    nu,
    phi,
    psi,
    reconstruct,
    restrict,
    slice_module,
    splitting_P,
    unit,
)

SEED = 20261014
MODULES_PER_FIXTURE = 9


def report(capsys, n: int, ok: bool, detail: str) -> None:
    with capsys.disabled():
        print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")


@pytest.fixture(scope="module")
def fixtures():
    return shipped_fixtures()


@pytest.fixture(scope="module")
def sample(fixtures):
    """Seeded random modules shared by criteria 2 and 3, with build time."""
    rng = random.Random(SEED)
    t0 = time.perf_counter()
    out = [(fix, random_module(fix.algebra, rng)) for fix in fixtures for _ in range(MODULES_PER_FIXTURE)]
    return out, time.perf_counter() - t0


def test_criterion_1_splitting_identity(fixtures, capsys):
    t0 = time.perf_counter()
    residuals, cases = [], 0
    for fix in fixtures:
        covs = fix.coverings
        assert len(covs) == 3, fix.name
        for c in covs:
            P = splitting_P(fix.algebra, c)
            for j, block in enumerate(P.composite()):
                cases += 1
                if block != Matrix.identity(block.nrows):
                    residuals.append((fix.name, str(c), j))
            residuals += P.right_linearity_residuals()
    elapsed = time.perf_counter() - t0
    ok = not residuals and elapsed < 5
    report(capsys, 1, ok, f"{cases} blocks over {len(fixtures)} algebras x 3 coverings exact identity, "
                          f"{len(residuals)} residuals, {elapsed:.2f}s (< 5s)")
    assert not residuals
    assert elapsed < 5


def test_criterion_2_psi_phi_ranks(sample, capsys):
    modules, build = sample
    t0 = time.perf_counter()
    bad, pairs = [], 0
    for fix, F in modules:
        assert F.check() == [], "sampled module violates a relation"
        assert len(fix.coverings) >= 2
        for c in fix.coverings:
            pairs += 1
            if psi(F, c).rank() != F.dim or phi(F, c).kernel_dim() != 0:
                bad.append((fix.name, str(c)))
    elapsed = build + time.perf_counter() - t0
    ok = len(modules) >= 50 and not bad and elapsed < 30
    report(capsys, 2, ok, f"{len(modules)} validated modules, {pairs} module/covering pairs, "
                          f"{len(bad)} rank failures, {elapsed:.2f}s (< 30s)")
    assert len(modules) >= 50
    assert not bad
    assert elapsed < 30


def test_criterion_3_round_trip(sample, capsys):
    modules, _ = sample
    cyclic = [(fix, F) for fix, F in modules if is_cyclic_class(F)]
    failures, trials = [], 0
    for fix, F in cyclic:
        for c in fix.coverings:
            trials += 1
            r = reconstruct(slice_module(F, c))
            iso = is_isomorphic(r.module, F)
            if not (r.consistent and iso.yes and iso.method == "annihilator"):
                failures.append((fix.name, str(c), iso.status))
    ok = bool(cyclic) and not failures
    report(capsys, 3, ok, f"{len(cyclic)} 0-generated modules with source dimension 1, "
                          f"{trials} reconstructions, {len(failures)} failures")
    assert cyclic
    assert not failures


def test_criterion_4_nu_and_naturality(fixtures, capsys):
    rng = random.Random(SEED + 4)
    composite_residuals, square_residuals, homs, nus = 0, 0, 0, 0
    for fix in fixtures:
        for _ in range(3):
            F, G = random_module(fix.algebra, rng), random_module(fix.algebra, rng)
            for I in fix.coverings[-1]:
                N, M = restrict(F, I), restrict(G, I)
                for X, Y in ((F, N), (G, M)):
                    nus += 1
                    if not nu(Y, I).same_matrices(unit(X, I) @ counit(X, I)):
                        composite_residuals += 1
                h = random_hom(N, M, rng)
                if h.is_zero():
                    continue
                homs += 1
                if not (coinduce_hom(h, I) @ nu(N, I)).same_matrices(nu(M, I) @ induce_hom(h, I)):
                    square_residuals += 1
    ok = homs >= 20 and composite_residuals == square_residuals == 0
    report(capsys, 4, ok, f"{nus} composites with {composite_residuals} residuals, "
                          f"{homs} nonzero homomorphisms with {square_residuals} non-commuting squares")
    assert homs >= 20
    assert composite_residuals == 0
    assert square_residuals == 0


def test_criterion_5_triangle_identities(fixtures, capsys):
    rng = random.Random(SEED + 5)
    failures, modules, checks = [], 0, 0
    for fix in fixtures:
        for _ in range(4):
            F, G = random_module(fix.algebra, rng), random_module(fix.algebra, rng)
            modules += 1
            for I in fix.coverings[0]:
                for label, good in triangle_identities(F, restrict(G, I), I):
                    checks += 1
                    if not good:
                        failures.append((fix.name, sorted(I), label))
    ok = modules >= 20 and not failures
    report(capsys, 5, ok, f"{modules} random modules, {checks} triangle checks, {len(failures)} failures")
    assert modules >= 20
    assert not failures


def partition_filter_oracle(m: int, n: tuple[int, ...]) -> set[tuple[int, ...]]:
    """Every non-increasing tuple summing to |n|, kept when its boxes have content n."""
    total = sum(n)
    found = set()
    for k in range(1, total + 1):
        for parts in itertools.product(range(1, total + 1), repeat=k):
            if sum(parts) != total or any(a < b for a, b in zip(parts, parts[1:])):
                continue
            content = [0] * m
            for row, length in enumerate(parts):
                for col in range(length):
                    content[(col - row) % m] += 1
            if tuple(content) == n:
                found.add(parts)
    return found


ORBIFOLD_CASES = [(2, (1, 1)), (3, (1, 1, 1)), (2, (2, 1)), (2, (1, 2))]


def test_criterion_6_orbifold_counts(capsys):
    t0 = time.perf_counter()
    got = {(m, n): enumerate_fixed_points(m, n) for m, n in ORBIFOLD_CASES}
    elapsed = time.perf_counter() - t0
    oracle = {(m, n): partition_filter_oracle(m, n) for m, n in ORBIFOLD_CASES}
    counts_ok = len(got[2, (1, 1)]) == 2 and len(got[3, (1, 1, 1)]) == 3
    oracle_ok = all({p.parts for p in got[key]} == oracle[key] for key in got)
    ok = counts_ok and oracle_ok and elapsed < 5
    summary = ", ".join(f"m={m} n={n}: {len(got[m, n])}" for m, n in ORBIFOLD_CASES)
    report(capsys, 6, ok, f"{summary}; oracle agrees={oracle_ok}, {elapsed:.3f}s (< 5s)")
    assert counts_ok
    assert oracle_ok
    assert elapsed < 5


def test_criterion_7_slice_injectivity(capsys):
    t0 = time.perf_counter()
    pairs, undistinguished, counterexamples = 0, [], 0
    for m, n in ORBIFOLD_CASES:
        points = enumerate_fixed_points(m, n)
        modules = [fixed_point_module(p, m) for p in points]
        for i, j in itertools.combinations(range(len(points)), 2):
            assert is_isomorphic(modules[i], modules[j]).no
        for name, cov in (("singletons", singleton_covering(m)), ("overlapping", overlapping_covering(m))):
            rep = hilb_injectivity_experiment(m, n, cov)
            counterexamples += len(rep["counterexamples"])
            for pair in rep["pairs"]:
                pairs += 1
                if not pair["distinguished"]:
                    undistinguished.append((m, n, name, pair["a"], pair["b"]))
    elapsed = time.perf_counter() - t0
    ok = not undistinguished and counterexamples == 0 and elapsed < 60
    report(capsys, 7, ok, f"{pairs} non-isomorphic pairs x covering, {len(undistinguished)} undistinguished, "
                          f"{counterexamples} counterexample artifacts, {elapsed:.2f}s (< 60s)")
    assert not undistinguished
    assert counterexamples == 0
    assert elapsed < 60


# Hand-computed in the fixtures of test_recollement as well.
STAR_DIMS = {"restrict": (1, 1), "induce": (1, 1, 1), "coinduce": (1, 1, 0)}


def test_criterion_8_star_oracle(fixtures, capsys):
    star = next(f for f in fixtures if f.name == "star2").algebra
    F = regular_column(star, "0")
    I = {"0", "1"}
    N = restrict(F, I)
    got = {"restrict": N.dims, "induce": induce(N, I).dims, "coinduce": coinduce(N, I).dims}
    ok = got == STAR_DIMS
    report(capsys, 8, ok, "  ".join(f"{k}={v}" for k, v in got.items()))
    assert got == STAR_DIMS


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
