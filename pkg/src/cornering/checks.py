"""Seeded random modules and the property suites behind ``cornering check``.

All randomness flows through a :class:`random.Random` built from the seed,
so a given seed always yields the same modules and the same transcript.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .algebra import INFINITY, FDAlgebra, loop_quiver, mckay_algebra, star_quiver, truncated_algebra
from .exactla import Matrix, scalar
from .fdmod import (
    FDModule,
    ModuleError,
    ModuleHom,
    column_positions,
    direct_sum,
    hom_space,
    image_module,
    image_with_maps,
    is_isomorphic,
    is_zero_generated,
    module_from_arrows,
    quotient_module,
    regular_column,
    submodule_spaces,
)
from .recollement import (
    Covering,
    coinduce,
    coinduce_hom,
    coinduction_counit,
    counit,
    induce,
    induce_hom,
    induction_unit,
    nu,
    phi,
    psi,
    reconstruct,
    restrict,
    restrict_hom,
    slice_module,
    splitting_P,
    unit,
)


# -- shipped algebras ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Fixture:
    name: str
    algebra: FDAlgebra
    coverings: tuple[Covering, ...]


def star_algebra() -> FDAlgebra:
    return truncated_algebra(star_quiver(2), [], 2)


def loop_algebra(truncation: int) -> FDAlgebra:
    return truncated_algebra(loop_quiver(), [], truncation)


def mckay_coverings(A: FDAlgebra, m: int) -> tuple[Covering, ...]:
    singletons = [{INFINITY, str(k)} for k in range(m)]
    overlap = [{INFINITY, "0", "1"}, {INFINITY} | {str(k) for k in range(1, m)}]
    return (Covering.of(A, singletons), Covering.of(A, [A.vertices]), Covering.of(A, overlap))


def shipped_fixtures() -> list[Fixture]:
    """Star S2, one-loop truncations L = 2..4, framed McKay Z/2 and Z/3 at L = 4."""
    out = []
    S = star_algebra()
    out.append(Fixture("star2", S, (
        Covering.of(S, [{"0", "1"}, {"0", "2"}]),
        Covering.of(S, [{"0", "1", "2"}]),
        Covering.of(S, [{"0", "1"}, {"0", "1", "2"}]),
    )))
    for L in (2, 3, 4):
        A = loop_algebra(L)
        out.append(Fixture(f"loop{L}", A, tuple(Covering.of(A, [{"0"}] * k) for k in (1, 2, 3))))
    for m in (2, 3):
        A = mckay_algebra(m, 4)
        out.append(Fixture(f"mckay{m}", A, mckay_coverings(A, m)))
    return out


# -- random modules ----------------------------------------------------------------------


def _small(rng: random.Random, spread: int = 2):
    return scalar(rng.choice([k for k in range(-spread, spread + 1) if k]))


def _projective_sum(A: FDAlgebra, verts: list[str]) -> tuple[FDModule, list[int]]:
    """Sum of the A e_v and the total-space positions of its idempotents."""
    P = direct_sum([regular_column(A, v) for v in verts])
    used = {v: 0 for v in A.vertices}
    tops = []
    for v in verts:
        members = A.by_tail[v]
        pos = column_positions(A, members)
        _, k = pos[A.idempotents[v]]
        tops.append(P.offsets[v] + used[v] + k)
        for w in A.vertices:
            used[w] += sum(1 for i in members if A.basis[i].head == w)
    return P, tops


def _radical_vectors(P: FDModule, tops: list[int], rng: random.Random, count: int) -> list[list]:
    others = [k for k in range(P.dim) if k not in tops]
    vectors = []
    for _ in range(count):
        if not others:
            break
        vec = [scalar(0)] * P.dim
        for k in rng.sample(others, min(len(others), rng.randint(1, 3))):
            vec[k] = _small(rng)
        vectors.append(vec)
    return vectors


def random_cyclic_module(A: FDAlgebra, rng: random.Random, relations: int | None = None) -> FDModule:
    """A e_source modulo the submodule generated by random radical elements.

    The result is 0-generated, and its source block is 1-dimensional when
    there are no cycles at the source.
    """
    P, tops = _projective_sum(A, [A.source])
    count = rng.randint(0, 3) if relations is None else relations
    vectors = _radical_vectors(P, tops, rng, count)
    if not vectors:
        return P
    return quotient_module(P, submodule_spaces(P, vectors))


def random_projective_quotient(A: FDAlgebra, rng: random.Random) -> FDModule:
    """Quotient of a sum of one or two indecomposable projectives by radical elements."""
    verts = [rng.choice(A.vertices) for _ in range(rng.randint(1, 2))]
    P, tops = _projective_sum(A, verts)
    vectors = _radical_vectors(P, tops, rng, rng.randint(1, 3))
    return quotient_module(P, submodule_spaces(P, vectors)) if vectors else P


def random_arrow_module(A: FDAlgebra, rng: random.Random, max_dim: int = 2,
                        tries: int = 100) -> FDModule | None:
    """Random sparse arrow matrices, rejection-sampled against the relations."""
    q = A.quiver
    for _ in range(tries):
        dims = {v: rng.randint(0, max_dim) for v in A.vertices}
        if not any(dims.values()):
            continue
        mats = {}
        for a in q.arrows:
            rows = [[rng.choice((-1, 0, 0, 1)) for _ in range(dims[a.tail])] for _ in range(dims[a.head])]
            mats[a.id] = Matrix(rows, dims[a.tail])
        try:
            return module_from_arrows(A, dims, mats)
        except ModuleError:
            continue
    return None


def random_module(A: FDAlgebra, rng: random.Random) -> FDModule:
    kind = rng.choice(("cyclic", "cyclic", "projective", "arrows"))
    if kind == "arrows" and A.quiver is not None:
        F = random_arrow_module(A, rng)
        if F is not None:
            return F
    if kind == "projective":
        return random_projective_quotient(A, rng)
    return random_cyclic_module(A, rng)


def random_combination(basis: list[ModuleHom], rng: random.Random, source: FDModule,
                       target: FDModule) -> ModuleHom:
    h = ModuleHom.zero(source, target)
    for b in basis:
        h = h + b.scale(scalar(rng.randint(-2, 2)))
    return h


def random_hom(N: FDModule, M: FDModule, rng: random.Random) -> ModuleHom:
    basis = hom_space(N, M)
    h = random_combination(basis, rng, N, M)
    if h.is_zero() and basis:
        h = basis[rng.randrange(len(basis))]
    return h


def is_cyclic_class(F: FDModule) -> bool:
    """0-generated with a 1-dimensional source block: the exact iso class."""
    return F.dim_at(F.algebra.source) == 1 and is_zero_generated(F)


# -- suites ------------------------------------------------------------------------------


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, message: str) -> None:
        self.failures.append(message)

    def line(self) -> str:
        status = "pass" if self.passed else f"FAIL ({len(self.failures)} failures)"
        return f"{self.name}: {status}, {self.cases} cases"

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "cases": self.cases, "failures": self.failures}


def sample_modules(fix: Fixture, rng: random.Random, count: int) -> list[FDModule]:
    return [random_module(fix.algebra, rng) for _ in range(count)]


def suite_module_checks(fix: Fixture, modules: list[FDModule], rng: random.Random) -> list[SuiteResult]:
    A = fix.algebra
    actions = SuiteResult(f"{fix.name}/fdmod.actions")
    images = SuiteResult(f"{fix.name}/fdmod.image")
    zero_gen = SuiteResult(f"{fix.name}/fdmod.zero_generated")
    equiv = SuiteResult(f"{fix.name}/fdmod.iso_equivalence")
    for k, F in enumerate(modules):
        actions.cases += 1
        problems = F.check_all_pairs()
        if problems:
            actions.fail(f"module {k}: {problems[0]}")
    for k, (F, G) in enumerate(zip(modules, modules[1:] + modules[:1])):
        h = random_hom(F, G, rng)
        im, cores, incl = image_with_maps(h)
        images.cases += 1
        if im.check():
            images.fail(f"pair {k}: image is not a module")
        if not cores.is_surjective() or not (incl @ cores).same_matrices(h):
            images.fail(f"pair {k}: corestriction is wrong")
    zero_gen.cases += 1
    if not is_zero_generated(regular_column(A, A.source)):
        zero_gen.fail("A e_source is not 0-generated")
    family = [F for F in modules if is_cyclic_class(F)][:4]
    family += [_rescaled(F, rng) for F in family[:2]]
    status = {}
    for i, j in itertools.product(range(len(family)), repeat=2):
        status[i, j] = is_isomorphic(family[i], family[j]).status
    for i in range(len(family)):
        equiv.cases += 1
        if status[i, i] != "yes":
            equiv.fail(f"member {i} is not isomorphic to itself")
    for i, j in itertools.combinations(range(len(family)), 2):
        if status[i, j] != status[j, i]:
            equiv.fail(f"asymmetric answers on ({i},{j})")
    for i, j, k in itertools.permutations(range(len(family)), 3):
        if status[i, j] == status[j, k] == "yes" and status[i, k] != "yes":
            equiv.fail(f"transitivity fails on ({i},{j},{k})")
    return [actions, images, zero_gen, equiv]


def _rescaled(F: FDModule, rng: random.Random) -> FDModule:
    """An isomorphic copy, conjugated by a random diagonal change of basis."""
    A = F.algebra
    diag = {v: [scalar(rng.choice((1, 2, -1, 3))) for _ in range(F.dim_at(v))] for v in A.vertices}
    blocks = []
    for i, b in enumerate(A.basis):
        blk = F.actions[i]
        rows = [[blk[r, c] * diag[b.head][r] / diag[b.tail][c] for c in range(blk.ncols)]
                for r in range(blk.nrows)]
        blocks.append(Matrix(rows, blk.ncols))
    return FDModule(A, F.dims, tuple(blocks)).validate()


def suite_splitting(fix: Fixture) -> SuiteResult:
    res = SuiteResult(f"{fix.name}/recollement.splitting")
    for t, c in enumerate(fix.coverings):
        for average in (False, True):
            res.cases += 1
            P = splitting_P(fix.algebra, c, average=average)
            if not P.is_section():
                res.fail(f"covering {t} (average={average}): Psi P is not the identity")
            bad = P.right_linearity_residuals()
            if bad:
                res.fail(f"covering {t} (average={average}): {bad[0]}")
    return res


def suite_psi_phi(fix: Fixture, modules: list[FDModule]) -> list[SuiteResult]:
    ranks = SuiteResult(f"{fix.name}/recollement.psi_phi_ranks")
    image = SuiteResult(f"{fix.name}/recollement.image_of_composite")
    trip = SuiteResult(f"{fix.name}/recollement.round_trip")
    for k, F in enumerate(modules):
        for t, c in enumerate(fix.coverings):
            ranks.cases += 1
            p, f = psi(F, c), phi(F, c)
            if p.rank() != F.dim:
                ranks.fail(f"module {k}, covering {t}: rank psi {p.rank()} != {F.dim}")
            if f.kernel_dim():
                ranks.fail(f"module {k}, covering {t}: phi has a kernel")
            image.cases += 1
            im = image_module(f @ p)
            iso = is_isomorphic(im, F)
            if im.dims != F.dims or iso.no:
                image.fail(f"module {k}, covering {t}: image of phi psi differs from the module")
            if is_cyclic_class(F):
                trip.cases += 1
                r = reconstruct(slice_module(F, c))
                got = is_isomorphic(r.module, F)
                if not r.consistent or not got.yes:
                    trip.fail(f"module {k}, covering {t}: consistent={r.consistent}, iso={got.status}")
    return [ranks, image, trip]


def suite_lemma(fix: Fixture, modules: list[FDModule], rng: random.Random) -> list[SuiteResult]:
    comp = SuiteResult(f"{fix.name}/recollement.nu_composite")
    natural = SuiteResult(f"{fix.name}/recollement.nu_naturality")
    triangles = SuiteResult(f"{fix.name}/recollement.triangle_identities")
    for k, (F, G) in enumerate(zip(modules, modules[1:] + modules[:1])):
        for t, c in enumerate(fix.coverings):
            for I in c:
                comp.cases += 1
                if not nu(restrict(F, I), I).same_matrices(unit(F, I) @ counit(F, I)):
                    comp.fail(f"module {k}, set {sorted(I)}: nu differs from unit after counit")
                N, M = restrict(F, I), restrict(G, I)
                h = random_hom(N, M, rng)
                natural.cases += 1
                left = coinduce_hom(h, I) @ nu(N, I)
                right = nu(M, I) @ induce_hom(h, I)
                if not left.same_matrices(right):
                    natural.fail(f"pair {k}, set {sorted(I)}: naturality square does not commute")
                for label, ok in triangle_identities(F, N, I):
                    triangles.cases += 1
                    if not ok:
                        triangles.fail(f"module {k}, set {sorted(I)}: {label}")
    return [comp, natural, triangles]


def triangle_identities(F: FDModule, N: FDModule, I) -> list[tuple[str, bool]]:
    """The four triangle identities for induction |- restriction |- coinduction."""
    out = []
    jN = induce(N, I)
    out.append(("counit(j_! N) . j_!(unit N) = id",
                (counit(jN, I) @ induce_hom(induction_unit(N, I), I)).is_identity()))
    out.append(("j*(counit F) . unit(j* F) = id",
                (restrict_hom(counit(F, I), I) @ induction_unit(restrict(F, I), I)).is_identity()))
    out.append(("counit(j* F) . j*(unit F) = id",
                (coinduction_counit(restrict(F, I), I) @ restrict_hom(unit(F, I), I)).is_identity()))
    cN = coinduce(N, I)
    out.append(("j_*(counit N) . unit(j_* N) = id",
                (coinduce_hom(coinduction_counit(N, I), I) @ unit(cN, I)).is_identity()))
    return out


def run_property_suites(seed: int, modules_per_algebra: int = 4,
                        fixtures: list[Fixture] | None = None) -> list[SuiteResult]:
    rng = random.Random(seed)
    out = []
    for fix in fixtures or shipped_fixtures():
        modules = sample_modules(fix, rng, modules_per_algebra)
        out += suite_module_checks(fix, modules, rng)
        out.append(suite_splitting(fix))
        out += suite_psi_phi(fix, modules)
        out += suite_lemma(fix, modules, rng)
    return out
