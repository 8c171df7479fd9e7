import random

from hypothesis import HealthCheck, assume, given, settings, strategies as st

from cornering.algebra import mckay_algebra
from cornering.checks import is_cyclic_class, mckay_coverings, random_module, shipped_fixtures
from cornering.exactla import PrimeField, use_field
from cornering.fdmod import image_module, is_isomorphic, is_zero_generated
from cornering.recollement import nu, phi, psi, reconstruct, restrict, slice_module

FIXTURES = shipped_fixtures()

fix_and_seed = st.tuples(st.sampled_from(FIXTURES), st.integers(0, 10**6))


@settings(max_examples=25, deadline=None)
@given(fix_and_seed)
def test_slice_maps_have_full_rank(case):
    fix, seed = case
    F = random_module(fix.algebra, random.Random(seed))
    for c in fix.coverings:
        assert psi(F, c).rank() == F.dim
        assert phi(F, c).kernel_dim() == 0


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(fix_and_seed)
def test_reconstruction_is_consistent_on_own_slices(case):
    # gluing starts from the distinguished vertex, so only 0-generated modules come back
    fix, seed = case
    F = random_module(fix.algebra, random.Random(seed))
    assume(is_zero_generated(F))
    r = reconstruct(slice_module(F, fix.coverings[0]))
    assert r.consistent
    assert r.module.dims == F.dims
    if is_cyclic_class(F):
        assert is_isomorphic(r.module, F).yes


@settings(max_examples=15, deadline=None)
@given(fix_and_seed)
def test_nu_image_dims_bounded_by_module(case):
    # the image of nu is a subquotient of F on the vertices of I
    fix, seed = case
    F = random_module(fix.algebra, random.Random(seed))
    for I in fix.coverings[-1]:
        im = image_module(nu(restrict(F, I), I))
        for v in I:
            assert im.dim_at(v) == F.dim_at(v)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_prime_field_mode_agrees_on_ranks(seed):
    with use_field(PrimeField(10007)):
        A = mckay_algebra(2, 4)
        F = random_module(A, random.Random(seed))
        for c in mckay_coverings(A, 2):
            assert psi(F, c).rank() == F.dim
