import random

import pytest

from oracles import hilbert_oracle
from ttgkit import GradedRing, HomIdeal, InputError
from ttgkit.fields import Field
from ttgkit.modules import (
    GradedModule,
    direct_sum_modules,
    free_module,
    generic_rank,
    is_graded_free_over_quotient,
    is_zero_localized,
    local_shift_multiset,
    quotient_module,
    shift_module,
)
from ttgkit.spectrum import PrimePoint


@pytest.fixture(scope="module")
def setup(ring_q):
    x, y = ring_q.variable("x"), ring_q.variable("y")
    primes = {
        "p0": PrimePoint.create(ring_q, "p0", [], []),
        "px": PrimePoint.create(ring_q, "px", [x], [x]),
        "py": PrimePoint.create(ring_q, "py", [y], [y]),
        "pmax": PrimePoint.create(ring_q, "pmax", [x, y], [x, y]),
    }
    return ring_q, x, y, primes


def test_annihilator_examples(setup):
    ring, x, y, primes = setup
    assert quotient_module(ring, HomIdeal(ring, [x])).annihilator().same_ideal(
        HomIdeal(ring, [x])
    )
    assert free_module(ring, (0,)).annihilator().is_zero()
    both = direct_sum_modules(
        quotient_module(ring, HomIdeal(ring, [x])),
        quotient_module(ring, HomIdeal(ring, [y])),
    )
    assert both.annihilator().same_ideal(HomIdeal(ring, [x * y]))


def test_annihilator_soundness(setup):
    ring, x, y, _ = setup
    module = GradedModule(ring, (0, 2), [{0: x * y, 1: x}, {1: y * y}])
    basis = module.rel_basis()
    for a in module.annihilator().generators:
        for i in range(len(module.gens)):
            vec = {(i, expt): c for expt, c in a.terms.items()}
            assert basis.contains(vec)


def test_zero_module_annihilator_is_unit(setup):
    ring, *_ = setup
    assert GradedModule(ring, ()).annihilator().is_unit()


def test_presentation_canonicalization(setup):
    ring, x, y, _ = setup
    module = GradedModule(ring, (0,), [{0: x}, {0: ring.zero()}, {0: x}])
    assert len(module.relations) == 1


def test_relation_homogeneity_enforced(setup):
    ring, x, y, _ = setup
    with pytest.raises(InputError):
        GradedModule(ring, (0,), [{0: x + x * y}])
    with pytest.raises(InputError):
        GradedModule(ring, (0, 1), [{0: x, 1: x}])  # mixed column degrees


def test_hilbert_examples(setup):
    ring, x, y, _ = setup
    assert free_module(ring, (0,)).hilbert_dimension(4) == 3
    mx = quotient_module(ring, HomIdeal(ring, [x]))
    assert mx.hilbert_dimension(1) == 0
    assert quotient_module(ring, HomIdeal(ring, [x, y])).hilbert_dimension(0) == 1


def test_hilbert_matches_rowreduction_oracle(setup):
    ring, x, y, _ = setup
    rng = random.Random(9)
    modules = [
        free_module(ring, (0, 2)),
        quotient_module(ring, HomIdeal(ring, [x])),
        quotient_module(ring, HomIdeal(ring, [x * y])),
        GradedModule(ring, (0, 2), [{0: x * x, 1: y}, {1: x * x}]),
        GradedModule(ring, (-2, 0), [{0: x * y - y * y}]),
    ]
    for module in modules:
        for d in range(-2, 17):
            assert module.hilbert_dimension(d) == hilbert_oracle(module, d), (module, d)
    del rng


def test_dimension_table_window(setup):
    ring, x, *_ = setup
    table = quotient_module(ring, HomIdeal(ring, [x])).dimension_table(0, 4)
    assert table.dims == (1, 0, 1, 0, 1)
    with pytest.raises(InputError):
        table.dimension(6)


def test_is_zero_localized(setup):
    ring, x, y, primes = setup
    mx = quotient_module(ring, HomIdeal(ring, [x]))
    assert is_zero_localized(mx, primes["py"]) is True
    assert is_zero_localized(mx, primes["px"]) is False
    mxy = quotient_module(ring, HomIdeal(ring, [x * y]))
    assert is_zero_localized(mxy, primes["px"]) is False
    assert is_zero_localized(GradedModule(ring, ()), primes["p0"]) is True


def test_supp_specialization_closure(setup):
    ring, x, y, primes = setup
    mx = quotient_module(ring, HomIdeal(ring, [x]))
    # px in Supp and pmax contains px, hence pmax in Supp
    assert not is_zero_localized(mx, primes["px"])
    assert not is_zero_localized(mx, primes["pmax"])


def test_generic_rank_examples(setup):
    ring, x, y, primes = setup
    mmax = quotient_module(ring, HomIdeal(ring, [x, y]))
    assert generic_rank(mmax, primes["pmax"]) == 1
    mx = quotient_module(ring, HomIdeal(ring, [x]))
    assert generic_rank(direct_sum_modules(mx, mx), primes["px"]) == 2
    cokernel = GradedModule(ring, (0,), [{0: x}, {0: y}])
    assert generic_rank(cokernel, primes["px"]) == 0


def test_generic_rank_precondition_names_offender(setup):
    ring, x, y, primes = setup
    mx = quotient_module(ring, HomIdeal(ring, [x]))
    with pytest.raises(InputError, match="y"):
        generic_rank(mx, primes["pmax"])


def test_generic_rank_additive_and_presentation_invariant(setup):
    ring, x, y, primes = setup
    rng = random.Random(4)
    mx = quotient_module(ring, HomIdeal(ring, [x]))
    m2 = direct_sum_modules(mx, shift_module(mx, 2))
    assert generic_rank(m2, primes["px"]) == 2 * generic_rank(mx, primes["px"])
    # adding a redundant relation does not change the rank
    redundant = GradedModule(ring, (0,), [{0: x}, {0: x * y}])
    assert generic_rank(redundant, primes["px"]) == generic_rank(mx, primes["px"])
    del rng


def test_graded_free_examples(setup):
    ring, x, y, primes = setup
    mmax = quotient_module(ring, HomIdeal(ring, [x, y]))
    pair = direct_sum_modules(mmax, shift_module(mmax, 1))
    assert is_graded_free_over_quotient(pair, primes["pmax"]) == [0, 1]
    assert is_graded_free_over_quotient(mmax, primes["pmax"]) == [0]
    mx = quotient_module(ring, HomIdeal(ring, [x]))
    mixed = direct_sum_modules(mx, mmax)
    assert is_graded_free_over_quotient(mixed, primes["px"]) is None
    assert is_graded_free_over_quotient(GradedModule(ring, ()), primes["px"]) == []


def test_local_shift_multiset_vs_global(setup):
    ring, x, y, primes = setup
    mmax = quotient_module(ring, HomIdeal(ring, [x, y]))
    mx = quotient_module(ring, HomIdeal(ring, [x]))
    # globally free: local and global multisets coincide
    pair = direct_sum_modules(mx, shift_module(mx, 2))
    assert local_shift_multiset(pair, primes["px"]) == [0, 2]
    assert is_graded_free_over_quotient(pair, primes["px"]) == [0, 2]
    # p-torsion summand invisible at p: local sees rank 1, global refuses
    mixed = direct_sum_modules(mx, mmax)
    assert local_shift_multiset(mixed, primes["px"]) == [0]
    assert is_graded_free_over_quotient(mixed, primes["px"]) is None


def test_module_json_round_trip_shape(setup):
    ring, x, *_ = setup
    module = quotient_module(ring, HomIdeal(ring, [x]))
    payload = module.to_json_dict()
    assert payload == {"gens": [0], "relations": [["x"]]}
