import random

import pytest

from oracles import membership_oracle, module_degree_span, syzygy_space_dimension
from ttgkit import (
    GradedRing,
    HomIdeal,
    InputError,
    groebner_basis,
    ideal_contains,
    ideal_intersection,
    ideal_quotient,
    module_syzygies,
    normal_form,
)
from ttgkit.complexes import random_homogeneous
from ttgkit.fields import Field
from ttgkit.groebner import FreeContext, poly_to_vec, syzygy_module


def test_normal_form_examples(ring_q):
    x, y = ring_q.variable("x"), ring_q.variable("y")
    assert normal_form(x * y, HomIdeal(ring_q, [x])).is_zero()
    assert normal_form(ring_q.one(), HomIdeal(ring_q, [x])) == ring_q.one()
    assert normal_form(x * x, HomIdeal(ring_q, [x - y, y * y])).is_zero()


def test_normal_form_idempotent(ring_q):
    rng = random.Random(11)
    for _ in range(20):
        f = random_homogeneous(ring_q, rng, max_degree=10)
        gens = [random_homogeneous(ring_q, rng, max_degree=6) for _ in range(2)]
        ideal = HomIdeal(ring_q, gens)
        once = normal_form(f, ideal)
        assert normal_form(once, ideal) == once


def test_normal_form_ring_mismatch(ring_q, ring_f5):
    with pytest.raises(InputError):
        normal_form(ring_f5.variable("x"), HomIdeal(ring_q, [ring_q.variable("x")]))


def test_groebner_examples(ring_q):
    x, y = ring_q.variable("x"), ring_q.variable("y")
    assert set(map(str, groebner_basis(HomIdeal(ring_q, [x, y])))) == {"x", "y"}
    assert set(map(str, groebner_basis(HomIdeal(ring_q, [x - y, y * y])))) == {
        "x-y", "y^2"
    }
    assert groebner_basis(HomIdeal(ring_q, [])) == ()


def test_buchberger_criterion_spoly_reduction(ring_q):
    rng = random.Random(5)
    for _ in range(10):
        gens = [random_homogeneous(ring_q, rng, max_degree=8) for _ in range(2)]
        ideal = HomIdeal(ring_q, gens)
        basis = groebner_basis(ideal)
        for i, g in enumerate(basis):
            for h in basis[:i]:
                (eg, cg), (eh, ch) = g.lead(), h.lead()
                lcm = tuple(max(a, b) for a, b in zip(eg, eh))
                mg = {tuple(l - a for l, a in zip(lcm, eg)): 1}
                mh = {tuple(l - a for l, a in zip(lcm, eh)): 1}
                spoly = g * ring_q.from_terms(mg).scale(ring_q.field.inv(cg)) - (
                    h * ring_q.from_terms(mh).scale(ring_q.field.inv(ch))
                )
                assert ideal.normal_form(spoly).is_zero()


def test_groebner_deterministic_and_cached(ring_q):
    x, y = ring_q.variable("x"), ring_q.variable("y")
    a = HomIdeal(ring_q, [x * x - y * y, x * y])
    b = HomIdeal(ring_q, [x * x - y * y, x * y])
    assert [str(g) for g in groebner_basis(a)] == [str(g) for g in groebner_basis(b)]
    assert a.groebner_basis() is b.groebner_basis()  # memoized per ideal value


def test_ideal_contains(ring_q):
    x, y = ring_q.variable("x"), ring_q.variable("y")
    assert ideal_contains(HomIdeal(ring_q, [x, y]), HomIdeal(ring_q, [x]))
    assert not ideal_contains(HomIdeal(ring_q, [x]), HomIdeal(ring_q, [x, y]))
    assert ideal_contains(HomIdeal(ring_q, [x - y]), HomIdeal(ring_q, [x * x - y * y]))


def test_ideal_quotient_examples(ring_q):
    x, y = ring_q.variable("x"), ring_q.variable("y")
    assert ideal_quotient(HomIdeal(ring_q, [x]), x).is_unit()
    assert ideal_quotient(HomIdeal(ring_q, []), x).is_zero()
    assert ideal_quotient(HomIdeal(ring_q, [x * y]), x).same_ideal(HomIdeal(ring_q, [y]))
    with pytest.raises(InputError):
        ideal_quotient(HomIdeal(ring_q, [x]), ring_q.zero())


def test_ideal_quotient_soundness_random(ring_q):
    rng = random.Random(23)
    for _ in range(10):
        gens = [random_homogeneous(ring_q, rng, max_degree=6) for _ in range(2)]
        f = random_homogeneous(ring_q, rng, max_degree=4)
        ideal = HomIdeal(ring_q, gens)
        quotient = ideal_quotient(ideal, f)
        for g in quotient.generators:
            assert ideal.normal_form(g * f).is_zero()


def test_module_syzygies_examples(ring_q):
    x, y = ring_q.variable("x"), ring_q.variable("y")
    syz = module_syzygies([[x], [y]], (2, 2), (0,), ring_q)
    assert len(syz) == 1
    a, b = syz[0]
    assert (a * x + b * y).is_zero()
    # identity map has no syzygies
    assert module_syzygies([[ring_q.one()]], (0,), (0,), ring_q) == []
    # zero row: kernel is the full free module
    syz = module_syzygies([[ring_q.zero()]], (0,), (0,), ring_q)
    assert len(syz) == 1 and str(syz[0][0]) == "1"


def test_module_syzygies_kill_matrix_exactly(ring_q):
    x, y = ring_q.variable("x"), ring_q.variable("y")
    matrix = [[x * x, x * y], [x * y, y * y], [ring_q.zero(), x * x - y * y]]
    rows, cols = (4, 4, 4), (0, 0)
    syzygies = module_syzygies(matrix, rows, cols, ring_q)
    assert syzygies
    for syz in syzygies:
        for j in range(2):
            total = ring_q.zero()
            for i in range(3):
                total = total + syz[i] * matrix[i][j]
            assert total.is_zero()


def test_module_syzygies_rejects_inhomogeneous(ring_q):
    x, y = ring_q.variable("x"), ring_q.variable("y")
    with pytest.raises(InputError):
        module_syzygies([[x + x * x]], (2,), (0,), ring_q)
    with pytest.raises(InputError):
        module_syzygies([[x]], (4,), (0,), ring_q)  # degree rule violated


def test_ideal_intersection(ring_q):
    x, y = ring_q.variable("x"), ring_q.variable("y")
    inter = ideal_intersection(HomIdeal(ring_q, [x]), HomIdeal(ring_q, [y]))
    assert inter.same_ideal(HomIdeal(ring_q, [x * y]))
    inter2 = ideal_intersection(HomIdeal(ring_q, [x, y]), HomIdeal(ring_q, [x - y]))
    for g in inter2.generators:
        assert HomIdeal(ring_q, [x - y]).contains_poly(g)
        assert HomIdeal(ring_q, [x, y]).contains_poly(g)


RINGS = [
    ("q2", lambda: GradedRing(Field(0), (("x", 2), ("y", 2)))),
    ("q24", lambda: GradedRing(Field(0), (("x", 2), ("y", 4)))),
    ("f5", lambda: GradedRing(Field(5), (("x", 2), ("y", 2), ("z", 4)))),
]


@pytest.mark.parametrize("label,make", RINGS)
def test_membership_matches_oracle(label, make):
    ring = make()
    rng = random.Random(hash(label) & 0xFFFF)
    agree = 0
    for _ in range(40):
        gens = [random_homogeneous(ring, rng, max_degree=8)
                for _ in range(rng.randint(1, 3))]
        ideal = HomIdeal(ring, gens)
        f = random_homogeneous(ring, rng, max_degree=12)
        if rng.random() < 0.4:
            # force some members: multiply a generator by a random form
            f = gens[0] * random_homogeneous(ring, rng, max_degree=4)
        engine = ideal.normal_form(f).is_zero()
        oracle = membership_oracle(f, gens)
        assert engine == oracle
        agree += 1
    assert agree == 40


def test_syzygy_dimensions_match_oracle(ring_q):
    rng = random.Random(17)
    x, y = ring_q.variable("x"), ring_q.variable("y")
    for _ in range(10):
        nrows = rng.randint(2, 3)
        rows = []
        degrees = []
        for _ in range(nrows):
            f = random_homogeneous(ring_q, rng, max_degree=6)
            rows.append(poly_to_vec(f))
            degrees.append(f.homogeneous_degree())
        ctx = FreeContext(ring_q, (0,))
        syzygies, _ = syzygy_module(rows, degrees, ctx)
        syz_degrees = []
        for s in syzygies:
            (pos, expt), _ = next(iter(s.items()))
            syz_degrees.append(ring_q.weighted_degree(expt) + degrees[pos])
        # soundness: each syzygy kills the rows exactly
        for s in syzygies:
            total = ring_q.zero()
            for (pos, expt), c in s.items():
                mono = ring_q.from_terms({expt: c})
                poly = ring_q.zero()
                for (p2, e2), c2 in rows[pos].items():
                    poly = poly + ring_q.from_terms({e2: c2})
                total = total + mono * poly
            assert total.is_zero()
        # completeness, degree by degree against the nullspace oracle
        for d in range(0, 13):
            oracle_dim = syzygy_space_dimension(rows, degrees, ring_q, d)
            span = module_degree_span(
                [{(p, e): c for (p, e), c in s.items()} for s in syzygies],
                syz_degrees,
                ring_q,
                d,
            )
            assert span.rank == oracle_dim, (d, oracle_dim, span.rank)
