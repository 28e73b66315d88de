import itertools
import random

import pytest

from gf2hyper import (
    AdmissibleTuple,
    Gf2Matrix,
    InadmissibleTuple,
    NotCharacteristic,
    Subspace,
    classify,
    enumerate_subspaces,
    generator_tuple,
    hyperinvariant_lattice,
    is_characteristic,
    is_hyperinvariant,
    is_invariant,
    is_marked,
    largest_hyperinvariant_inside,
    monotone_shift_condition,
    shifted_chain_span,
    validate_nilpotent,
)
from gf2hyper.verify import census, jordan_operator, partitions


def test_is_invariant(golden, golden_x, e):
    assert is_invariant(golden, golden_x)
    assert not is_invariant(golden, Subspace.span([e[1]], 4))
    assert is_invariant(golden, Subspace.zero(4))
    assert is_invariant(golden, Subspace.full(4))


def test_is_hyperinvariant_golden(golden, golden_x, e):
    verdict, witness = is_hyperinvariant(golden, golden_x)
    assert not verdict
    # the projection onto the short chain moves z = e1 + e3 out to e1
    assert witness.matrix.rows == (1, 0, 0, 0)
    assert witness.vector == e[0] + e[2]
    assert witness.matrix @ golden.mat == golden.mat @ witness.matrix
    assert not golden_x.contains(witness.matrix.apply(witness.vector))
    for k in range(golden.index + 1):
        assert is_hyperinvariant(golden, golden.kernel_chain[k])[0]
        assert is_hyperinvariant(golden, golden.image_chain[k])[0]
    assert is_hyperinvariant(golden, Subspace.zero(4))[0]


def test_is_characteristic_golden(golden, golden_x, e):
    verdict, complete, witness = is_characteristic(golden, golden_x)
    assert verdict and complete and witness is None
    line = Subspace.span([e[0]], 4)
    verdict, complete, witness = is_characteristic(golden, line)
    assert not verdict and complete
    assert witness is not None
    assert witness.matrix.is_invertible()
    assert witness.matrix @ golden.mat == golden.mat @ witness.matrix
    assert line.contains(witness.vector)
    assert not line.contains(witness.matrix.apply(witness.vector))
    assert is_characteristic(golden, Subspace.zero(4))[0]
    assert is_characteristic(golden, Subspace.full(4))[0]


def test_is_characteristic_methods_agree(golden):
    for s in enumerate_subspaces(4):
        if not is_invariant(golden, s):
            continue
        by_enum = is_characteristic(golden, s, method="enumerate")
        by_gens = is_characteristic(golden, s, method="generators")
        by_auto = is_characteristic(golden, s)
        assert by_enum[0] == by_gens[0] == by_auto[0]
        assert by_enum[1] and by_gens[1] and by_auto[1]


def test_is_characteristic_sampled_flagged_incomplete(golden, golden_x):
    verdict, complete, _ = is_characteristic(golden, golden_x, method="sample")
    assert verdict
    assert not complete


def test_is_characteristic_enumerate_degrades_to_sampling(golden, golden_x):
    verdict, complete, _ = is_characteristic(golden, golden_x, cap=8, method="enumerate")
    assert verdict
    assert not complete


def test_is_marked(golden, golden_x):
    assert not is_marked(golden, golden_x)
    assert is_marked(golden, Subspace.zero(4))
    assert is_marked(golden, Subspace.full(4))
    for k in range(golden.index + 1):
        assert is_marked(golden, golden.kernel_chain[k])
        assert is_marked(golden, golden.image_chain[k])


def test_shifted_chain_span_examples(golden):
    u = generator_tuple(golden)
    assert shifted_chain_span(golden, u, AdmissibleTuple((0, 0))) == Subspace.full(4)
    assert shifted_chain_span(golden, u, AdmissibleTuple((1, 3))) == Subspace.zero(4)
    assert shifted_chain_span(golden, u, AdmissibleTuple((0, 1))) == golden.kernel_chain[2]
    with pytest.raises(InadmissibleTuple):
        shifted_chain_span(golden, u, AdmissibleTuple((2, 0)))
    with pytest.raises(InadmissibleTuple):
        shifted_chain_span(golden, u, AdmissibleTuple((0, 0, 0)))
    with pytest.raises(InadmissibleTuple):
        AdmissibleTuple((-1, 0))


def test_shifted_chain_span_dimension():
    for sizes in [(1, 3), (2, 2), (1, 2, 4)]:
        f = jordan_operator(sizes)
        u = generator_tuple(f)
        for shifts in itertools.product(*(range(t + 1) for t in sizes)):
            w = shifted_chain_span(f, u, AdmissibleTuple(shifts))
            assert w.dim == sum(t - r for t, r in zip(sizes, shifts))


def test_monotone_shift_condition():
    assert monotone_shift_condition((1, 3), (0, 1))
    assert not monotone_shift_condition((1, 3), (1, 0))
    assert monotone_shift_condition((2, 2), (1, 1))
    assert not monotone_shift_condition((2, 2), (0, 1))  # equal lengths force equal shifts
    assert monotone_shift_condition((1, 3), AdmissibleTuple((0, 2)))


def test_hyperinvariant_lattice_golden(golden, e):
    lattice = set(hyperinvariant_lattice(golden))
    expected = {
        Subspace.zero(4),
        Subspace.span([e[3]], 4),
        Subspace.span([e[2], e[3]], 4),
        Subspace.span([e[0], e[3]], 4),
        Subspace.span([e[0], e[2], e[3]], 4),
        Subspace.full(4),
    }
    assert lattice == expected


def test_hyperinvariant_lattice_chain_and_trivial():
    n3 = jordan_operator((3,))
    lattice = hyperinvariant_lattice(n3)
    assert [s.dim for s in lattice] == [0, 1, 2, 3]
    zero2 = validate_nilpotent(Gf2Matrix.zeros(2, 2))
    assert [s.dim for s in hyperinvariant_lattice(zero2)] == [0, 2]


def test_lattice_members_are_exactly_the_hyperinvariant_subspaces():
    for sizes in [(1, 3), (2, 2), (1, 1, 2), (4,)]:
        f = jordan_operator(sizes)
        lattice = set(hyperinvariant_lattice(f))
        by_census = {
            s
            for s in enumerate_subspaces(f.dim)
            if is_invariant(f, s) and is_hyperinvariant(f, s)[0]
        }
        assert lattice == by_census


def test_largest_hyperinvariant_inside_golden(golden, golden_x, e):
    u = generator_tuple(golden)
    tilde = largest_hyperinvariant_inside(golden, u, golden_x)
    assert tilde == Subspace.span([e[3]], 4)
    assert largest_hyperinvariant_inside(golden, u, Subspace.full(4)) == Subspace.full(4)
    for w in hyperinvariant_lattice(golden):
        assert largest_hyperinvariant_inside(golden, u, w) == w
    with pytest.raises(NotCharacteristic):
        largest_hyperinvariant_inside(
            golden, u, Subspace.span([e[0]], 4), verify=True
        )


def test_classify_golden(golden, golden_x, e):
    report = classify(golden, golden_x)
    assert report.invariant
    assert not report.marked
    assert report.characteristic and report.characteristic_complete
    assert not report.hyperinvariant
    assert report.invariance_witness is None
    assert report.hyperinvariance_witness is not None

    kernel_report = classify(golden, golden.kernel_chain[1])
    assert kernel_report.invariant and kernel_report.marked
    assert kernel_report.characteristic and kernel_report.hyperinvariant

    rogue = classify(golden, Subspace.span([e[1]], 4))
    assert not rogue.invariant
    assert not rogue.marked and not rogue.characteristic and not rogue.hyperinvariant
    assert rogue.invariance_witness is not None


def test_hyper_iff_characteristic_and_marked_up_to_dim_5():
    for n in range(1, 6):
        for sizes in partitions(n):
            data = census(sizes)
            assert set(data.hyperinvariant) == set(data.characteristic) & set(data.marked)


def test_every_invariant_subspace_marked_when_sizes_differ_by_one():
    data = census((2, 3))
    assert set(data.marked) == set(data.invariant)


def test_projection_components_stay_inside_characteristic_subspaces():
    # classes with more than one block admit an internal splitting, so the
    # component of any member in such a class stays inside
    from gf2hyper.nilpotent import exponent_projection

    for sizes in [(1, 1, 2), (1, 2, 2), (2, 2, 3)][:2]:
        f = jordan_operator(sizes)
        u = generator_tuple(f)
        data = census(sizes)
        for s in data.characteristic:
            for mu in range(u.class_count):
                if len(u.class_indices(mu)) <= 1:
                    continue
                pi = exponent_projection(f, u, mu)
                for r in s.rows:
                    assert s.contains_bits(pi.apply_bits(r))


def test_largest_hyperinvariant_is_maximal():
    rng = random.Random(13)
    pool = []
    for n in range(2, 6):
        for sizes in partitions(n):
            for s in census(sizes).characteristic:
                pool.append((sizes, s))
    for sizes, s in rng.sample(pool, 20):
        f = jordan_operator(sizes)
        u = generator_tuple(f)
        tilde = largest_hyperinvariant_inside(f, u, s)
        assert s.contains_subspace(tilde)
        assert is_hyperinvariant(f, tilde)[0]
        for w in hyperinvariant_lattice(f):
            if s.contains_subspace(w):
                assert tilde.contains_subspace(w)


def test_characteristic_class_intersections_are_shifted_chains():
    # inside every characteristic subspace, the slice along one
    # equal-exponent summand is a power of f applied to that summand,
    # and the shift profile satisfies the monotone condition
    from gf2hyper.nilpotent import class_span

    for sizes in [(1, 3), (1, 1, 2), (2, 3), (1, 2, 2)]:
        f = jordan_operator(sizes)
        u = generator_tuple(f)
        for s in census(sizes).characteristic:
            profile = []
            for mu in range(u.class_count):
                a = u.class_exponent(mu)
                summand = class_span(f, u, mu)
                slice_ = s.intersect(summand)
                matches = [
                    c
                    for c in range(a + 1)
                    if f.powers[c].map_subspace(summand) == slice_
                ]
                assert matches, (sizes, s.rows, mu)
                profile.append((a, matches[0]))
            shifts = [c for _, c in profile]
            assert all(x <= y for x, y in zip(shifts, shifts[1:]))
            co = [a - c for a, c in profile]
            assert all(x <= y for x, y in zip(co, co[1:]))
