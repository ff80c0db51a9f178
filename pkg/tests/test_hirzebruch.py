"""Intersection theory on Hirzebruch surfaces and the ample-model moves."""

import random

import pytest

from a1fib import (AmpleModel, HClass, ModelError, adjunction_defect,
                   ample_model, ample_models, canonical, contact_system_dim,
                   contact_system_dim_via_h0, elementary_transform, h0,
                   h1_p1_dim, h1_p1_projective_dim, intersect,
                   ruling_swap_trace, self_intersection)


# -- intersection form ---------------------------------------------------------

def test_boundary_self_intersection_on_f2():
    assert self_intersection(HClass(2, 1, 4)) == 6


def test_fiber_squares_to_zero():
    assert intersect(HClass(3, 0, 1), HClass(3, 0, 1)) == 0


def test_section_pairings_across_models():
    for d in range(2, 11):
        for i in range(1, d // 2 + 1):
            n = d - 2 * i
            section = HClass(n, 1, d - i)
            assert intersect(section, HClass(n, 1, 0)) == i
            assert intersect(section, HClass(n, 1, n)) == d - i


def test_intersect_rejects_mixed_surfaces():
    with pytest.raises(ValueError):
        intersect(HClass(1, 1, 0), HClass(2, 1, 0))


def test_intersection_form_is_symmetric_and_bilinear():
    rng = random.Random(2)
    for _ in range(300):
        n = rng.randint(0, 5)
        a = HClass(n, rng.randint(-4, 4), rng.randint(-4, 4))
        b = HClass(n, rng.randint(-4, 4), rng.randint(-4, 4))
        c = HClass(n, rng.randint(-4, 4), rng.randint(-4, 4))
        assert intersect(a, b) == intersect(b, a)
        ab = HClass(n, a.a + b.a, a.b + b.b)
        assert intersect(ab, c) == intersect(a, c) + intersect(b, c)


# -- canonical class -----------------------------------------------------------

def test_canonical_classes():
    assert canonical(0) == HClass(0, -2, -2)
    assert canonical(1) == HClass(1, -2, -3)
    assert self_intersection(canonical(1)) == 8


def test_adjunction_for_all_models():
    for d in range(2, 13):
        for model in ample_models(d):
            assert adjunction_defect(model) == -2


# -- section counts ------------------------------------------------------------

def test_h0_of_fiber_multiples():
    for n in (0, 1, 2, 3):
        for m in range(0, 11):
            assert h0(HClass(n, 0, m)) == m + 1


def test_h0_of_boundary_plus_fibers():
    for d in range(2, 9):
        for model in ample_models(d):
            for m in range(0, 9):
                cls = HClass(model.n, 1, model.section_class.b + m)
                assert h0(cls) == d + 2 * m + 2


def test_h0_negative_section_coefficient_vanishes():
    assert h0(HClass(2, -1, 5)) == 0


def test_h0_difference_counts_restriction():
    for d in range(2, 9):
        for model in ample_models(d):
            for m in range(0, 9):
                with_b = HClass(model.n, 1, model.section_class.b + m)
                without_b = HClass(model.n, 0, m)
                assert h0(with_b) - h0(without_b) == d + m + 1


# -- dimension counts ----------------------------------------------------------

def test_contact_system_dimension_recorded_value():
    assert contact_system_dim(2, 3) == 3
    assert contact_system_dim(4, 1) == 1
    assert contact_system_dim(5, 0) == 0


def test_contact_system_dimension_conventions_differ_by_one():
    for d in range(2, 7):
        for m in range(0, 6):
            assert contact_system_dim_via_h0(d, m) == contact_system_dim(d, m) + 1


def test_h1_dimensions():
    assert h1_p1_dim(2) == 1
    assert h1_p1_projective_dim(2) == 0
    assert h1_p1_dim(3) == 2
    assert h1_p1_dim(5) == 4
    for d in range(2, 11):
        assert h1_p1_dim(d) == d - 1
    with pytest.raises(ValueError):
        h1_p1_dim(1)


# -- ample models ----------------------------------------------------------------

def test_ample_models_enumeration():
    assert [(m.n, m.section_class.b) for m in ample_models(2)] == [(0, 1)]
    assert [(m.n, m.section_class.b) for m in ample_models(6)] == [(4, 5), (2, 4), (0, 3)]
    assert [m.n for m in ample_models(5)] == [3, 1]
    for d in range(2, 13):
        for model in ample_models(d):
            assert self_intersection(model.section_class) == d
            assert model.d >= model.n + 2
            assert (model.d - model.n) % 2 == 0


def test_ample_model_validation():
    with pytest.raises(ModelError):
        AmpleModel(1, HClass(1, 1, 2), 4)  # parity broken
    with pytest.raises(ModelError):
        AmpleModel(4, HClass(4, 1, 4), 4)  # not ample
    with pytest.raises(ValueError):
        ample_models(1)


# -- elementary transformations --------------------------------------------------

def test_zero_transformations_is_identity():
    model = ample_model(6, 2)
    assert elementary_transform(model, True, count=0) == model


def test_pair_moves_walk_the_model_family():
    for d in range(2, 13):
        models = ample_models(d)
        for model in models:
            # walk down to n = d - 2 and up to the minimal n in pair steps,
            # checking the boundary self-intersection at every stop
            current = model
            while current.n + 2 <= d - 2:
                current = elementary_transform(current, True, count=2)
                assert current.d == d
                assert self_intersection(current.section_class) == d
            current = model
            while current.n - 2 >= 0:
                current = elementary_transform(current, False, count=2)
                assert current.d == d
                assert self_intersection(current.section_class) == d


def test_single_step_is_rejected_for_parity():
    with pytest.raises(ModelError, match="parity"):
        elementary_transform(ample_model(4, 2), False)


def test_steps_cannot_drive_n_negative():
    with pytest.raises(ModelError, match="negative"):
        elementary_transform(ample_model(4, 0), False, count=2)


def test_ruling_swap_trace_endpoints_and_contacts():
    for d in range(2, 11):
        for i in range(1, d // 2 + 1):
            trace = ruling_swap_trace(d, i)
            n0, start = trace[0]
            assert n0 == d - 2 * i
            assert self_intersection(start) == d
            assert intersect(start, HClass(n0, 1, 0)) == i
            assert intersect(start, HClass(n0, 1, n0)) == d - i
            n_end, end = trace[-1]
            assert (n_end, end.a, end.b) == (0, 1, 0)
            assert len(trace) == d + 1  # i steps up, d - i steps down
