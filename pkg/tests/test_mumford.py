import random
from fractions import Fraction

import pytest

from surfsat import (
    Configuration,
    ContractionContext,
    Divisor,
    PreconditionError,
    contract,
    induced_product,
    pullback,
)

from support import random_negative_definite_configuration


def a1_setup():
    # one (-2)-curve E, one strict curve C meeting it once
    config = Configuration.build([("E", -2), ("C", -1)], [(0, 1, 1)])
    return config, ContractionContext(config, frozenset({0}))


def a2_setup():
    # chain of two (-2)-curves; C meets the first end once
    config = Configuration.build(
        [("E1", -2), ("E2", -2), ("C", -1)],
        [(0, 1, 1), (0, 2, 1)],
    )
    return config, ContractionContext(config, frozenset({0, 1}))


class TestPullback:
    def test_a1_coefficient(self):
        _, ctx = a1_setup()
        pb = pullback(ctx, Divisor.of(1))
        assert pb.coefficient(0) == Fraction(1, 2)
        assert pb.coefficient(1) == 1

    def test_a2_coefficients(self):
        _, ctx = a2_setup()
        pb = pullback(ctx, Divisor.of(2))
        assert pb.coefficient(0) == Fraction(2, 3)
        assert pb.coefficient(1) == Fraction(1, 3)

    def test_disjoint_strict_gets_zero(self):
        config = Configuration.build([("E", -2), ("C", 3)])
        ctx = ContractionContext(config, frozenset({0}))
        assert pullback(ctx, Divisor.of(1)) == Divisor.of(1)

    def test_rejects_divisor_meeting_exceptional_support(self):
        _, ctx = a1_setup()
        with pytest.raises(PreconditionError):
            pullback(ctx, Divisor.of(0))

    def test_rejects_indefinite_exceptional_set(self):
        config = Configuration.build([("E", 0), ("C", -1)], [(0, 1, 1)])
        with pytest.raises(PreconditionError):
            ContractionContext(config, frozenset({0}))

    def test_orthogonality_on_random_exceptional_sets(self):
        rng = random.Random(47)
        for _ in range(200):
            k = rng.randint(1, 5)
            exc = random_negative_definite_configuration(rng, k)
            # append one strict curve with random non-negative meetings
            curves = [
                (exc.nodes[i].name, exc.gram.entry(i, i)) for i in range(k)
            ]
            curves.append(("C", rng.randint(-3, 3)))
            inters = [
                (i, j, exc.gram.entry(i, j))
                for i in range(k)
                for j in range(i + 1, k)
                if exc.gram.entry(i, j) != 0
            ]
            inters += [
                (i, k, rng.randint(0, 2)) for i in range(k) if rng.random() < 0.7
            ]
            config = Configuration.build(curves, inters)
            ctx = ContractionContext(config, frozenset(range(k)))
            pb = pullback(ctx, Divisor.of(k))
            for j in range(k):
                assert config.intersection_number(pb, Divisor.of(j)) == 0

    def test_effective_support_is_full_preimage(self):
        rng = random.Random(53)
        for _ in range(100):
            k = rng.randint(1, 5)
            exc = random_negative_definite_configuration(rng, k)
            curves = [
                (exc.nodes[i].name, exc.gram.entry(i, i)) for i in range(k)
            ]
            curves += [("C1", rng.randint(-2, 2)), ("C2", rng.randint(-2, 2))]
            inters = [
                (i, j, exc.gram.entry(i, j))
                for i in range(k)
                for j in range(i + 1, k)
                if exc.gram.entry(i, j) != 0
            ]
            for s in (k, k + 1):
                inters += [
                    (i, s, rng.randint(0, 2))
                    for i in range(k)
                    if rng.random() < 0.5
                ]
            config = Configuration.build(curves, inters)
            ctx = ContractionContext(config, frozenset(range(k)))
            strict = Divisor({k: rng.randint(0, 3), k + 1: rng.randint(0, 3)})
            pb = pullback(ctx, strict)
            assert pb.is_effective()
            expected = set(strict.support())
            for part in ctx.components():
                meets = any(
                    config.intersection_number(strict, Divisor.of(j)) > 0
                    for j in part
                )
                if meets:
                    expected |= part
                else:
                    assert all(pb.coefficient(j) == 0 for j in part)
            assert pb.support() == expected


class TestInducedProduct:
    def test_a1_self_product(self):
        config = Configuration.build([("E", -2), ("C", -1)], [(0, 1, 1)])
        ctx = ContractionContext(config, frozenset({0}))
        d = Divisor.of(1)
        assert induced_product(ctx, d, d) == Fraction(-1, 2)

    def test_disjoint_divisor_keeps_ambient_product(self):
        config = Configuration.build([("E", -3), ("C", 2)])
        ctx = ContractionContext(config, frozenset({0}))
        d = Divisor.of(1)
        assert induced_product(ctx, d, d) == 2

    def test_projection_formula(self):
        rng = random.Random(59)
        for _ in range(50):
            k = rng.randint(1, 4)
            exc = random_negative_definite_configuration(rng, k)
            curves = [
                (exc.nodes[i].name, exc.gram.entry(i, i)) for i in range(k)
            ]
            curves += [("C1", rng.randint(-2, 2)), ("C2", rng.randint(-2, 2))]
            inters = [
                (i, j, exc.gram.entry(i, j))
                for i in range(k)
                for j in range(i + 1, k)
                if exc.gram.entry(i, j) != 0
            ]
            for s in (k, k + 1):
                inters += [
                    (i, s, rng.randint(0, 2))
                    for i in range(k)
                    if rng.random() < 0.5
                ]
            if rng.random() < 0.5:
                inters.append((k, k + 1, rng.randint(0, 2)))
            config = Configuration.build(curves, inters)
            ctx = ContractionContext(config, frozenset(range(k)))
            d1, d2 = Divisor.of(k), Divisor.of(k + 1)
            assert induced_product(ctx, d1, d2) == config.intersection_number(
                pullback(ctx, d1), d2
            )


class TestContract:
    def test_drop_disjoint_minus_one_curve(self):
        config = Configuration.build([("E", -1), ("A", 2), ("B", 0)], [(1, 2, 1)])
        result = contract(config, [{0}])
        assert result.ambient_ids == (1, 2)
        assert result.configuration.gram == config.gram_on([1, 2])
        assert [s.contracted_names for s in result.singular_points] == [("E",)]

    def test_induced_gram_from_example(self):
        config = Configuration.build([("C", -1), ("E", -2)], [(0, 1, 1)])
        result = contract(config, [{1}])
        assert result.configuration.gram.rows == ((Fraction(-1, 2),),)

    def test_contract_nothing_is_identity(self):
        config = Configuration.build([("A", -1)])
        result = contract(config, [])
        assert result.configuration == config
        assert result.singular_points == ()

    def test_rejects_non_negative_definite_part(self):
        config = Configuration.build([("A", 0), ("B", -1)])
        with pytest.raises(PreconditionError, match="not negative definite"):
            contract(config, [{0}])

    def test_rejects_disconnected_part(self):
        config = Configuration.build([("A", -1), ("B", -1)])
        with pytest.raises(PreconditionError, match="not connected"):
            contract(config, [{0, 1}])

    def test_contract_twice_equals_contract_union(self):
        rng = random.Random(61)
        for _ in range(40):
            exc = random_negative_definite_configuration(rng, 4)
            curves = [
                (exc.nodes[i].name, exc.gram.entry(i, i)) for i in range(4)
            ] + [("C", rng.randint(-2, 2))]
            inters = [
                (i, j, exc.gram.entry(i, j))
                for i in range(4)
                for j in range(i + 1, 4)
                if exc.gram.entry(i, j) != 0
            ] + [(i, 4, rng.randint(0, 1)) for i in range(4)]
            config = Configuration.build(curves, inters)
            parts = config.connected_components(range(4))
            if len(parts) < 2:
                continue
            both = contract(config, list(parts))
            first = contract(config, [parts[0]])
            remap = {old: new for new, old in enumerate(first.ambient_ids)}
            rest = [frozenset(remap[i] for i in p) for p in parts[1:]]
            second = contract(first.configuration, rest)
            assert second.configuration.gram == both.configuration.gram

    def test_definiteness_transfer(self):
        # inertia of the contracted matrix plus the exceptional block equals
        # the ambient inertia on strict curves + all of E
        rng = random.Random(67)
        for _ in range(200):
            k = rng.randint(1, 4)
            m = rng.randint(1, 3)
            exc = random_negative_definite_configuration(rng, k)
            curves = [
                (exc.nodes[i].name, exc.gram.entry(i, i)) for i in range(k)
            ] + [(f"C{t}", rng.randint(-4, 2)) for t in range(m)]
            inters = [
                (i, j, exc.gram.entry(i, j))
                for i in range(k)
                for j in range(i + 1, k)
                if exc.gram.entry(i, j) != 0
            ]
            for s in range(k, k + m):
                inters += [
                    (i, s, rng.randint(0, 2))
                    for i in range(k)
                    if rng.random() < 0.5
                ]
            for s in range(k, k + m):
                for t in range(s + 1, k + m):
                    if rng.random() < 0.3:
                        inters.append((s, t, rng.randint(0, 2)))
            config = Configuration.build(curves, inters)
            parts = config.connected_components(range(k))
            result = contract(config, list(parts))
            induced = result.configuration.gram.inertia()
            ambient = config.gram.inertia()
            # the pullbacks of the strict curves together with E form a
            # block-diagonal basis of the ambient span
            assert ambient == (induced[0], induced[1] + k, induced[2])
            assert result.configuration.gram.is_negative_definite() == (
                config.gram.is_negative_definite()
            )
            assert result.configuration.gram.is_negative_semidefinite() == (
                config.gram.is_negative_semidefinite()
            )
