import numpy as np
import pytest

from tncodes import code as tc
from tncodes.network import (
    ContractionError,
    LegRef,
    NetworkSpec,
    NodeSpec,
    build,
    build_full,
    network_from_dict,
    network_to_dict,
    permute_legs,
    self_contract,
    tensor_product,
)
from tncodes.pauli import PauliString


def P(text):
    return PauliString.from_text(text)


class TestTensorProduct:
    def test_parameters(self):
        prod = tensor_product(tc.five_qubit(), tc.five_qubit())
        assert (prod.n, prod.k) == (10, 2)
        assert tc.validate(prod) == []

    def test_distance(self):
        prod = tensor_product(tc.five_qubit(), tc.five_qubit())
        assert tc.brute_force_distance(prod) == 3

    def test_identity_element(self):
        from tncodes.code import empty_code
        prod = tensor_product(tc.steane(), empty_code())
        assert tc.groups_equal(prod, tc.steane(), check_signs=True)


class TestSelfContract:
    def test_five_qubit_case_i(self):
        # Table rows S1, S2 witness the pair condition on the first two legs:
        # restrictions XZ and IX, product restriction XY, all distinct letters.
        new, exp = self_contract(tc.five_qubit(), 0, 1)
        assert (new.n, new.k) == (3, 1)
        assert exp == 0
        assert tc.validate(new) == []

    def test_case_iii_two_qubit(self):
        code = tc.StabilizerCode(2, (P("XX"), P("ZZ")))
        new, exp = self_contract(code, 0, 1)
        assert (new.n, new.k) == (0, 0)
        assert exp == 2

    def test_case_ii(self):
        code = tc.StabilizerCode(3, (P("ZZI"), P("IZZ")),
                                 (P("XXX"),), (P("ZII"),))
        new, exp = self_contract(code, 0, 1)
        assert exp == 1
        assert (new.n, new.k) == (1, 1)
        assert tc.validate(new) == []

    def test_logical_measured(self):
        code = tc.StabilizerCode(2, (), (P("XI"), P("IX")), (P("ZI"), P("IZ")))
        with pytest.raises(ContractionError, match="logical measured"):
            self_contract(code, 0, 1)

    def test_leg_order_symmetric(self):
        a, _ = self_contract(tc.five_qubit(), 1, 3)
        b, _ = self_contract(tc.five_qubit(), 3, 1)
        assert tc.groups_equal(a, b, check_signs=True)

    def test_k_preserved_random(self):
        rng = np.random.default_rng(7)
        done = 0
        while done < 60:
            n = int(rng.integers(4, 11))
            k = int(rng.integers(0, 3))
            code = tc.random_stabilizer_code(n, k, rng)
            i, j = (int(t) for t in rng.choice(n, size=2, replace=False))
            try:
                new, _ = self_contract(code, i, j)
            except ContractionError:
                continue
            assert new.k == k and new.n == n - 2
            assert tc.validate(new) == []
            done += 1


class TestPermuteLegs:
    def test_identity(self):
        code = permute_legs(tc.five_qubit(), range(5))
        assert tc.groups_equal(code, tc.five_qubit(), check_signs=True)

    def test_inverse(self):
        perm = [2, 0, 4, 1, 3]
        inv = [perm.index(t) for t in range(5)]
        code = permute_legs(permute_legs(tc.five_qubit(), perm), inv)
        assert code.stabilizers == tc.five_qubit().stabilizers

    def test_cyclic_preserves_distance(self):
        code = permute_legs(tc.five_qubit(), [1, 2, 3, 4, 0])
        assert tc.validate(code) == []
        assert tc.brute_force_distance(code) == 3

    def test_not_bijection(self):
        with pytest.raises(ValueError):
            permute_legs(tc.five_qubit(), [0, 0, 1, 2, 3])


class TestBuild:
    def test_single_node(self):
        spec = NetworkSpec({"a": NodeSpec("five_qubit")}, [],
                           [LegRef("a", i) for i in range(5)], ["a"])
        res = build_full(spec)
        assert res.norm_exponent == 0
        assert tc.groups_equal(res.code, tc.five_qubit(), check_signs=True)

    def test_dangling_and_edge_overlap(self):
        spec = NetworkSpec(
            {"a": NodeSpec("five_qubit"), "b": NodeSpec("purified_five_qubit")},
            [(LegRef("a", 0), LegRef("b", 0))],
            [LegRef("a", i) for i in range(5)] + [LegRef("b", i) for i in range(1, 6)],
            ["a"])
        with pytest.raises(ContractionError):
            build(spec)

    def test_missing_leg(self):
        spec = NetworkSpec({"a": NodeSpec("five_qubit")}, [],
                           [LegRef("a", i) for i in range(4)], ["a"])
        with pytest.raises(ContractionError):
            build(spec)

    def test_dangling_order_sets_qubit_order(self):
        order = [3, 1, 4, 0, 2]
        spec = NetworkSpec({"a": NodeSpec("five_qubit")}, [],
                           [LegRef("a", i) for i in order], ["a"])
        code = build(spec)
        perm = [0] * 5
        for pos, leg in enumerate(order):
            perm[leg] = pos
        assert tc.groups_equal(code, permute_legs(tc.five_qubit(), perm))

    def test_node_perm_applied(self):
        spec = NetworkSpec({"a": NodeSpec("five_qubit", (1, 2, 3, 4, 0))}, [],
                           [LegRef("a", i) for i in range(5)], ["a"])
        code = build(spec)
        assert tc.groups_equal(code, permute_legs(tc.five_qubit(), [1, 2, 3, 4, 0]))


def test_network_json_roundtrip():
    spec = NetworkSpec(
        {"a": NodeSpec("five_qubit"), "b": NodeSpec("purified_five_qubit", (1, 0, 2, 3, 4, 5))},
        [(LegRef("a", 0), LegRef("b", 0))],
        [LegRef("a", i) for i in range(1, 5)] + [LegRef("b", i) for i in range(1, 6)],
        ["a"], name="t", meta={"plan_strategy": "greedy"})
    spec2 = network_from_dict(network_to_dict(spec))
    assert tc.groups_equal(build(spec2), build(spec), check_signs=True)
    assert spec2.name == "t" and spec2.meta["plan_strategy"] == "greedy"
