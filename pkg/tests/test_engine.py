import numpy as np
import pytest

from tncodes import code as tc
from tncodes.engine import (
    TAG_LOGICAL,
    TAG_PHYSICAL,
    TAG_WEIGHT,
    CosetTensor,
    Leg,
    TensorGraph,
    code_to_coset_tensor,
    contract,
    execute_plan,
    plan_order,
    trace_legs,
)
from tncodes.network import self_contract


def delta4():
    return CosetTensor([Leg(4, TAG_PHYSICAL)] * 2, np.eye(4, dtype=np.int64))


class TestCodeToCosetTensor:
    def test_five_qubit_counts(self):
        T = code_to_coset_tensor(tc.five_qubit())
        assert T.nnz == 64
        assert T.shape == (4,) * 6
        assert T.data[(0, 0, 0, 0, 0, 0)] == 1
        assert T.data[(0, 1, 3, 3, 1, 0)] == 1  # XZZXI
        assert T.data[(0, 1, 0, 0, 0, 0)] == 0

    def test_membership_random_tuples(self):
        code = tc.five_qubit()
        T = code_to_coset_tensor(code)
        from tncodes.gf2 import echelon_of
        rows = echelon_of(code.stabilizer_rows())
        rng = np.random.default_rng(0)
        for _ in range(100):
            cls = (int(rng.integers(4)),)
            letters = [int(g) for g in rng.integers(0, 4, size=5)]
            word = tc.PauliString.from_letters(letters) * tc.class_representative(code, cls)
            expect = 1 if rows.contains(word.symplectic().row()) else 0
            assert T.data[cls + tuple(letters)] == expect

    def test_budget(self):
        with pytest.raises(MemoryError):
            code_to_coset_tensor(tc.steane(), budget=16)

    def test_sparse_large_code(self):
        prod = tc.StabilizerCode  # placate linters
        from tncodes.network import tensor_product
        big = tensor_product(tc.steane(), tc.steane())
        T = code_to_coset_tensor(big)
        assert not T.is_dense
        assert T.nnz == (1 << 12) * 16


class TestContract:
    def test_counting_stabilizers(self):
        T = code_to_coset_tensor(tc.five_qubit())
        ones = CosetTensor([Leg(4, TAG_PHYSICAL)], np.ones(4, dtype=np.int64))
        acc = T
        for _ in range(5):
            acc = contract(acc, ones, [(1, 0)])
        assert list(acc.data) == [16, 16, 16, 16]

    def test_delta_pair(self):
        out = contract(delta4(), delta4(), [(0, 0), (1, 1)])
        assert out.scalar() == 4

    def test_dim_mismatch(self):
        bad = CosetTensor([Leg(3, TAG_PHYSICAL)], np.ones(3, dtype=np.int64))
        with pytest.raises(ValueError):
            contract(delta4(), bad, [(0, 0)])

    def test_weight_tag_mismatch(self):
        w = CosetTensor([Leg(4, TAG_WEIGHT)], np.ones(4, dtype=np.int64))
        with pytest.raises(ValueError):
            contract(delta4(), w, [(0, 0)])

    def test_norm_exponents_add(self):
        a = delta4()
        a.norm_exponent = 1
        b = delta4()
        b.norm_exponent = 2
        assert contract(a, b, [(0, 0)]).norm_exponent == 3

    def test_sparse_matches_dense(self):
        rng = np.random.default_rng(2)
        a = CosetTensor([Leg(4, TAG_PHYSICAL)] * 3, rng.integers(0, 3, size=(4, 4, 4)))
        b = CosetTensor([Leg(4, TAG_PHYSICAL)] * 2, rng.integers(0, 3, size=(4, 4)))
        dense = contract(a, b, [(2, 0)])
        sparse = contract(a.to_sparse(), b.to_sparse(), [(2, 0)])
        assert np.array_equal(sparse.to_dense().data, dense.data)


class TestTrace:
    def test_delta(self):
        assert trace_legs(delta4(), 0, 1).scalar() == 4

    def test_dim_mismatch(self):
        t = CosetTensor([Leg(4, TAG_PHYSICAL), Leg(3, TAG_PHYSICAL)],
                        np.ones((4, 3), dtype=np.int64))
        with pytest.raises(ValueError):
            trace_legs(t, 0, 1)

    def test_matches_symbolic_contraction(self):
        # tracing two physical legs of the indicator equals the indicator of
        # the fused code, up to the pending halvings
        code = tc.five_qubit()
        T = code_to_coset_tensor(code)
        traced = trace_legs(T, 1, 2)  # physical legs 0,1 sit at axes 1,2
        fused, exp = self_contract(code, 0, 1)
        T2 = code_to_coset_tensor(fused)
        assert np.array_equal(traced.data, T2.data * (1 << exp))


class TestPlans:
    def graph(self):
        g = TensorGraph()
        T = code_to_coset_tensor(tc.five_qubit()).to_dense()
        g.add("a", T, ["la", "p0", "p1", "p2", "p3", "p4"])
        g.add("b", code_to_coset_tensor(tc.purified_five_qubit()).to_dense(),
              ["p0", "q1", "q2", "q3", "q4", "q5"])
        return g

    def test_single_node_plan(self):
        g = TensorGraph()
        g.add("a", delta4(), ["x", "y"])
        plan = plan_order(g)
        assert plan.steps == []
        tensor, labels = execute_plan(g, plan)
        assert labels == ["x", "y"]

    def test_greedy_two_nodes(self):
        g = self.graph()
        plan = plan_order(g, "greedy")
        assert len(plan.steps) == 1
        tensor, labels = execute_plan(g, plan)
        assert set(labels) == {"la", "p1", "p2", "p3", "p4", "q1", "q2", "q3", "q4", "q5"}

    def test_linear_grouped(self):
        g = self.graph()
        plan = plan_order(g, "linear", linear_order=[["a", "b"]])
        tensor, _ = execute_plan(g, plan)
        assert tensor.size == 4 ** 10

    def test_peak_bound_recorded(self):
        g = self.graph()
        plan = plan_order(g)
        assert plan.peak_size >= 4 ** 10

    def test_self_edge_traced(self):
        g = TensorGraph()
        g.add("a", delta4(), ["x", "x"])
        tensor, labels = execute_plan(g, plan_order(g))
        assert labels == [] and tensor.scalar() == 4
