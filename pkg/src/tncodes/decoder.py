"""Exact maximum-likelihood decoding by tensor contraction.

For a syndrome s the per-class coset probabilities are obtained by
contracting the code network against a product of rank-one error tensors,
one per physical qubit: factor values are the noise probabilities of the
letters shifted by the pure error realising s.  The class of maximal mass
names the best correction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .code import (
    StabilizerCode,
    all_classes,
    class_representative,
    compute_destabilizers,
    pure_error,
)
from .engine import (
    TAG_PHYSICAL,
    CosetTensor,
    Leg,
    TensorGraph,
    code_to_coset_tensor,
    execute_plan,
    plan_order,
    transpose_to,
)
from .network import NetworkSpec, build_full
from .pauli import LETTER_TO_XZ, XZ_TO_LETTER, PauliString


@dataclass(frozen=True)
class ErrorModel:
    """Independent per-qubit letter distributions, rows (I, X, Y, Z)."""

    probs: np.ndarray  # shape (n, 4), rows sum to 1

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=float)
        object.__setattr__(self, "probs", probs)
        if probs.ndim != 2 or probs.shape[1] != 4:
            raise ValueError("probs must have shape (n, 4)")
        if (probs < -1e-12).any() or (probs > 1 + 1e-12).any():
            raise ValueError("probabilities must lie in [0, 1]")
        if not np.allclose(probs.sum(axis=1), 1.0, atol=1e-9):
            raise ValueError("per-qubit probabilities must sum to 1")

    @property
    def n(self) -> int:
        return self.probs.shape[0]


def depolarizing_model(n: int, p: float) -> ErrorModel:
    """i.i.d. depolarizing: identity with 1-p, each of X,Y,Z with p/3."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p={p} outside [0, 1]")
    row = np.array([1.0 - p, p / 3.0, p / 3.0, p / 3.0])
    return ErrorModel(np.tile(row, (n, 1)))


# letter products e*g as letter indices (phases irrelevant here)
_LMUL = np.zeros((4, 4), dtype=np.intp)
for _e in range(4):
    for _g in range(4):
        _ex, _ez = LETTER_TO_XZ[_e]
        _gx, _gz = LETTER_TO_XZ[_g]
        _LMUL[_e, _g] = XZ_TO_LETTER[(_ex ^ _gx, _ez ^ _gz)]


def error_factors(model: ErrorModel, pure: PauliString) -> list:
    """Rank-one factors: factor_q[g] = prob(letter(pure_q) * letter(g))."""
    if model.n != pure.n:
        raise ValueError(f"model n={model.n} != pure error n={pure.n}")
    return [model.probs[q][_LMUL[pure.letter(q)]] for q in range(pure.n)]


@dataclass
class DecodeResult:
    chosen: tuple
    correction: PauliString
    chi: dict


class Decoder:
    """Reusable exact ML decoder for one network spec.

    The contraction plan is built once on the bond graph (error factors
    are absorbed into node tensors per query, which does not change the
    graph shape).
    """

    def __init__(self, spec: NetworkSpec):
        built = build_full(spec)
        self.spec = spec
        self.code = compute_destabilizers(built.code)
        self.norm_exponent = built.norm_exponent
        self.k = self.code.k

        bond = {}
        for t, (a, b) in enumerate(spec.edges):
            bond[a.key()] = bond[b.key()] = ("b", t)
        qubit_of = {ref.key(): q for q, ref in enumerate(spec.dangling)}

        self._nodes = []  # (dense float tensor, bond labels, dangling axes/qubits)
        graph = TensorGraph()
        for nid in spec.node_order():
            node = spec.node_code(nid)
            tensor = code_to_coset_tensor(node).to_dense(np.int64)
            data = tensor.data.astype(float)
            labels = [("l", nid, a) for a in range(node.k)]
            axes_open = []
            for leg in range(node.n):
                key = (nid, leg)
                if key in bond:
                    labels.append(bond[key])
                else:
                    axes_open.append((node.k + leg, qubit_of[key]))
                    labels.append(("q", qubit_of[key]))
            self._nodes.append((nid, data, labels, axes_open))
            # plan on the reduced shape: dangling legs get absorbed pre-plan
            reduced_legs = [Leg(4, TAG_PHYSICAL)] * (len(labels) - len(axes_open))
            reduced_labels = [lab for lab in labels if lab[0] != "q"]
            graph.add(nid, CosetTensor(reduced_legs, np.zeros((4,) * len(reduced_legs))),
                      reduced_labels)
        self._graph_template = graph
        self._plan = plan_order(graph, *self._strategy(spec))
        self._wanted = [("l", nid, a) for nid in spec.logical_order
                        for a in range(spec.node_code(nid).k)]

    @staticmethod
    def _strategy(spec: NetworkSpec):
        if spec.meta.get("plan_strategy") == "linear":
            return "linear", spec.meta["sweep"]
        return "greedy", None

    def chi(self, s, model: ErrorModel, pure: PauliString | None = None) -> dict:
        """Exact chi(L, s) for every class; true probabilities."""
        if len(s) != self.code.r:
            raise ValueError(f"syndrome length {len(s)} != r {self.code.r}")
        if pure is None:
            pure = pure_error(self.code, tuple(s))
        factors = error_factors(model, pure)

        graph = TensorGraph()
        for nid, data, labels, axes_open in self._nodes:
            cur = data
            # absorb factors innermost-axis-last to keep axis indices valid
            for axis, q in sorted(axes_open, reverse=True):
                cur = np.tensordot(cur, factors[q], axes=([axis], [0]))
            legs = [Leg(4, TAG_PHYSICAL)] * cur.ndim
            graph.add(nid, CosetTensor(legs, cur),
                      [lab for lab in labels if lab[0] != "q"])
        tensor, labels = execute_plan(graph, self._plan)
        tensor = transpose_to(tensor, labels, self._wanted)
        arr = tensor.to_dense(float).data * 0.5 ** self.norm_exponent
        return {cls: float(arr[cls]) for cls in all_classes(self.k)}

    def decode(self, s, model: ErrorModel) -> DecodeResult:
        table = self.chi(s, model)
        # maximal mass; ties go to the lexicographically smallest class
        best = max(table.values())
        chosen = next(cls for cls in sorted(table) if table[cls] == best)
        correction = class_representative(self.code, chosen) * pure_error(self.code, tuple(s))
        return DecodeResult(chosen, correction, table)


def chi(spec: NetworkSpec, s, model: ErrorModel) -> dict:
    return Decoder(spec).chi(s, model)


def ml_decode(spec: NetworkSpec, s, model: ErrorModel) -> DecodeResult:
    return Decoder(spec).decode(s, model)
