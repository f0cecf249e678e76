"""Operator-weight histograms and code distance by tensor contraction.

The indicator tensors of the network's nodes are contracted against
weight tensors attached to the dangling legs.  One weight chunk is built
per node and the chunks are chained along the network, so the weight
network contracts exactly as easily as the code network itself.  Counts
are exact integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .code import all_classes
from .engine import (
    TAG_PHYSICAL,
    TAG_WEIGHT,
    CosetTensor,
    Leg,
    TensorGraph,
    code_to_coset_tensor,
    execute_plan,
    plan_order,
    transpose_to,
)
from .network import NetworkSpec, build_full
from .pauli import LETTERS

INT64_SAFE = 1 << 62
DEFAULT_PEAK_BUDGET = 1 << 27  # entries per intermediate


@dataclass
class CosetWeightTable:
    """Exact operator counts per logical class and weight."""

    n: int
    k: int
    counts: dict  # class tuple -> {weight: count}

    def count(self, cls, w) -> int:
        return self.counts.get(tuple(cls), {}).get(w, 0)

    def total(self) -> int:
        return sum(c for by_w in self.counts.values() for c in by_w.values())

    def csv_rows(self):
        for cls in sorted(self.counts):
            label = "".join(LETTERS[g] for g in cls)
            for w in sorted(self.counts[cls]):
                yield label, w, self.counts[cls][w]


def _letter_set(alphabet) -> set:
    if alphabet is None:
        return {0, 1, 2, 3}
    out = set()
    for a in alphabet:
        out.add(LETTERS.index(a) if isinstance(a, str) else int(a))
    return out


def make_weight_tensor(n_legs: int, w_max: int, alphabet=None) -> CosetTensor:
    """Indicator connecting Pauli legs to accumulated weight.

    Legs are [w_out, w_in] + n_legs Pauli legs; the entry is 1 iff the
    Pauli word's weight equals w_out - w_in (and every letter lies in the
    alphabet, when one is given).
    """
    if n_legs < 1:
        raise ValueError("need at least one leg")
    if w_max < n_legs:
        raise ValueError(f"w_max={w_max} < n_legs={n_legs}")
    return _weight_chunk(n_legs, w_max, alphabet=alphabet)


def _weight_chunk(n_legs: int, w_max: int, alphabet=None, pin_in=False) -> CosetTensor:
    letters = _letter_set(alphabet)
    shape = (4,) * n_legs
    weight = np.zeros(shape, dtype=np.int64)
    allowed = np.ones(shape, dtype=bool)
    for axis in range(n_legs):
        idx = np.arange(4).reshape((1,) * axis + (4,) + (1,) * (n_legs - axis - 1))
        weight = weight + (idx != 0)
        ok = np.isin(np.arange(4), sorted(letters)).reshape(idx.shape)
        allowed = allowed & ok
    ws = np.arange(w_max + 1)
    if pin_in:
        diff = ws.reshape((w_max + 1,) + (1,) * n_legs)
        data = ((diff == weight[None]) & allowed[None]).astype(np.int64)
        legs = [Leg(w_max + 1, TAG_WEIGHT)]
    else:
        diff = ws[:, None] - ws[None, :]
        data = ((diff.reshape((w_max + 1, w_max + 1) + (1,) * n_legs) == weight[None, None])
                & allowed[None, None]).astype(np.int64)
        legs = [Leg(w_max + 1, TAG_WEIGHT), Leg(w_max + 1, TAG_WEIGHT)]
    legs += [Leg(4, TAG_PHYSICAL)] * n_legs
    return CosetTensor(legs, data)


def _count_bound(n: int, k: int, w_cap: int | None) -> int:
    if w_cap is None or w_cap >= n:
        return (1 << (n - k)) * (4 ** k)
    return sum(comb(n, w) * 3 ** w for w in range(w_cap + 1)) * (4 ** k)


def weight_graph(spec: NetworkSpec, w_max: int | None = None, alphabet=None,
                 dtype=None):
    """Assemble the (code tensors + weight chunks) graph for a spec.

    Returns (graph, built, wanted open labels, w cap used).
    """
    built = build_full(spec)
    code = built.code
    cap = code.n if w_max is None else min(w_max, code.n)
    if dtype is None:
        dtype = np.int64 if _count_bound(code.n, code.k, cap) < INT64_SAFE else object

    bond = {}
    for t, (a, b) in enumerate(spec.edges):
        bond[a.key()] = bond[b.key()] = ("b", t)

    graph = TensorGraph()
    chain = [nid for nid in spec.meta.get("chain", spec.node_order())
             if spec.dangling_count(nid) > 0]
    chain_pos = {nid: t for t, nid in enumerate(chain)}

    for nid in spec.node_order():
        node = spec.node_code(nid)
        tensor = code_to_coset_tensor(node).to_dense()
        if dtype is not object:
            data = tensor.data
        else:
            data = tensor.data.astype(object)
        labels = [("l", nid, a) for a in range(node.k)]
        labels += [bond.get((nid, leg), ("d", nid, leg)) for leg in range(node.n)]
        graph.add(nid, CosetTensor(tensor.legs, data), labels)

    for nid in chain:
        legs = [ref for ref in spec.dangling if ref.node == nid]
        t = chain_pos[nid]
        chunk = _weight_chunk(len(legs), cap, alphabet=alphabet,
                              pin_in=(t == len(chain) - 1))
        data = chunk.data if dtype is not object else chunk.data.astype(object)
        labels = [("w", t)] if t == len(chain) - 1 else [("w", t), ("w", t + 1)]
        labels += [("d", ref.node, ref.leg) for ref in legs]
        graph.add(("chunk", nid), CosetTensor(chunk.legs, data), labels)

    wanted = [("l", nid, a) for nid in spec.logical_order
              for a in range(spec.node_code(nid).k)]
    wanted.append(("w", 0))
    return graph, built, wanted, cap


def _plan_for(spec: NetworkSpec, graph: TensorGraph):
    strategy = spec.meta.get("plan_strategy", "greedy")
    if strategy == "linear":
        order = []
        for nid in spec.meta["sweep"]:
            if ("chunk", nid) in graph.tensors:
                order.append([nid, ("chunk", nid)])
            else:
                order.append(nid)
        return plan_order(graph, "linear", linear_order=order)
    return plan_order(graph, "greedy")


def coset_weights(spec: NetworkSpec, max_weight: int | None = None, alphabet=None,
                  peak_budget: int = DEFAULT_PEAK_BUDGET,
                  plan=None, return_plan: bool = False):
    """Exact per-class weight histogram of the built code.

    ``max_weight`` truncates the accumulated weight (counts for w <= cap
    stay exact); ``alphabet`` restricts to operators over those letters.
    """
    if alphabet is not None and 0 not in _letter_set(alphabet):
        raise ValueError("alphabet must contain I")
    graph, built, wanted, cap = weight_graph(spec, max_weight, alphabet)
    if plan is None:
        plan = _plan_for(spec, graph)
    if plan.peak_size > peak_budget:
        raise MemoryError(
            f"contraction budget exceeded: peak {plan.peak_size} > {peak_budget}")
    tensor, labels = execute_plan(graph, plan)
    tensor = transpose_to(tensor, labels, wanted)
    dense = tensor.to_dense()

    k = built.code.k
    scale = 1 << built.norm_exponent
    counts = {}
    arr = dense.data
    for cls in all_classes(k):
        by_w = {}
        vec = arr[cls]
        for w in range(cap + 1):
            val = int(vec[w])
            if val % scale:
                raise RuntimeError("counts not divisible by the pending normalization")
            if val:
                by_w[w] = val // scale
        counts[cls] = by_w
    table = CosetWeightTable(built.code.n, k, counts)
    if return_plan:
        return table, plan
    return table


def logical_profile(table: CosetWeightTable) -> dict:
    """D_w: counts over all non-identity classes, per weight."""
    identity = (0,) * table.k
    out = {}
    for cls, by_w in table.counts.items():
        if cls == identity:
            continue
        for w, c in by_w.items():
            out[w] = out.get(w, 0) + c
    return {w: out[w] for w in sorted(out)}


def distance(spec: NetworkSpec, max_weight: int | None = None, **kw) -> int:
    """First weight at which a non-identity class has support."""
    built_k = sum(spec.node_code(nid).k for nid in spec.nodes)
    if built_k < 1:
        raise ValueError("distance requires k >= 1")
    table = coset_weights(spec, max_weight=max_weight, **kw)
    profile = logical_profile(table)
    hits = [w for w, c in profile.items() if c > 0 and w > 0]
    if not hits:
        raise ValueError(
            "no logical operator found" +
            (f" within max_weight={max_weight}" if max_weight is not None else ""))
    return min(hits)


def restricted_weights(spec: NetworkSpec, alphabet, **kw) -> CosetWeightTable:
    """Counts restricted to operators whose letters all lie in ``alphabet``."""
    if 0 not in _letter_set(alphabet):
        raise ValueError("alphabet must contain I")
    return coset_weights(spec, alphabet=alphabet, **kw)


def write_histogram_csv(table: CosetWeightTable, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("class,weight,count\n")
        for label, w, c in table.csv_rows():
            fh.write(f"{label},{w},{c}\n")
