"""Numeric coset tensors and exact pairwise contraction with order planning.

A code maps to its indicator tensor: one dim-4 leg per logical qubit and
per physical qubit, entry 1 exactly on the members of the logical coset
(signs ignored).  Contraction is exact: int64 for counting networks (with
a guard that the counts fit), float64 for probability networks, python
ints behind a sparse map when counts may overflow machine words.

Tensors inside a :class:`TensorGraph` carry hashable *labels*, one per
leg; a label shared by two tensors is a bond, a repeated label on one
tensor is a pending self-trace, and a label seen once stays open.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .code import StabilizerCode, all_classes, class_representative, require_valid

# results larger than this stay in the sparse representation
DENSE_LIMIT = 4 ** 11

# letter codes are I,X,Y,Z = 0,1,2,3; bit pair (x + 2z) enumerates I,X,Z,Y
_XZ_CODE_TO_LETTER = np.array([0, 1, 3, 2], dtype=np.int64)

TAG_PHYSICAL = "p"
TAG_LOGICAL = "l"
TAG_WEIGHT = "w"


@dataclass
class Leg:
    dim: int
    tag: str


class CosetTensor:
    """Dense ndarray or sparse {index tuple: value} with tagged legs."""

    def __init__(self, legs, data, norm_exponent: int = 0):
        self.legs = list(legs)
        self.data = data
        self.norm_exponent = norm_exponent
        if isinstance(data, np.ndarray):
            if data.shape != self.shape:
                raise ValueError(f"data shape {data.shape} != legs {self.shape}")

    @property
    def shape(self):
        return tuple(leg.dim for leg in self.legs)

    @property
    def rank(self):
        return len(self.legs)

    @property
    def is_dense(self):
        return isinstance(self.data, np.ndarray)

    @property
    def size(self):
        out = 1
        for leg in self.legs:
            out *= leg.dim
        return out

    @property
    def nnz(self):
        if self.is_dense:
            return int(np.count_nonzero(self.data))
        return len(self.data)

    def to_dense(self, dtype=np.int64) -> "CosetTensor":
        if self.is_dense:
            return self
        arr = np.zeros(self.shape, dtype=dtype)
        for idx, val in self.data.items():
            arr[idx] = val
        return CosetTensor(self.legs, arr, self.norm_exponent)

    def to_sparse(self) -> "CosetTensor":
        if not self.is_dense:
            return self
        entries = {}
        for idx in zip(*np.nonzero(self.data)):
            key = tuple(int(t) for t in idx)
            entries[key] = self.data[idx].item()
        return CosetTensor(self.legs, entries, self.norm_exponent)

    def scalar(self):
        if self.rank != 0:
            raise ValueError("tensor is not rank 0")
        if self.is_dense:
            return self.data.item()
        return self.data.get((), 0)

    def __repr__(self):
        kind = "dense" if self.is_dense else f"sparse nnz={self.nnz}"
        return f"<CosetTensor {self.shape} {kind} exp={self.norm_exponent}>"


def code_to_coset_tensor(code: StabilizerCode, budget: int = 1 << 24) -> CosetTensor:
    """Indicator tensor of the code: legs [logical..., physical...].

    Entry (l_1..l_k, g_1..g_n) is 1 iff the Pauli word g lies in the coset
    selected by the logical class l.  Signs are ignored.
    """
    require_valid(code)
    n, k, r = code.n, code.k, code.r
    if (1 << r) * (4 ** k) > budget:
        raise MemoryError(f"coset tensor budget exceeded: 2^{r} * 4^{k} entries")

    group = [0]  # packed x | (z << n)
    for g in code.stabilizers:
        word = g.x | (g.z << n)
        group += [w ^ word for w in group]

    legs = [Leg(4, TAG_LOGICAL)] * k + [Leg(4, TAG_PHYSICAL)] * n
    dense = 4 ** (n + k) <= DENSE_LIMIT
    mask = (1 << n) - 1
    entries = {} if not dense else None
    arr = np.zeros((4,) * (k + n), dtype=np.int64) if dense else None

    for cls in all_classes(k):
        rep = class_representative(code, cls)
        rep_word = rep.x | (rep.z << n)
        for w in group:
            word = w ^ rep_word
            x, z = word & mask, word >> n
            letters = tuple(
                int(_XZ_CODE_TO_LETTER[((x >> q) & 1) + 2 * ((z >> q) & 1)])
                for q in range(n))
            if dense:
                arr[cls + letters] = 1
            else:
                entries[cls + letters] = 1
    return CosetTensor(legs, arr if dense else entries)


# ---------------------------------------------------------------------------
# contraction primitives


def _join_legs(a: CosetTensor, b: CosetTensor, pairs):
    for ia, ib in pairs:
        la, lb = a.legs[ia], b.legs[ib]
        if la.dim != lb.dim:
            raise ValueError(f"leg dim mismatch: {la.dim} vs {lb.dim}")
        if la.tag != lb.tag and TAG_WEIGHT in (la.tag, lb.tag):
            raise ValueError("weight legs may only pair with weight legs")
    keep_a = [t for t in range(a.rank) if t not in {ia for ia, _ in pairs}]
    keep_b = [t for t in range(b.rank) if t not in {ib for _, ib in pairs}]
    return keep_a, keep_b


def contract(a: CosetTensor, b: CosetTensor, pairs) -> CosetTensor:
    """Contract the given (leg of a, leg of b) pairs; remaining legs a then b."""
    pairs = list(pairs)
    keep_a, keep_b = _join_legs(a, b, pairs)
    legs = [a.legs[t] for t in keep_a] + [b.legs[t] for t in keep_b]
    exp = a.norm_exponent + b.norm_exponent
    out_size = 1
    for leg in legs:
        out_size *= leg.dim

    if a.is_dense and b.is_dense and out_size <= DENSE_LIMIT:
        axes_a = [ia for ia, _ in pairs]
        axes_b = [ib for _, ib in pairs]
        data = np.tensordot(a.data, b.data, axes=(axes_a, axes_b))
        return CosetTensor(legs, data, exp)

    sa, sb = a.to_sparse(), b.to_sparse()
    ia_set = [ia for ia, _ in pairs]
    ib_set = [ib for _, ib in pairs]
    buckets = {}
    for idx, val in sb.data.items():
        key = tuple(idx[t] for t in ib_set)
        buckets.setdefault(key, []).append((tuple(idx[t] for t in keep_b), val))
    out = {}
    for idx, val in sa.data.items():
        key = tuple(idx[t] for t in ia_set)
        hits = buckets.get(key)
        if not hits:
            continue
        left = tuple(idx[t] for t in keep_a)
        for right, bval in hits:
            full = left + right
            out[full] = out.get(full, 0) + val * bval
    return CosetTensor(legs, out, exp)


def trace_legs(a: CosetTensor, i: int, j: int) -> CosetTensor:
    """Diagonal sum over two legs of one tensor."""
    if i == j:
        raise ValueError("legs must differ")
    la, lb = a.legs[i], a.legs[j]
    if la.dim != lb.dim:
        raise ValueError(f"leg dim mismatch: {la.dim} vs {lb.dim}")
    keep = [t for t in range(a.rank) if t not in (i, j)]
    legs = [a.legs[t] for t in keep]
    if a.is_dense:
        out = np.asarray(np.trace(a.data, axis1=i, axis2=j))
        return CosetTensor(legs, out, a.norm_exponent)
    out = {}
    for idx, val in a.data.items():
        if idx[i] != idx[j]:
            continue
        key = tuple(idx[t] for t in keep)
        out[key] = out.get(key, 0) + val
    return CosetTensor(legs, out, a.norm_exponent)


# ---------------------------------------------------------------------------
# labelled graphs and contraction plans


@dataclass
class TensorGraph:
    """Tensors with per-leg labels; shared labels are bonds."""

    tensors: dict = field(default_factory=dict)  # id -> CosetTensor
    labels: dict = field(default_factory=dict)   # id -> list of hashables

    def add(self, nid, tensor: CosetTensor, labels):
        labels = list(labels)
        if len(labels) != tensor.rank:
            raise ValueError("one label per leg required")
        self.tensors[nid] = tensor
        self.labels[nid] = labels

    def label_dims(self):
        dims = {}
        for nid, tensor in self.tensors.items():
            for leg, lab in zip(tensor.legs, self.labels[nid]):
                if lab in dims and dims[lab] != leg.dim:
                    raise ValueError(f"label {lab} used with two dims")
                dims[lab] = leg.dim
        return dims

    def open_labels(self):
        counts = {}
        for labs in self.labels.values():
            for lab in labs:
                counts[lab] = counts.get(lab, 0) + 1
        return [lab for lab, c in counts.items() if c == 1]


@dataclass
class PlanStep:
    left: str
    right: str
    result: str
    est_size: int


@dataclass
class ContractionPlan:
    steps: list
    peak_size: int

    def to_dict(self):
        return {
            "peak_size": self.peak_size,
            "steps": [{"left": s.left, "right": s.right,
                       "result": s.result, "est_size": s.est_size}
                      for s in self.steps],
        }


def _merged_labels(labs_a, labs_b):
    """Labels of the merged tensor after bond contraction and self-traces."""
    counts = {}
    for lab in list(labs_a) + list(labs_b):
        counts[lab] = counts.get(lab, 0) + 1
    return [lab for lab, c in counts.items() if c == 1]


def plan_order(graph: TensorGraph, strategy: str = "greedy",
               linear_order=None) -> ContractionPlan:
    """Deterministic pairwise plan.

    greedy: repeatedly merge the connected pair minimising the resulting
    (rank, size); linear: fold tensors in the given node order.
    """
    dims = graph.label_dims()

    def size_of(labels):
        out = 1
        for lab in labels:
            out *= dims[lab]
        return out

    live = {nid: list(labs) for nid, labs in graph.labels.items()}
    steps = []
    peak = max((size_of(graph.labels[nid]) for nid in live), default=1)
    counter = 0

    def do_merge(a, b):
        nonlocal counter, peak
        merged = _merged_labels(live[a], live[b])
        counter += 1
        rid = f"t{counter}"
        est = size_of(merged)
        peak = max(peak, est)
        steps.append(PlanStep(a, b, rid, est))
        del live[a], live[b]
        live[rid] = merged
        return rid

    if strategy == "linear":
        if not linear_order:
            raise ValueError("linear strategy needs an order")
        # items are node ids or lists of node ids; lists merge internally first
        groups = []
        for item in linear_order:
            ids = list(item) if isinstance(item, (list, tuple)) else [item]
            acc = ids[0]
            for nid in ids[1:]:
                acc = do_merge(acc, nid)
            groups.append(acc)
        acc = groups[0]
        for gid in groups[1:]:
            acc = do_merge(acc, gid)
    elif strategy == "greedy":
        while len(live) > 1:
            best = None
            ids = sorted(live, key=repr)
            for pa, a in enumerate(ids):
                for b in ids[pa + 1:]:
                    shared = set(live[a]) & set(live[b])
                    if not shared and len(live) > 2:
                        # defer outer products until forced
                        continue
                    merged = _merged_labels(live[a], live[b])
                    key = (len(merged), size_of(merged), repr(a), repr(b))
                    if best is None or key < best[0]:
                        best = (key, a, b)
            if best is None:  # disconnected remainder
                ids = sorted(live, key=repr)
                do_merge(ids[0], ids[1])
            else:
                do_merge(best[1], best[2])
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return ContractionPlan(steps, peak)


def execute_plan(graph: TensorGraph, plan: ContractionPlan):
    """Run a plan; returns (tensor, open labels in final leg order)."""
    tensors = dict(graph.tensors)
    labels = {nid: list(labs) for nid, labs in graph.labels.items()}
    observed_peak = max((t.size for t in tensors.values()), default=1)

    def self_trace(nid):
        labs = labels[nid]
        while True:
            dup = None
            seen = {}
            for pos, lab in enumerate(labs):
                if lab in seen:
                    dup = (seen[lab], pos)
                    break
                seen[lab] = pos
            if dup is None:
                break
            tensors[nid] = trace_legs(tensors[nid], *dup)
            labs = [lab for t, lab in enumerate(labs) if t not in dup]
            labels[nid] = labs

    for nid in list(tensors):
        self_trace(nid)

    for step in plan.steps:
        ta, tb = tensors.pop(step.left), tensors.pop(step.right)
        la, lb = labels.pop(step.left), labels.pop(step.right)
        shared = sorted(set(la) & set(lb), key=la.index)
        pairs = [(la.index(lab), lb.index(lab)) for lab in shared]
        out = contract(ta, tb, pairs)
        keep_a = [lab for lab in la if lab not in shared]
        keep_b = [lab for lab in lb if lab not in shared]
        tensors[step.result] = out
        labels[step.result] = keep_a + keep_b
        self_trace(step.result)
        observed_peak = max(observed_peak, tensors[step.result].size)

    if len(tensors) != 1:
        raise RuntimeError("plan did not reduce the graph to one tensor")
    (nid, tensor), = tensors.items()
    if observed_peak > plan.peak_size:
        raise RuntimeError(
            f"observed intermediate size {observed_peak} exceeds plan bound {plan.peak_size}")
    return tensor, labels[nid]


def transpose_to(tensor: CosetTensor, labels, wanted) -> CosetTensor:
    """Reorder legs so labels appear in the wanted order."""
    from collections import Counter

    if Counter(labels) != Counter(wanted):
        raise ValueError("label sets differ")
    perm = [labels.index(lab) for lab in wanted]
    legs = [tensor.legs[t] for t in perm]
    if tensor.is_dense:
        return CosetTensor(legs, np.transpose(tensor.data, perm), tensor.norm_exponent)
    out = {}
    for idx, val in tensor.data.items():
        out[tuple(idx[t] for t in perm)] = val
    return CosetTensor(legs, out, tensor.norm_exponent)
