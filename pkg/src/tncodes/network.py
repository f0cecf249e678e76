"""Symbolic code-level network operations.

A :class:`NetworkSpec` wires seed codes together: named nodes (each a seed
code, optionally with permuted legs), contraction edges between physical
legs, an ordering of the surviving dangling legs (the physical qubits of
the built code) and an ordering of the logical-carrying nodes.

``self_contract`` fuses two legs of one code: it keeps exactly the
operators that can be made to commute with both X.X and Z.Z on the fused
pair, then drops the pair.  Three regimes occur depending on how many of
the two fusion measurements already lie in the stabilizer group (0, 1 or
2); each one that does contributes a pending factor 1/2 that the numeric
engine must undo, returned here as an exponent.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .code import SEED_CODES, StabilizerCode, code_from_dict, code_to_dict, \
    empty_code, require_valid
from .gf2 import Echelon
from .pauli import PauliString


class ContractionError(RuntimeError):
    """A contraction could not produce a stabilizer code."""


# ---------------------------------------------------------------------------
# elementary code operations


def tensor_product(a: StabilizerCode, b: StabilizerCode) -> StabilizerCode:
    """Disjoint union of two codes; generators padded with identities."""
    require_valid(a)
    require_valid(b)
    n = a.n + b.n

    def pad_left(p: PauliString) -> PauliString:
        return PauliString(n, p.x, p.z, p.phase_exp)

    def pad_right(p: PauliString) -> PauliString:
        return PauliString(n, p.x << a.n, p.z << a.n, p.phase_exp)

    return StabilizerCode(
        n,
        tuple(pad_left(p) for p in a.stabilizers)
        + tuple(pad_right(p) for p in b.stabilizers),
        tuple(pad_left(p) for p in a.logical_x) + tuple(pad_right(p) for p in b.logical_x),
        tuple(pad_left(p) for p in a.logical_z) + tuple(pad_right(p) for p in b.logical_z),
    )


def permute_legs(code: StabilizerCode, perm) -> StabilizerCode:
    """Re-index qubits: qubit i of the input becomes qubit perm[i]."""
    perm = list(perm)
    if sorted(perm) != list(range(code.n)):
        raise ValueError(f"not a bijection on 0..{code.n - 1}: {perm}")

    def remap(p: PauliString) -> PauliString:
        x = z = 0
        for i in range(code.n):
            x |= ((p.x >> i) & 1) << perm[i]
            z |= ((p.z >> i) & 1) << perm[i]
        return PauliString(code.n, x, z, p.phase_exp)

    return StabilizerCode(
        code.n,
        tuple(remap(p) for p in code.stabilizers),
        tuple(remap(p) for p in code.logical_x),
        tuple(remap(p) for p in code.logical_z),
        tuple(remap(p) for p in code.destabilizers) if code.destabilizers else None,
        name=code.name,
    )


def _drop_bits(mask: int, i: int, j: int) -> int:
    """Remove bit positions i < j from a mask, compacting the rest."""
    low = mask & ((1 << i) - 1)
    mid = (mask >> (i + 1)) & ((1 << (j - i - 1)) - 1)
    high = mask >> (j + 1)
    return low | (mid << i) | (high << (j - 1))


def self_contract(code: StabilizerCode, i: int, j: int):
    """Fuse legs i and j of one code; returns (new code, halving exponent).

    Raises :class:`ContractionError` with "logical measured" when a fusion
    measurement acts as a logical operator, so the logical content cannot
    survive.  The exponent counts measurements that were already in the
    stabilizer group (0, 1 or 2 pending factors of 1/2).
    """
    n = code.n
    if i == j:
        raise ValueError("legs must differ")
    if not (0 <= i < n and 0 <= j < n):
        raise ValueError(f"legs ({i},{j}) out of range for n={n}")
    i, j = min(i, j), max(i, j)

    m1 = PauliString(n, (1 << i) | (1 << j), 0)  # X.X on the pair
    m3 = PauliString(n, 0, (1 << i) | (1 << j))  # Z.Z on the pair

    ech = Echelon()
    for row in code.stabilizer_rows():
        ech.add(row)

    def forced_outcome(m: PauliString):
        """(member?, outcome bit); outcome 1 iff -m is the group element."""
        combo = ech.express(m.symplectic().row())
        if combo is None:
            return False, 0
        prod = PauliString.identity(n)
        for t in range(code.r):
            if (combo >> t) & 1:
                prod = prod * code.stabilizers[t]
        return True, 0 if prod.sign == 1 else 1

    in1, o1 = forced_outcome(m1)
    in3, o3 = forced_outcome(m3)
    exponent = int(in1) + int(in3)

    def vec(op: PauliString) -> int:
        return (0 if op.commutes(m1) else 1) | ((0 if op.commutes(m3) else 2))

    gens = list(code.stabilizers)
    consumed: list[int] = []

    if not in1 and not in3:
        # Case I: need two generators whose commutation vectors against
        # (X.X, Z.Z) span GF(2)^2; equivalently their restrictions to the
        # pair, and the product's restriction, all have distinct letters.
        first: dict[int, int] = {}
        for t, g in enumerate(gens):
            v = vec(g)
            if v and v not in first:
                first[v] = t
            if len(first) == 2:
                break
        if len(first) < 2:
            raise ContractionError(
                f"logical measured: fusing legs ({i},{j}) removes logical freedom")
        (va, sa), (vb, sb) = sorted(first.items())[:2]
        consumed = [sa, sb]

        def fix(op: PauliString) -> PauliString:
            v = vec(op)
            out = op
            # solve alpha*va + beta*vb = v for (alpha, beta)
            for use_a, use_b in ((0, 0), (1, 0), (0, 1), (1, 1)):
                if (va * use_a) ^ (vb * use_b) == v:
                    if use_a:
                        out = out * gens[sa]
                    if use_b:
                        out = out * gens[sb]
                    return out
            raise AssertionError("fixer pair does not span GF(2)^2")

    elif in1 and in3:
        # Case III: every group element and logical already commutes with
        # both measurements; nothing to fix.
        def fix(op: PauliString) -> PauliString:
            return op

    else:
        # Case II: one measurement is a stabilizer; fix against the other.
        m_out = m3 if in1 else m1
        s1 = next((t for t, g in enumerate(gens) if not g.commutes(m_out)), None)
        if s1 is None:
            raise ContractionError(
                f"logical measured: fusing legs ({i},{j}) removes logical freedom")
        consumed = [s1]

        def fix(op: PauliString) -> PauliString:
            return op if op.commutes(m_out) else op * gens[s1]

    fixed_gens = [fix(g) for t, g in enumerate(gens) if t not in consumed]
    fixed_lx = [fix(p) for p in code.logical_x]
    fixed_lz = [fix(p) for p in code.logical_z]

    for op in fixed_gens + fixed_lx + fixed_lz:
        if not (op.commutes(m1) and op.commutes(m3)):
            raise AssertionError("operator survived without commuting with the fusion")

    def truncate(op: PauliString) -> PauliString:
        xi, zi = (op.x >> i) & 1, (op.z >> i) & 1
        if ((op.x >> j) & 1, (op.z >> j) & 1) != (xi, zi):
            raise AssertionError("fused legs carry different letters")
        # measured-out pair contributes the outcome signs
        phase = (op.phase_exp + 2 * (xi * o1 + zi * o3)) % 4
        return PauliString(n - 2, _drop_bits(op.x, i, j), _drop_bits(op.z, i, j), phase)

    new_lx = [truncate(op) for op in fixed_lx]
    new_lz = [truncate(op) for op in fixed_lz]

    # keep an independent generating subset; a dependent row must equal the
    # product of the kept rows it reduces to, including its sign
    ech2 = Echelon()
    kept: list[PauliString] = []
    added = 0
    added_to_kept: dict[int, int] = {}
    for g0 in fixed_gens:
        g = truncate(g0)
        row = g.symplectic().row()
        if ech2.add(row):
            added_to_kept[added] = len(kept)
            kept.append(g)
        else:
            combo = ech2.express(row)
            prod = PauliString.identity(n - 2)
            for t in range(added):
                if (combo >> t) & 1:
                    prod = prod * kept[added_to_kept[t]]
            if prod.sign != g.sign:
                raise AssertionError("inconsistent signs after fusion (found -identity)")
        added += 1

    if len(kept) != max(code.r - 2, 0):
        raise AssertionError(
            f"rank after fusion is {len(kept)}, expected {code.r - 2}")

    return StabilizerCode(n - 2, tuple(kept), tuple(new_lx), tuple(new_lz)), exponent


# ---------------------------------------------------------------------------
# network specifications


@dataclass(frozen=True)
class LegRef:
    node: str
    leg: int

    def key(self):
        return (self.node, self.leg)


@dataclass
class NodeSpec:
    seed: str | StabilizerCode
    perm: tuple | None = None


@dataclass
class NetworkSpec:
    """Wiring of seed-code tensors into a larger code."""

    nodes: dict
    edges: list
    dangling: list
    logical_order: list
    name: str | None = None
    meta: dict = field(default_factory=dict)

    def node_code(self, nid: str) -> StabilizerCode:
        spec = self.nodes[nid]
        code = SEED_CODES[spec.seed]() if isinstance(spec.seed, str) else spec.seed
        if spec.perm is not None:
            code = permute_legs(code, spec.perm)
        return code

    def node_order(self) -> list:
        return sorted(self.nodes)

    def dangling_count(self, nid: str) -> int:
        return sum(1 for ref in self.dangling if ref.node == nid)

    def check(self):
        """Raise on bookkeeping violations (leg coverage, duplicates)."""
        seen = {}
        for nid in self.nodes:
            for leg in range(self.node_code(nid).n):
                seen[(nid, leg)] = 0
        for a, b in self.edges:
            for ref in (a, b):
                if ref.key() not in seen:
                    raise ContractionError(f"edge references unknown leg {ref}")
                seen[ref.key()] += 1
            if a.key() == b.key():
                raise ContractionError(f"edge contracts a leg with itself: {a}")
        for ref in self.dangling:
            if ref.key() not in seen:
                raise ContractionError(f"dangling references unknown leg {ref}")
            seen[ref.key()] += 1
        bad = {key: c for key, c in seen.items() if c != 1}
        if bad:
            raise ContractionError(f"legs not covered exactly once: {bad}")
        have_logical = sorted(nid for nid in self.nodes if self.node_code(nid).k > 0)
        if sorted(self.logical_order) != have_logical:
            raise ContractionError(
                f"logical_order {self.logical_order} != nodes with logicals {have_logical}")


@dataclass
class BuildResult:
    code: StabilizerCode
    norm_exponent: int


def build_full(spec: NetworkSpec) -> BuildResult:
    """Tensor the nodes, fuse every edge, order legs per the spec."""
    spec.check()
    order = spec.node_order()

    prod = empty_code()
    col = {}  # (node, leg) -> current qubit column
    logical_pairs = []  # node id per logical pair, in product order
    for nid in order:
        node = spec.node_code(nid)
        base = prod.n
        prod = tensor_product(prod, node)
        for leg in range(node.n):
            col[(nid, leg)] = base + leg
        logical_pairs += [nid] * node.k

    exponent = 0
    edges = sorted(spec.edges, key=lambda e: tuple(sorted((e[0].key(), e[1].key()))))
    for a, b in edges:
        ca, cb = col.pop(a.key()), col.pop(b.key())
        prod, ex = self_contract(prod, ca, cb)
        exponent += ex
        lo, hi = min(ca, cb), max(ca, cb)
        for key, c in col.items():
            col[key] = c - (c > lo) - (c > hi)

    want = [ref.key() for ref in spec.dangling]
    if sorted(col) != sorted(want):
        raise ContractionError("dangling legs do not match the surviving legs")
    perm = [0] * prod.n
    for pos, key in enumerate(want):
        perm[col[key]] = pos
    prod = permute_legs(prod, perm)

    # reorder logical pairs to follow spec.logical_order
    pair_perm = []
    for nid in spec.logical_order:
        pair_perm += [t for t, owner in enumerate(logical_pairs) if owner == nid]
    code = StabilizerCode(
        prod.n,
        prod.stabilizers,
        tuple(prod.logical_x[t] for t in pair_perm),
        tuple(prod.logical_z[t] for t in pair_perm),
        name=spec.name,
    )
    return BuildResult(code, exponent)


def build(spec: NetworkSpec) -> StabilizerCode:
    return build_full(spec).code


# ---------------------------------------------------------------------------
# JSON network files


def network_to_dict(spec: NetworkSpec) -> dict:
    inline = {}
    nodes = []
    for nid in spec.node_order():
        node = spec.nodes[nid]
        if isinstance(node.seed, str):
            seed = node.seed
        else:
            seed = node.seed.name or f"inline_{nid}"
            inline[seed] = code_to_dict(node.seed)
        entry = {"id": nid, "seed": seed}
        if node.perm is not None:
            entry["perm"] = list(node.perm)
        nodes.append(entry)
    d = {
        "nodes": nodes,
        "edges": [[[a.node, a.leg], [b.node, b.leg]] for a, b in spec.edges],
        "dangling": [[ref.node, ref.leg] for ref in spec.dangling],
        "logical_order": list(spec.logical_order),
    }
    if inline:
        d["seeds"] = inline
    if spec.name:
        d["name"] = spec.name
    if spec.meta:
        d["meta"] = spec.meta
    return d


def network_from_dict(d: dict) -> NetworkSpec:
    inline = {name: code_from_dict(cd) for name, cd in d.get("seeds", {}).items()}
    nodes = {}
    for entry in d["nodes"]:
        seed = entry["seed"]
        seed = inline[seed] if seed in inline else seed
        if isinstance(seed, str) and seed not in SEED_CODES:
            raise ValueError(f"unknown seed {seed!r}")
        perm = tuple(entry["perm"]) if "perm" in entry else None
        nodes[entry["id"]] = NodeSpec(seed, perm)
    edges = [(LegRef(a[0], a[1]), LegRef(b[0], b[1])) for a, b in d["edges"]]
    dangling = [LegRef(nid, leg) for nid, leg in d["dangling"]]
    return NetworkSpec(nodes, edges, dangling, list(d["logical_order"]),
                       name=d.get("name"), meta=d.get("meta", {}))


def save_network(spec: NetworkSpec, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(network_to_dict(spec), fh, indent=1)


def load_network(path) -> NetworkSpec:
    with open(path, encoding="utf-8") as fh:
        return network_from_dict(json.load(fh))
