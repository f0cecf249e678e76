"""Bounded topology search over small seed networks.

Used to probe which code parameters are reachable by fusing a handful of
five-qubit-code tensors, with a leg-count audit explaining infeasible
targets: every fusion removes two legs, so the dangling-leg count always
has the parity of the total leg count.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .code import StabilizerCode, brute_force_distance, five_qubit, purified_five_qubit
from .network import ContractionError, self_contract, tensor_product


@dataclass
class SearchReport:
    target: tuple
    log: list = field(default_factory=list)
    found: object = None  # (StabilizerCode, description) when realizable

    def note(self, line):
        self.log.append(line)

    def text(self) -> str:
        return "\n".join(self.log)


def _audit_multiset(n_five: int, n_purified: int, target_n: int):
    legs = 5 * n_five + 6 * n_purified
    dangling_parity_ok = (legs - target_n) % 2 == 0 and legs >= target_n
    return legs, dangling_parity_ok


def search_code(target_n: int, target_k: int, target_d: int,
                max_nodes: int = 4, cap: int = 26) -> SearchReport:
    """Search <= max_nodes networks of five_qubit/purified_five_qubit seeds.

    Logical count is additive and preserved by fusion, so only the node
    multisets with exactly target_k five-qubit nodes can work; the leg
    parity audit then rules entire multisets in or out.  Surviving
    multisets are searched over all fusion schedules (edges as leg pairs,
    in all orders), with brute-force distance verification on any match.
    """
    report = SearchReport((target_n, target_k, target_d))
    report.note(f"target [[{target_n},{target_k},{target_d}]], "
                f"seeds: five_qubit (5 legs, k=1), purified_five_qubit (6 legs, k=0)")
    n_five = target_k
    report.note(f"k={target_k} requires exactly {n_five} five_qubit nodes "
                "(fusion preserves k; purified nodes carry none)")
    candidates = []
    for n_pur in range(0, max_nodes - n_five + 1):
        if n_five + n_pur == 0:
            continue
        legs, ok = _audit_multiset(n_five, n_pur, target_n)
        edges = (legs - target_n) // 2 if ok else None
        report.note(
            f"multiset {n_five} x five_qubit + {n_pur} x purified: {legs} legs; "
            + (f"needs {edges} fusions (parity OK)" if ok
               else f"cannot reach {target_n} dangling legs (parity/count mismatch)"))
        if ok:
            candidates.append((n_five, n_pur, edges))
    if not candidates:
        report.note("leg-count audit: no admissible node multiset; target unrealizable "
                    "from these seeds at this size")
        return report

    for n_f, n_p, n_edges in candidates:
        codes = [five_qubit()] * n_f + [purified_five_qubit()] * n_p
        prod = codes[0]
        for extra in codes[1:]:
            prod = tensor_product(prod, extra)
        found = _edge_search(prod, n_edges, target_n, target_k, target_d, cap)
        if found is not None:
            code, schedule = found
            report.note(f"found [[{target_n},{target_k},{target_d}]] with "
                        f"{n_f}+{n_p} nodes, fusions {schedule}")
            report.found = (code, schedule)
            return report
        report.note(f"multiset {n_f}+{n_p}: exhausted all fusion schedules, no match")
    report.note("search complete: target not realizable in the audited space")
    return report


def _edge_search(prod: StabilizerCode, n_edges: int, target_n, target_k, target_d, cap,
                 _start=0):
    """Depth-first over unordered leg-pair schedules."""
    if n_edges == 0:
        if prod.n == target_n and prod.k == target_k \
                and brute_force_distance(prod, cap) == target_d:
            return prod, []
        return None
    for i, j in itertools.combinations(range(prod.n), 2):
        try:
            fused, _ = self_contract(prod, i, j)
        except ContractionError:
            continue
        deeper = _edge_search(fused, n_edges - 1, target_n, target_k, target_d, cap)
        if deeper is not None:
            code, schedule = deeper
            return code, [(i, j)] + schedule
    return None
