"""Named network builders for the shipped code families.

Surface-code networks follow the checkerboard picture: one central
fragment keeps its logical qubit, the bulk alternates fragments with
logical X or Z adjoined, and the wiring is pinned by group equality with
the direct plaquette construction (the tables in :mod:`tncodes.wirings`
record the fusion schedules).  Holographic networks place the five-qubit
code at the centre of rings of its purified tensor.
"""

from __future__ import annotations

import json
from importlib import resources

from .code import StabilizerCode, steane
from .enumerator import coset_weights, logical_profile
from .network import LegRef, NetworkSpec, NodeSpec, network_from_dict, permute_legs
from . import wirings


def _spec_from_wiring(w) -> NetworkSpec:
    nodes = {}
    for nid, seed in w["nodes"].items():
        if seed == "steane_logz":
            seed = steane_logz()
        nodes[nid] = NodeSpec(seed)
    edges = [(LegRef(a, al), LegRef(b, bl)) for (a, al), (b, bl) in w["edges"]]
    dangling = [LegRef(nid, leg) for nid, leg in w["dangling"]]
    return NetworkSpec(nodes, edges, dangling, list(w["logical_order"]),
                       name=w.get("name"), meta=dict(w.get("meta", {})))


def fig1b_network() -> NetworkSpec:
    """13-qubit code: central five-qubit node in a ring of four purified nodes."""
    return _spec_from_wiring(wirings.FIG1B)


def rotated_surface_network(L: int) -> NetworkSpec:
    """Surface-code network for odd L; wiring tables ship for L in 3..9."""
    if L < 3 or L % 2 == 0:
        raise ValueError("L must be odd and >= 3")
    key = f"surface_L{L}"
    if key not in wirings.SURFACE:
        raise ValueError(f"no wiring table for L={L} "
                         f"(shipped: {sorted(wirings.SURFACE)})")
    return _spec_from_wiring(wirings.SURFACE[key])


def modified_surface_network(L: int, central_perm=None) -> NetworkSpec:
    """Rotated surface network with the non-CSS five-qubit tensor at the centre.

    ``central_perm`` permutes the five-qubit code's legs before insertion;
    by default the searched best permutation for this L is used.
    """
    if L < 5 or L % 2 == 0:
        raise ValueError("L must be odd and >= 5")
    if central_perm is None:
        central_perm = wirings.BEST_CENTRAL_PERM[L]
    spec = rotated_surface_network(L)
    spec.nodes["b"] = NodeSpec("five_qubit", tuple(central_perm))
    spec.name = f"modified_L{L}"
    return spec


def find_best_central_permutation(L: int, max_weight: int | None = None):
    """Exhaustive scan of all 120 central-leg permutations.

    Maximises the tensor-network distance, breaks ties by the number of
    minimum-weight logicals, then lexicographically; the winner must reach
    distance L.  Returns (permutation, distance, degeneracy, scores).
    """
    import itertools

    cap = L if max_weight is None else max_weight
    scores = {}
    for perm in itertools.permutations(range(5)):
        spec = modified_surface_network(L, perm)
        table = coset_weights(spec, max_weight=cap)
        profile = logical_profile(table)
        hits = [w for w, c in profile.items() if c > 0 and w > 0]
        d = min(hits) if hits else cap + 1  # distance beyond cap
        scores[perm] = (d, profile.get(d, 0))
    best_d = max(d for d, _ in scores.values())
    if best_d < L:
        raise RuntimeError(f"no permutation reaches distance {L}; scores: {scores}")
    winners = [p for p, (d, _) in scores.items() if d == best_d]
    winners.sort(key=lambda p: (scores[p][1], p))
    best = winners[0]
    return best, best_d, scores[best][1], scores


def colour_code_network(size: int) -> NetworkSpec:
    """Triangular colour codes: 7 (one Steane node) or 19 (grown patch)."""
    if size == 7:
        return NetworkSpec({"s0": NodeSpec("steane")}, [],
                           [LegRef("s0", i) for i in range(7)], ["s0"],
                           name="colour_7")
    if size == 19:
        return _spec_from_wiring(wirings.COLOUR_19)
    raise ValueError("supported sizes: 7, 19")


def steane_logz() -> StabilizerCode:
    """Steane code with its logical Z adjoined as a stabilizer (k=0)."""
    base = steane()
    return StabilizerCode(7, base.stabilizers + (base.logical_z[0],),
                          name="steane_logz")


def holographic_network(radius: int) -> NetworkSpec:
    """Pentagon-ring networks: five-qubit centre, purified tensors outward.

    Radius 2 is the centre plus its five edge-neighbours (a single ring,
    small enough for brute-force checks); radius 3 adds the full second
    ring of fifteen tensors.  The meta carries the outside-in contraction
    sweep used by the enumerator and decoder.
    """
    if radius not in (2, 3):
        raise ValueError("supported radii: 2, 3")
    nodes = {"c": NodeSpec("five_qubit")}
    edges, dangling, sweep = [], [], []
    for i in range(5):
        nodes[f"a{i}"] = NodeSpec("purified_five_qubit")
        edges.append((LegRef("c", i), LegRef(f"a{i}", 0)))
    if radius == 2:
        for i in range(5):
            dangling += [LegRef(f"a{i}", leg) for leg in range(1, 6)]
            sweep.append(f"a{i}")
    else:
        for i in range(5):
            nodes[f"b{i}"] = NodeSpec("purified_five_qubit")
        for i in range(5):
            edges.append((LegRef(f"a{i}", 5), LegRef(f"b{i}", 0)))
            edges.append((LegRef(f"a{(i + 1) % 5}", 1), LegRef(f"b{i}", 1)))
        cid = 0
        for i in range(5):
            for leg in (2, 4):
                nodes[f"d{cid}"] = NodeSpec("purified_five_qubit")
                edges.append((LegRef(f"a{i}", leg), LegRef(f"d{cid}", 0)))
                cid += 1
        for i in range(5):
            sweep += [f"d{2 * i}", f"d{2 * i + 1}", f"a{i}", f"b{i}"]
        for i in range(5):
            dangling.append(LegRef(f"a{i}", 3))
        for i in range(5):
            dangling += [LegRef(f"b{i}", leg) for leg in range(2, 6)]
        for c in range(10):
            dangling += [LegRef(f"d{c}", leg) for leg in range(1, 6)]
    sweep.append("c")
    meta = {"plan_strategy": "linear", "sweep": sweep,
            "chain": [nid for nid in sweep if nid != "c"]}
    return NetworkSpec(nodes, edges, dangling, ["c"],
                       name=f"holo_r{radius}", meta=meta)


_BUILTINS = {
    "fig1b": fig1b_network,
    "colour_7": lambda: colour_code_network(7),
    "colour_19": lambda: colour_code_network(19),
    "holo_r2": lambda: holographic_network(2),
    "holo_r3": lambda: holographic_network(3),
}
for _L in (3, 5, 7, 9):
    _BUILTINS[f"surface_L{_L}"] = (lambda L=_L: rotated_surface_network(L))
for _L in (5, 7, 9):
    _BUILTINS[f"modified_L{_L}"] = (lambda L=_L: modified_surface_network(L))


def builtin_network(name: str) -> NetworkSpec:
    """Resolve a shipped network by name (JSON resource or builder)."""
    try:
        path = resources.files("tncodes").joinpath(f"networks/{name}.json")
        if path.is_file():
            return network_from_dict(json.loads(path.read_text()))
    except (FileNotFoundError, ModuleNotFoundError):
        pass
    if name in _BUILTINS:
        return _BUILTINS[name]()
    raise KeyError(name)
