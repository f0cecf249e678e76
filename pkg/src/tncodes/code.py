"""Stabilizer codes as explicit generator sets.

Provides construction/validation, destabilizers (pure errors), syndromes,
the seed codes used by the network builders, a direct rotated-surface-code
construction, and exponential-time brute-force oracles used to pin down the
tensor-network results on small instances.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

import numpy as np

from .gf2 import Echelon, echelon_of, independent_subset, solve_parity_system
from .pauli import LETTER_TO_XZ, XZ_TO_LETTER, PauliError, PauliString

Syndrome = tuple  # length-r tuple of 0/1 bits

BRUTE_FORCE_CAP = 26  # default bound on r for 2**r enumerations


class OracleCapError(RuntimeError):
    """A brute-force enumeration exceeded the configured cap."""


@dataclass(frozen=True)
class StabilizerCode:
    """An [[n, k]] stabilizer code given by generators and logical pairs.

    ``destabilizers`` (pure errors), when present, satisfy
    P_i S_j = (-1)^{delta_ij} S_j P_i and commute pairwise.
    """

    n: int
    stabilizers: tuple
    logical_x: tuple = ()
    logical_z: tuple = ()
    destabilizers: tuple | None = None
    name: str | None = None

    @property
    def r(self) -> int:
        return len(self.stabilizers)

    @property
    def k(self) -> int:
        return self.n - self.r

    def all_operators(self):
        ops = list(self.stabilizers) + list(self.logical_x) + list(self.logical_z)
        if self.destabilizers:
            ops += list(self.destabilizers)
        return ops

    def stabilizer_rows(self) -> list[int]:
        return [p.symplectic().row() for p in self.stabilizers]

    def __repr__(self) -> str:
        tag = f" {self.name!r}" if self.name else ""
        return f"<StabilizerCode{tag} [[{self.n},{self.k}]] r={self.r}>"


def empty_code() -> StabilizerCode:
    return StabilizerCode(0, ())


# ---------------------------------------------------------------------------
# validation


def _sympl_pair_mask(op: PauliString, n: int) -> int:
    # symplectic form <v, op> = v.x * op.z + v.z * op.x with v packed x|(z<<n)
    return op.z | (op.x << n)


def validate(code: StabilizerCode) -> list[str]:
    """Return a list of violated invariants; empty iff the code is valid."""
    problems = []
    n = code.n
    for op in code.all_operators():
        if op.n != n:
            problems.append("operator length mismatch")
        if not op.is_hermitian:
            problems.append("operator has non-Hermitian phase")
    if problems:
        return problems

    gens = code.stabilizers
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if not gens[i].commutes(gens[j]):
                problems.append(f"generators do not commute (S{i + 1}, S{j + 1})")
    rows = code.stabilizer_rows()
    if echelon_of(rows).rank != len(rows):
        problems.append("generators not independent")

    if len(code.logical_x) != code.k or len(code.logical_z) != code.k:
        problems.append("logical count mismatch (expected k = n - r pairs)")
    else:
        for a, lx in enumerate(code.logical_x):
            for g in gens:
                if not lx.commutes(g):
                    problems.append(f"logical X{a + 1} does not commute with generators")
                    break
        for a, lz in enumerate(code.logical_z):
            for g in gens:
                if not lz.commutes(g):
                    problems.append(f"logical Z{a + 1} does not commute with generators")
                    break
        for a, lx in enumerate(code.logical_x):
            for b, lz in enumerate(code.logical_z):
                anti = not lx.commutes(lz)
                if anti != (a == b):
                    problems.append("logical pair structure broken")
        for a in range(code.k):
            for b in range(a + 1, code.k):
                if not code.logical_x[a].commutes(code.logical_x[b]):
                    problems.append("logical X operators do not commute")
                if not code.logical_z[a].commutes(code.logical_z[b]):
                    problems.append("logical Z operators do not commute")
        log_rows = [p.symplectic().row() for p in code.logical_x + code.logical_z]
        ech = echelon_of(rows)
        for row in log_rows:
            if ech.contains(row):
                problems.append("logical operator lies in the stabilizer group")

    if code.destabilizers is not None:
        if len(code.destabilizers) != code.r:
            problems.append("destabilizer count mismatch")
        else:
            for i, p in enumerate(code.destabilizers):
                for j, g in enumerate(gens):
                    anti = not p.commutes(g)
                    if anti != (i == j):
                        problems.append("destabilizer anticommutation matrix is not identity")
                        break
            for i in range(code.r):
                for j in range(i + 1, code.r):
                    if not code.destabilizers[i].commutes(code.destabilizers[j]):
                        problems.append("destabilizers do not pairwise commute")
    return problems


def require_valid(code: StabilizerCode):
    problems = validate(code)
    if problems:
        raise ValueError(f"invalid stabilizer code: {problems}")


# ---------------------------------------------------------------------------
# destabilizers / syndromes


def compute_destabilizers(code: StabilizerCode) -> StabilizerCode:
    """Populate pure errors by solving the symplectic constraints.

    P_i anticommutes with S_i only, commutes with the other generators and
    with the previously constructed P_j.
    """
    require_valid(code)
    n = code.n
    destabs = []
    for i in range(code.r):
        constraints = [(_sympl_pair_mask(g, n), 1 if j == i else 0)
                       for j, g in enumerate(code.stabilizers)]
        constraints += [(_sympl_pair_mask(p, n), 0) for p in destabs]
        sol = solve_parity_system(constraints, 2 * n)
        if sol is None:
            raise ValueError("destabilizer system inconsistent (code invalid?)")
        x = sol & ((1 << n) - 1)
        z = sol >> n
        letters = [XZ_TO_LETTER[((x >> q) & 1, (z >> q) & 1)] for q in range(n)]
        destabs.append(PauliString.from_letters(letters))
    return replace(code, destabilizers=tuple(destabs))


def syndrome_of(code: StabilizerCode, error: PauliString) -> Syndrome:
    if error.n != code.n:
        raise PauliError(f"error length {error.n} != n {code.n}")
    return tuple(0 if error.commutes(g) else 1 for g in code.stabilizers)


def pure_error(code: StabilizerCode, s: Syndrome) -> PauliString:
    if code.destabilizers is None:
        raise ValueError("destabilizers missing; call compute_destabilizers first")
    if len(s) != code.r:
        raise ValueError(f"syndrome length {len(s)} != r {code.r}")
    op = PauliString.identity(code.n)
    for bit, p in zip(s, code.destabilizers):
        if bit:
            op = op * p
    return op


def class_representative(code: StabilizerCode, logical_class) -> PauliString:
    """Representative of the logical class, letters 0..3 = I,X,Y,Z per qubit."""
    if len(logical_class) != code.k:
        raise ValueError(f"class tuple length {len(logical_class)} != k {code.k}")
    op = PauliString.identity(code.n)
    for a, letter in enumerate(logical_class):
        xb, zb = LETTER_TO_XZ[letter]
        if xb:
            op = op * code.logical_x[a]
        if zb:
            op = op * code.logical_z[a]
    return op


def logical_class_of(code: StabilizerCode, op: PauliString) -> tuple:
    """Logical class of an operator that commutes with all stabilizers."""
    cls = []
    for a in range(code.k):
        xb = 0 if op.commutes(code.logical_z[a]) else 1
        zb = 0 if op.commutes(code.logical_x[a]) else 1
        cls.append(XZ_TO_LETTER[(xb, zb)])
    return tuple(cls)


def all_classes(k: int):
    """All 4**k logical class tuples in lexicographic order."""
    if k == 0:
        return [()]
    classes = [()]
    for _ in range(k):
        classes = [c + (g,) for c in classes for g in range(4)]
    return classes


# ---------------------------------------------------------------------------
# group equality


def groups_equal(a: StabilizerCode, b: StabilizerCode, check_signs: bool = False) -> bool:
    """True iff the stabilizer groups coincide (signs ignored by default)."""
    if a.n != b.n:
        raise ValueError("codes act on different qubit counts")
    if a.r != b.r:
        return False

    def contained(src: StabilizerCode, dst: StabilizerCode) -> bool:
        ech = echelon_of(dst.stabilizer_rows())
        for g in src.stabilizers:
            combo = ech.express(g.symplectic().row())
            if combo is None:
                return False
            if check_signs:
                prod = PauliString.identity(dst.n)
                for i in range(dst.r):
                    if (combo >> i) & 1:
                        prod = prod * dst.stabilizers[i]
                if prod.sign != g.sign:
                    return False
        return True

    return contained(a, b) and contained(b, a)


# ---------------------------------------------------------------------------
# brute-force oracles (vectorised 2**r enumerations)


def _check_cap(code: StabilizerCode, cap: int):
    if code.r > cap:
        raise OracleCapError(f"r={code.r} exceeds brute-force cap {cap}")
    if code.n > 64:
        raise OracleCapError("brute-force path is limited to n <= 64")


def _group_words(code: StabilizerCode, cap: int):
    """All 2**r stabilizer-group words as packed uint64 (x, z) arrays."""
    _check_cap(code, cap)
    size = 1 << code.r
    xs = np.zeros(size, dtype=np.uint64)
    zs = np.zeros(size, dtype=np.uint64)
    for i, g in enumerate(code.stabilizers):
        half = 1 << i
        xs[half:2 * half] = xs[:half] ^ np.uint64(g.x)
        zs[half:2 * half] = zs[:half] ^ np.uint64(g.z)
    return xs, zs


def _coset_weight_hist(xs, zs, word: PauliString, n: int) -> np.ndarray:
    supp = (xs ^ np.uint64(word.x)) | (zs ^ np.uint64(word.z))
    return np.bincount(np.bitwise_count(supp), minlength=n + 1)


def brute_force_coset_histogram(code: StabilizerCode, logical_class,
                                cap: int = BRUTE_FORCE_CAP) -> dict:
    """Exact weight histogram of the coset S*L(class) by full enumeration."""
    xs, zs = _group_words(code, cap)
    rep = class_representative(code, logical_class)
    hist = _coset_weight_hist(xs, zs, rep, code.n)
    return {w: int(c) for w, c in enumerate(hist) if c}


def brute_force_coset_table(code: StabilizerCode, cap: int = BRUTE_FORCE_CAP) -> dict:
    """Histograms for all 4**k classes: {class: {weight: count}}."""
    xs, zs = _group_words(code, cap)
    table = {}
    for cls in all_classes(code.k):
        rep = class_representative(code, cls)
        hist = _coset_weight_hist(xs, zs, rep, code.n)
        table[cls] = {w: int(c) for w, c in enumerate(hist) if c}
    return table


def brute_force_distance(code: StabilizerCode, cap: int = BRUTE_FORCE_CAP) -> int:
    """Minimum weight over all non-identity logical cosets."""
    if code.k < 1:
        raise ValueError("distance requires k >= 1")
    xs, zs = _group_words(code, cap)
    best = code.n + 1
    for cls in all_classes(code.k):
        if all(g == 0 for g in cls):
            continue
        rep = class_representative(code, cls)
        supp = (xs ^ np.uint64(rep.x)) | (zs ^ np.uint64(rep.z))
        w = int(np.bitwise_count(supp).min())
        best = min(best, w)
    return best


def _is_uniform_depolarizing(probs: np.ndarray) -> float | None:
    """Return p if the model is i.i.d. depolarizing, else None."""
    row = probs[0]
    if not np.allclose(probs, row[None, :]):
        return None
    if not (np.isclose(row[1], row[2]) and np.isclose(row[1], row[3])):
        return None
    return float(3.0 * row[1])


def _depolarizing_chi_from_hist(hist: np.ndarray, n: int, p: float) -> float:
    w = np.arange(n + 1, dtype=float)
    if p == 0.0:
        terms = np.where(w == 0, hist.astype(float), 0.0)
        return float(terms.sum())
    vals = (1.0 - p) ** (n - w) * (p / 3.0) ** w
    return float(hist @ vals)


def brute_force_chi(code: StabilizerCode, s: Syndrome, model,
                    cap: int = BRUTE_FORCE_CAP) -> dict:
    """chi(L, s) for every logical class by direct coset summation.

    ``model`` provides per-qubit letter probabilities in ``model.probs``
    (shape (n, 4), letter order I,X,Y,Z).
    """
    if code.destabilizers is None:
        code = compute_destabilizers(code)
    xs, zs = _group_words(code, cap)
    pure = pure_error(code, s)
    probs = np.asarray(model.probs, dtype=float)
    p_dep = _is_uniform_depolarizing(probs)
    out = {}
    for cls in all_classes(code.k):
        word = pure * class_representative(code, cls)
        if p_dep is not None:
            hist = _coset_weight_hist(xs, zs, word, code.n)
            out[cls] = _depolarizing_chi_from_hist(hist, code.n, p_dep)
        else:
            total = np.ones(len(xs), dtype=float)
            for q in range(code.n):
                xbit = ((xs ^ np.uint64(word.x)) >> np.uint64(q)) & np.uint64(1)
                zbit = ((zs ^ np.uint64(word.z)) >> np.uint64(q)) & np.uint64(1)
                # (x, z) -> letter index: I,X,Y,Z = 00,10,11,01
                letters = np.array([0, 1, 3, 2])[(xbit + 2 * zbit).astype(np.intp)]
                total *= probs[q][letters]
            out[cls] = float(total.sum())
    return out


def brute_force_chi_many(code: StabilizerCode, syndromes, ps,
                         cap: int = BRUTE_FORCE_CAP):
    """Depolarizing chi tables for many syndromes and p values at once.

    Returns {syndrome: {p: {class: chi}}}; enumerates the group a single
    time and reuses per-coset weight histograms across p.
    """
    if code.destabilizers is None:
        code = compute_destabilizers(code)
    xs, zs = _group_words(code, cap)
    classes = all_classes(code.k)
    reps = [class_representative(code, cls) for cls in classes]
    out = {}
    for s in syndromes:
        pe = pure_error(code, s)
        hists = [_coset_weight_hist(xs, zs, pe * rep, code.n) for rep in reps]
        by_p = {}
        for p in ps:
            by_p[p] = {cls: _depolarizing_chi_from_hist(h, code.n, p)
                       for cls, h in zip(classes, hists)}
        out[s] = by_p
    return out


# ---------------------------------------------------------------------------
# seed codes (all generator signs +1)


def _code(n, stabs, lx=(), lz=(), name=None) -> StabilizerCode:
    return StabilizerCode(
        n,
        tuple(PauliString.from_text(t) for t in stabs),
        tuple(PauliString.from_text(t) for t in lx),
        tuple(PauliString.from_text(t) for t in lz),
        name=name,
    )


def five_qubit() -> StabilizerCode:
    """The [[5,1,3]] non-CSS code, generators in cyclic XZZXI form."""
    return _code(
        5,
        ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"],
        ["XXXXX"],
        ["ZZZZZ"],
        name="five_qubit",
    )


def purified_five_qubit() -> StabilizerCode:
    """Six-qubit stabilizer state: the five-qubit code with its logical
    action adjoined as qubit 0."""
    return _code(
        6,
        ["IXZZXI", "IIXZZX", "IXIXZZ", "IZXIXZ", "XXXXXX", "ZZZZZZ"],
        name="purified_five_qubit",
    )


def surface_fragment() -> StabilizerCode:
    """The [[5,1,2]] surface-code fragment (four corners + centre)."""
    return _code(
        5,
        ["ZZIIZ", "IIZZZ", "IXXIX", "XIIXX"],
        ["XXIII"],
        ["ZIIZI"],
        name="surface_fragment",
    )


def surface_fragment_logx() -> StabilizerCode:
    """Fragment with logical X adjoined as an extra stabilizer (k=0)."""
    return _code(
        5,
        ["ZZIIZ", "IIZZZ", "IXXIX", "XIIXX", "XXIII"],
        name="surface_fragment_logx",
    )


def surface_fragment_logz() -> StabilizerCode:
    """Fragment with logical Z adjoined as an extra stabilizer (k=0)."""
    return _code(
        5,
        ["ZZIIZ", "IIZZZ", "IXXIX", "XIIXX", "ZIIZI"],
        name="surface_fragment_logz",
    )


def steane() -> StabilizerCode:
    return _code(
        7,
        ["ZZIIIZZ", "XXIIIXX", "IZZZIIZ", "IXXXIIX", "IIIZZZZ", "IIIXXXX"],
        ["XXXIIII"],
        ["ZZZIIII"],
        name="steane",
    )


def nine_qubit_state() -> StabilizerCode:
    """Nine-qubit stabilizer state used to grow triangular colour codes."""
    return _code(
        9,
        [
            "ZZIZZIIII",
            "XXIXXIIII",
            "IZZIZZIII",
            "IXXIXXIII",
            "IIIZZZZZZ",
            "IIIXXXXXX",
            "IIIIIIZZI",
            "IIIIIIXXI",
            "IIXIIXIIX",
        ],
        name="nine_qubit_state",
    )


SEED_CODES = {
    "five_qubit": five_qubit,
    "purified_five_qubit": purified_five_qubit,
    "surface_fragment": surface_fragment,
    "surface_fragment_logx": surface_fragment_logx,
    "surface_fragment_logz": surface_fragment_logz,
    "steane": steane,
    "nine_qubit_state": nine_qubit_state,
}


# ---------------------------------------------------------------------------
# direct rotated surface code


def direct_rotated_surface(L: int) -> StabilizerCode:
    """Rotated [[L^2, 1, L]] surface code from its plaquette definition.

    Qubits sit on an L x L grid in row-major order.  Bulk 2x2 cells carry
    Z checks on even (row+col) parity and X checks on odd parity; weight-2
    boundary checks alternate along each side (Z top/bottom, X left/right).
    """
    if L < 3 or L % 2 == 0:
        raise ValueError("L must be odd and >= 3")
    n = L * L

    def q(row, col):
        return row * L + col

    def op(letter, qubits):
        letters = [0] * n
        for qq in qubits:
            letters[qq] = letter
        return PauliString.from_letters(letters)

    Z, X = 3, 1
    gens = []
    for row in range(L - 1):
        for col in range(L - 1):
            cell = [q(row, col), q(row, col + 1), q(row + 1, col), q(row + 1, col + 1)]
            gens.append(op(Z if (row + col) % 2 == 0 else X, cell))
    for col in range(1, L - 1, 2):  # top
        gens.append(op(Z, [q(0, col), q(0, col + 1)]))
    for col in range(0, L - 1, 2):  # bottom
        gens.append(op(Z, [q(L - 1, col), q(L - 1, col + 1)]))
    for row in range(0, L - 1, 2):  # left
        gens.append(op(X, [q(row, 0), q(row + 1, 0)]))
    for row in range(1, L - 1, 2):  # right
        gens.append(op(X, [q(row, L - 1), q(row + 1, L - 1)]))

    logical_x = op(X, [q(0, col) for col in range(L)])
    logical_z = op(Z, [q(row, 0) for row in range(L)])
    return StabilizerCode(n, tuple(gens), (logical_x,), (logical_z,),
                          name=f"surface_direct_L{L}")


# ---------------------------------------------------------------------------
# random codes (for property tests)


def random_stabilizer_code(n: int, k: int, rng) -> StabilizerCode:
    """A uniformly scrambled [[n, k]] code via a random symplectic circuit."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    r = n - k
    rows = []  # (x, z) pairs: stabilizers, then logical X, then logical Z
    for i in range(r):
        rows.append([0, 1 << i])
    for i in range(r, n):
        rows.append([1 << i, 0])
    for i in range(r, n):
        rows.append([0, 1 << i])

    for _ in range(3 * n * n):
        kind = rng.integers(3)
        if kind == 0:
            qq = int(rng.integers(n))
            for row in rows:
                xb, zb = (row[0] >> qq) & 1, (row[1] >> qq) & 1
                if xb != zb:
                    row[0] ^= 1 << qq
                    row[1] ^= 1 << qq
        elif kind == 1:
            qq = int(rng.integers(n))
            for row in rows:
                if (row[0] >> qq) & 1:
                    row[1] ^= 1 << qq
        else:
            a, b = rng.choice(n, size=2, replace=False)
            a, b = int(a), int(b)
            for row in rows:
                if (row[0] >> a) & 1:
                    row[0] ^= 1 << b
                if (row[1] >> b) & 1:
                    row[1] ^= 1 << a

    def mk(row):
        letters = [XZ_TO_LETTER[((row[0] >> qq) & 1, (row[1] >> qq) & 1)]
                   for qq in range(n)]
        return PauliString.from_letters(letters)

    return StabilizerCode(
        n,
        tuple(mk(rows[i]) for i in range(r)),
        tuple(mk(rows[r + i]) for i in range(k)),
        tuple(mk(rows[r + k + i]) for i in range(k)),
        name="random",
    )


# ---------------------------------------------------------------------------
# JSON code files


def code_to_dict(code: StabilizerCode) -> dict:
    d = {
        "n": code.n,
        "k": code.k,
        "stabilizers": [p.to_text() for p in code.stabilizers],
        "logical_x": [p.to_text() for p in code.logical_x],
        "logical_z": [p.to_text() for p in code.logical_z],
    }
    if code.destabilizers is not None:
        d["destabilizers"] = [p.to_text() for p in code.destabilizers]
    if code.name:
        d["name"] = code.name
    return d


def code_from_dict(d: dict) -> StabilizerCode:
    code = StabilizerCode(
        d["n"],
        tuple(PauliString.from_text(t) for t in d["stabilizers"]),
        tuple(PauliString.from_text(t) for t in d.get("logical_x", [])),
        tuple(PauliString.from_text(t) for t in d.get("logical_z", [])),
        tuple(PauliString.from_text(t) for t in d["destabilizers"])
        if "destabilizers" in d else None,
        name=d.get("name"),
    )
    if code.k != d.get("k", code.k):
        raise ValueError("inconsistent k in code file")
    return code


def save_code(code: StabilizerCode, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(code_to_dict(code), fh, indent=1)


def load_code(path) -> StabilizerCode:
    with open(path, encoding="utf-8") as fh:
        return code_from_dict(json.load(fh))
