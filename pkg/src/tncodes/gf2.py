"""GF(2) linear algebra on integer bitmask rows.

Rows are plain Python ints; bit j of a row is matrix entry (row, j).
Everything here is exact and allocation-light, sized for ranks up to a
few hundred.
"""

from __future__ import annotations


class Echelon:
    """Incremental row-echelon basis with combination tracking.

    ``combos[i]`` is a bitmask over the rows fed to :meth:`add`, recording
    which of them XOR to ``rows[i]``.
    """

    def __init__(self):
        self.rows: list[int] = []
        self.combos: list[int] = []
        self._n_added = 0

    def _reduce(self, v: int, combo: int) -> tuple[int, int]:
        for row, c in zip(self.rows, self.combos):
            if v & (row & -row):  # row's pivot bit set in v
                v ^= row
                combo ^= c
        return v, combo

    def add(self, v: int) -> bool:
        """Insert a row; returns True iff it enlarged the span."""
        idx = self._n_added
        self._n_added += 1
        v, combo = self._reduce(v, 1 << idx)
        if v == 0:
            return False
        # keep rows sorted by pivot (lowest set bit) for stable reduction
        self.rows.append(v)
        self.combos.append(combo)
        order = sorted(range(len(self.rows)), key=lambda i: self.rows[i] & -self.rows[i])
        self.rows = [self.rows[i] for i in order]
        self.combos = [self.combos[i] for i in order]
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def contains(self, v: int) -> bool:
        return self._reduce(v, 0)[0] == 0

    def express(self, v: int) -> int | None:
        """Bitmask over the added rows whose XOR equals v, or None."""
        res, combo = self._reduce(v, 0)
        return combo if res == 0 else None


def echelon_of(rows) -> Echelon:
    ech = Echelon()
    for r in rows:
        ech.add(r)
    return ech


def rank(rows) -> int:
    return echelon_of(rows).rank


def independent_subset(rows) -> list[int]:
    """Indices of a maximal independent subset, chosen greedily in order."""
    ech = Echelon()
    return [i for i, r in enumerate(rows) if ech.add(r)]


def solve_parity_system(constraints, nbits: int) -> int | None:
    """Solve for an nbits-wide x with parity(popcount(m & x)) == b per (m, b).

    Returns one solution (free variables zero) or None if inconsistent.
    """
    reduced: list[tuple[int, int]] = []  # (mask, bit), mask pivots distinct
    for mask, bit in constraints:
        for pm, pb in reduced:
            if mask & (pm & -pm):
                mask ^= pm
                bit ^= pb
        if mask == 0:
            if bit:
                return None
            continue
        reduced.append((mask, bit))
        reduced.sort(key=lambda t: t[0] & -t[0])
    x = 0
    # back-substitute from the highest pivot down
    for mask, bit in sorted(reduced, key=lambda t: -(t[0] & -t[0])):
        pivot = mask & -mask
        val = ((mask & x).bit_count() + bit) % 2
        if val:
            x |= pivot
    return x
