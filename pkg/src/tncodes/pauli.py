"""Exact n-qubit Pauli algebra on a bit-packed symplectic representation.

An operator is stored in the normal form ``i**phase_exp * X^x Z^z`` where
``x`` and ``z`` are n-bit integer masks (bit j = qubit j) and ``phase_exp``
is an exponent of the imaginary unit, tracked exactly through products.
Letters are indexed 0,1,2,3 = I,X,Y,Z, with Y = i*X*Z carrying the extra
factor of i inside ``phase_exp``.

Operators used as stabilizers or logicals are Hermitian and expose a plain
+/-1 sign; imaginary phases only appear transiently inside products.
"""

from __future__ import annotations

from dataclasses import dataclass

LETTERS = "IXYZ"

# letter index -> (x bit, z bit)
LETTER_TO_XZ = ((0, 0), (1, 0), (1, 1), (0, 1))
XZ_TO_LETTER = {(0, 0): 0, (1, 0): 1, (1, 1): 2, (0, 1): 3}

_PHASE_REPR = {0: "+", 1: "+i", 2: "-", 3: "-i"}


class PauliError(ValueError):
    """Raised on malformed Pauli operations (length mismatch, bad text, ...)."""


@dataclass(frozen=True)
class SymplecticVector:
    """Phase-free (x|z) bit pair of a Pauli word."""

    n: int
    x: int
    z: int

    def row(self) -> int:
        """Pack as a single 2n-bit integer, x bits low, z bits high."""
        return self.x | (self.z << self.n)


@dataclass(frozen=True)
class PauliString:
    """Immutable phase-tracked Pauli word on ``n`` qubits."""

    n: int
    x: int
    z: int
    phase_exp: int = 0  # operator == i**phase_exp * X^x Z^z

    # -- constructors ------------------------------------------------------

    @staticmethod
    def identity(n: int) -> "PauliString":
        return PauliString(n, 0, 0, 0)

    @staticmethod
    def from_letters(letters, n: int | None = None, sign: int = 1) -> "PauliString":
        """Build from an iterable of letter indices (0..3), sign +/-1."""
        letters = list(letters)
        if n is None:
            n = len(letters)
        if len(letters) != n:
            raise PauliError(f"expected {n} letters, got {len(letters)}")
        x = z = 0
        n_y = 0
        for q, g in enumerate(letters):
            xb, zb = LETTER_TO_XZ[g]
            x |= xb << q
            z |= zb << q
            n_y += g == 2
        if sign not in (1, -1):
            raise PauliError("sign must be +1 or -1")
        phase_exp = (n_y + (0 if sign == 1 else 2)) % 4
        return PauliString(n, x, z, phase_exp)

    @staticmethod
    def from_text(text: str) -> "PauliString":
        """Parse ``[+|-]{I,X,Y,Z}*``, e.g. ``-XZZXI``."""
        sign = 1
        body = text.strip()
        if body[:1] in "+-":
            sign = -1 if body[0] == "-" else 1
            body = body[1:]
        try:
            letters = [LETTERS.index(ch) for ch in body]
        except ValueError:
            raise PauliError(f"invalid Pauli text {text!r}") from None
        return PauliString.from_letters(letters, sign=sign)

    @staticmethod
    def single(n: int, q: int, letter: int, sign: int = 1) -> "PauliString":
        """A single-qubit letter at position q, identity elsewhere."""
        letters = [0] * n
        letters[q] = letter
        return PauliString.from_letters(letters, sign=sign)

    # -- accessors ---------------------------------------------------------

    def letter(self, q: int) -> int:
        return XZ_TO_LETTER[((self.x >> q) & 1, (self.z >> q) & 1)]

    def letters(self) -> list[int]:
        return [self.letter(q) for q in range(self.n)]

    @property
    def n_y(self) -> int:
        return (self.x & self.z).bit_count()

    @property
    def sigma_phase_exp(self) -> int:
        """Exponent e of the prefactor i**e in the sigma-letter form."""
        return (self.phase_exp - self.n_y) % 4

    @property
    def is_hermitian(self) -> bool:
        return self.sigma_phase_exp in (0, 2)

    @property
    def sign(self) -> int:
        """The +/-1 prefactor; raises for non-Hermitian phases."""
        e = self.sigma_phase_exp
        if e == 0:
            return 1
        if e == 2:
            return -1
        raise PauliError(f"phase i**{e} is not a sign")

    @property
    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    def symplectic(self) -> SymplecticVector:
        return SymplecticVector(self.n, self.x, self.z)

    @staticmethod
    def from_symplectic(v: SymplecticVector, sign: int = 1) -> "PauliString":
        p = PauliString(v.n, v.x, v.z, (v.x & v.z).bit_count() % 4)
        return p if sign == 1 else p.negate()

    # -- algebra -----------------------------------------------------------

    def __mul__(self, other: "PauliString") -> "PauliString":
        if self.n != other.n:
            raise PauliError(f"length mismatch: {self.n} vs {other.n}")
        # X^x1 Z^z1 * X^x2 Z^z2 = (-1)^{|z1 & x2|} X^(x1^x2) Z^(z1^z2)
        phase = (self.phase_exp + other.phase_exp
                 + 2 * (self.z & other.x).bit_count()) % 4
        return PauliString(self.n, self.x ^ other.x, self.z ^ other.z, phase)

    def commutes(self, other: "PauliString") -> bool:
        if self.n != other.n:
            raise PauliError(f"length mismatch: {self.n} vs {other.n}")
        return ((self.x & other.z).bit_count()
                + (self.z & other.x).bit_count()) % 2 == 0

    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    def negate(self) -> "PauliString":
        return PauliString(self.n, self.x, self.z, (self.phase_exp + 2) % 4)

    def restrict(self, positions) -> "PauliString":
        """Sub-string on the listed positions; the sigma-form phase is kept."""
        positions = list(positions)
        if len(set(positions)) != len(positions):
            raise PauliError("restrict positions must be distinct")
        for q in positions:
            if not 0 <= q < self.n:
                raise PauliError(f"position {q} out of range for n={self.n}")
        letters = [self.letter(q) for q in positions]
        e = self.sigma_phase_exp
        sub = PauliString.from_letters(letters)
        return PauliString(len(letters), sub.x, sub.z, (sub.phase_exp + e) % 4)

    # -- text --------------------------------------------------------------

    def to_text(self) -> str:
        body = "".join(LETTERS[g] for g in self.letters())
        s = self.sign  # raises on imaginary phase
        return ("-" if s == -1 else "") + body

    def __str__(self) -> str:
        body = "".join(LETTERS[g] for g in self.letters())
        return _PHASE_REPR[self.sigma_phase_exp] + body

    def __repr__(self) -> str:
        return f"PauliString({self!s})"
