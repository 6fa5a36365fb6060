"""Arithmetic over GF(2^p) for p in {1, 2, 3, 4}.

Field elements are integers in [0, 2^p - 1]; bit i of an element is the
coefficient of alpha^i in the polynomial basis {1, alpha, ..., alpha^(p-1)},
where alpha is a root of the defining primitive polynomial.  Multiplication
runs through discrete-log / antilog tables, which is all that is needed for
fields this small.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# Primitive polynomial per extension degree, as a bitmask including the x^p
# term.  p = 1 is the degenerate GF(2) case (x + 1).
DEFAULT_PRIMITIVE_POLY = {
    1: 0b11,      # x + 1
    2: 0b111,     # x^2 + x + 1
    3: 0b1011,    # x^3 + x + 1
    4: 0b10011,   # x^4 + x + 1
}


@dataclass(frozen=True)
class FieldSpec:
    """GF(2^p) with log/antilog tables and binary-image helpers.

    Attributes
    ----------
    p : int
        Extension degree, 1 to 4.
    primitive_poly : int
        Defining polynomial bitmask (bit i = coefficient of x^i); must have
        degree exactly p and x must generate the multiplicative group.
    q : int
        Field order 2^p.
    log_table, exp_table : np.ndarray
        Discrete-log tables of length q.  exp_table[i] = alpha^i for
        i < q - 1 (exp_table[q-1] wraps to 1); log_table[0] = -1 sentinel.
    """

    p: int
    primitive_poly: int = 0
    q: int = field(init=False, default=0)
    log_table: np.ndarray = field(init=False, default=None, repr=False)
    exp_table: np.ndarray = field(init=False, default=None, repr=False)

    def __post_init__(self):
        if not 1 <= self.p <= 4:
            raise ValueError(f"extension degree must be in 1..4, got {self.p}")
        poly = self.primitive_poly or DEFAULT_PRIMITIVE_POLY[self.p]
        if poly >> self.p != 1:
            raise ValueError(
                f"polynomial 0b{poly:b} does not have degree {self.p}"
            )
        object.__setattr__(self, "primitive_poly", poly)
        object.__setattr__(self, "q", 1 << self.p)
        self._build_tables()

    def _build_tables(self):
        q = self.q
        exp = np.zeros(q, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            if log[x] >= 0:
                raise ValueError(
                    f"0b{self.primitive_poly:b} is not primitive over GF(2): "
                    f"alpha^{i} repeats earlier powers"
                )
            exp[i] = x
            log[x] = i
            x <<= 1
            if x & q:
                x ^= self.primitive_poly
        exp[q - 1] = 1  # wrap-around convention, unused by mul()
        object.__setattr__(self, "exp_table", exp)
        object.__setattr__(self, "log_table", log)

    def add(self, a: int, b: int) -> int:
        """Characteristic-2 addition: XOR."""
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        """Field product via log/antilog tables; anything times 0 is 0."""
        if a == 0 or b == 0:
            return 0
        return int(self.exp_table[(self.log_table[a] + self.log_table[b])
                                  % (self.q - 1)])

    def inv(self, a: int) -> int:
        """Multiplicative inverse; rejects 0."""
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        return int(self.exp_table[(self.q - 1 - self.log_table[a])
                                  % (self.q - 1)])

    def binary_image(self, x: int) -> np.ndarray:
        """Coordinates of x in the polynomial basis, as a length-p bit vector.

        Bit i of x becomes entry i; the map is a vector-space isomorphism,
        so binary_image(a ^ b) = binary_image(a) XOR binary_image(b).
        """
        return np.array([(x >> i) & 1 for i in range(self.p)], dtype=np.uint8)

    def symbol_from_bits(self, bits) -> int:
        """Inverse of :meth:`binary_image`."""
        return int(sum(int(b) << i for i, b in enumerate(bits)))

    def companion_matrix(self, h: int) -> np.ndarray:
        """p x p binary matrix M_h with M_h @ binary_image(x) = binary_image(h*x).

        Column i is the image of h * alpha^i.  M_h is invertible for h != 0,
        and the map h -> M_h is multiplicative: M_{ab} = M_a @ M_b (mod 2).
        """
        if h == 0:
            raise ValueError("companion matrix is defined for nonzero symbols")
        mat = np.zeros((self.p, self.p), dtype=np.uint8)
        for col in range(self.p):
            mat[:, col] = self.binary_image(self.mul(h, 1 << col))
        return mat

    def nonzero_elements(self) -> list[int]:
        return list(range(1, self.q))

    def __reduce__(self):
        # keep dataclass frozen-ness pickle-friendly (tables are rebuilt)
        return (FieldSpec, (self.p, self.primitive_poly))
