"""Hermitian n-qubit Pauli operators in binary symplectic form.

A Pauli string is stored as two integer bit masks ``x`` and ``z`` plus a sign
bit.  Qubit ``j`` (0-based) lives in bit ``j`` of each mask, and the operator
on that qubit is I, X, Z or Y for ``(x_j, z_j)`` equal to (0,0), (1,0), (0,1)
or (1,1).  Y is taken as ``i X Z`` so every Hermitian Pauli is
``(-1)^sign * prod_j i^(x_j z_j) X^x_j Z^z_j``.

Text form writes the highest qubit first, so ``"IZZ"`` on three qubits is
Z on qubits 1 and 2 (1-based labels, as used everywhere in textual I/O).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import DimensionError, ParseError, PhaseError

_LETTERS = "IXZY"  # indexed by x | (z << 1)


def _popcount(v: int) -> int:
    return v.bit_count()


@dataclass(frozen=True, slots=True)
class PauliString:
    n: int
    x: int
    z: int
    sign: int = 0  # 0 -> +1, 1 -> -1

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be positive")
        full = (1 << self.n) - 1
        if self.x & ~full or self.z & ~full or self.x < 0 or self.z < 0:
            raise ValueError(f"bit masks do not fit in {self.n} qubits")
        if self.sign not in (0, 1):
            raise ValueError("sign must be 0 or 1")

    @classmethod
    def identity(cls, n: int) -> PauliString:
        return cls(n, 0, 0, 0)

    @classmethod
    def from_sparse(cls, n: int, ops: Mapping[int, str], sign: int = 0) -> PauliString:
        """Build from ``{qubit: letter}`` with 1-based qubit labels."""
        x = z = 0
        for q, letter in ops.items():
            if not 1 <= q <= n:
                raise ValueError(f"qubit {q} out of range 1..{n}")
            code = _LETTERS.index(letter.upper())
            x |= (code & 1) << (q - 1)
            z |= (code >> 1) << (q - 1)
        return cls(n, x, z, sign)

    @property
    def symplectic(self) -> int:
        """The 2n-bit vector ``x | z << n`` used for GF(2) rank computations."""
        return self.x | (self.z << self.n)

    @property
    def support(self) -> int:
        """Mask of qubits acted on non-trivially."""
        return self.x | self.z

    def letter(self, q: int) -> str:
        """Single-qubit factor on 1-based qubit ``q``."""
        b = q - 1
        return _LETTERS[((self.x >> b) & 1) | (((self.z >> b) & 1) << 1)]

    def __mul__(self, other: PauliString) -> PauliString:
        return multiply(self, other)

    def __neg__(self) -> PauliString:
        return PauliString(self.n, self.x, self.z, self.sign ^ 1)

    def __str__(self) -> str:
        return pauli_to_text(self)


def pauli_from_text(s: str) -> PauliString:
    """Parse ``"-XZI"``-style text (highest qubit first)."""
    body = s.strip()
    sign = 0
    offset = 0
    if body.startswith(("-", "+")):
        sign = int(body[0] == "-")
        body = body[1:]
        offset = 1
    if not body:
        raise ParseError("empty Pauli string", position=offset + 1)
    n = len(body)
    x = z = 0
    for i, ch in enumerate(body):
        code = _LETTERS.find(ch.upper())
        if code < 0:
            raise ParseError(f"invalid Pauli letter {ch!r}", position=i + offset + 1)
        q = n - 1 - i
        x |= (code & 1) << q
        z |= (code >> 1) << q
    return PauliString(n, x, z, sign)


def pauli_to_text(p: PauliString) -> str:
    letters = "".join(p.letter(q) for q in range(p.n, 0, -1))
    return ("-" if p.sign else "") + letters


def _check_same_n(p: PauliString, q: PauliString) -> None:
    if p.n != q.n:
        raise DimensionError(f"qubit count mismatch: {p.n} vs {q.n}")


def product_phase(p: PauliString, q: PauliString) -> int:
    """Exponent ``e`` (mod 4) such that ``p q = i^e * R`` with ``R`` the
    sign-free Hermitian Pauli on ``(p.x ^ q.x, p.z ^ q.z)``.

    Moving Z^z_p past X^x_q costs ``(-1)^|z_p & x_q|``; the Y convention
    contributes ``i^|x&z|`` for each factor and is removed for the result.
    """
    x, z = p.x ^ q.x, p.z ^ q.z
    e = (
        _popcount(p.x & p.z)
        + _popcount(q.x & q.z)
        + 2 * _popcount(p.z & q.x)
        - _popcount(x & z)
        + 2 * (p.sign + q.sign)
    )
    return e % 4


def multiply_phase(p: PauliString, q: PauliString) -> tuple[PauliString, int]:
    """Product of arbitrary Paulis as ``(R, e)`` meaning ``i^e * R``.

    ``R`` carries the sign bit when ``e`` is even, so the returned exponent is
    0 for Hermitian products and 1 for anti-Hermitian ones.
    """
    _check_same_n(p, q)
    e = product_phase(p, q)
    return PauliString(p.n, p.x ^ q.x, p.z ^ q.z, e >> 1), e & 1


def multiply(p: PauliString, q: PauliString) -> PauliString:
    """Product ``pq``; both operands must commute so the result is Hermitian."""
    r, odd = multiply_phase(p, q)
    if odd:
        raise PhaseError(f"{pauli_to_text(p)} * {pauli_to_text(q)} has an imaginary phase")
    return r


def commutes(p: PauliString, q: PauliString) -> bool:
    _check_same_n(p, q)
    return _popcount((p.x & q.z) ^ (p.z & q.x)) % 2 == 0


def weight(p: PauliString) -> int:
    return _popcount(p.x | p.z)
