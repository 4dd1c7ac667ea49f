"""2-adic valuations that index the Bockstein pages for an odd prime power q."""

import logging
from dataclasses import dataclass
from typing import Iterable, List

from .errors import EvenInput


def nu2(m: int) -> int:
    """Exponent of the largest power of 2 dividing m (m != 0)."""
    if m == 0:
        raise ValueError("nu2 of 0 is undefined")
    return (m & -m).bit_length() - 1


@dataclass(frozen=True)
class BocksteinExponents:
    q: int
    r2: int
    r4: int
    r6: int
    r14: int

    @property
    def k(self) -> int:
        """k with q = 4k + 1 or q = 4k - 1."""
        return (self.q + 1) // 4 if self.q % 4 == 3 else (self.q - 1) // 4

    def identity_failures(self) -> List[str]:
        failures = []
        if not self.r2 == self.r6 == self.r14:
            failures.append(f"r2={self.r2}, r6={self.r6}, r14={self.r14} differ")
        if self.r4 != self.r2 + 1:
            failures.append(f"r4={self.r4} is not r2+1={self.r2 + 1}")
        if self.r2 != nu2(self.k) + 3:
            failures.append(f"r2={self.r2} is not nu2({self.k})+3={nu2(self.k) + 3}")
        return failures

    def as_tuple(self):
        return self.r2, self.r4, self.r6, self.r14


def bockstein_exponents(q: int) -> BocksteinExponents:
    """r_i = nu2(q^i - 1) for i = 2, 4, 6, 14."""
    if q % 2 == 0 or q < 3:
        raise EvenInput(f"q must be odd and at least 3, got {q}")
    return BocksteinExponents(q, *(nu2(q ** i - 1) for i in (2, 4, 6, 14)))


def check_range(qs: Iterable[int]) -> List[str]:
    """Identity failures over a range of odd q, as 'q: message' strings."""
    failures = []
    count = 0
    for q in qs:
        count += 1
        failures.extend(f"{q}: {message}" for message in bockstein_exponents(q).identity_failures())
    logging.debug(f"Checked Bockstein exponent identities for {count} values of q")
    return failures
