"""
Parameter sets for attenuated-space and Johnson schemes.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Tuple

from attschemes.exceptions import ConfigError, DomainIndexError, FieldNotSupportedError
from attschemes.mods.exactnum import QPowers, QValue, q_binomial
from attschemes.utils.finite_field import SUPPORTED_ORDERS

Index = Tuple[int, int]


def attenuated_domain(n: int, ell: int, m: int) -> List[Index]:
    """
    The index set {(a,b) : a+b <= m, a <= n-m, b <= ell}, in deg-lex order.

    Deg-lex orders by total degree and then by the first coordinate, so
    (0,1) comes before (1,0).
    """
    points = [(a, b) for a in range(0, n - m + 1) for b in range(0, ell + 1) if a + b <= m]
    return sorted(points, key=lambda ab: (ab[0] + ab[1], ab[0]))


@dataclass(frozen=True)
class SchemeParams:
    """Parameters (q, n, ell, m) of the attenuated-space scheme A_q(n, ell, m)."""

    q: int
    n: int
    ell: int
    m: int

    def __post_init__(self):
        if self.q not in SUPPORTED_ORDERS:
            raise FieldNotSupportedError(f"field not in table: q={self.q} (supported: {', '.join(map(str, SUPPORTED_ORDERS))})")
        if self.n < 0 or self.ell < 0:
            raise ConfigError(f"n and ell must be non-negative, got n={self.n}, ell={self.ell}")
        if not 0 <= self.m <= self.n:
            raise ConfigError(f"m must satisfy 0 <= m <= n, got m={self.m}, n={self.n}")

    @property
    def qvalue(self) -> QValue:
        return QValue.from_order(self.q)

    @property
    def qq(self) -> Fraction:
        return Fraction(self.q)

    def powers(self) -> QPowers:
        return QPowers.exact(self.q, self.ell)

    @property
    def domain(self) -> List[Index]:
        return attenuated_domain(self.n, self.ell, self.m)

    def in_domain(self, index: Index) -> bool:
        a, b = index
        return 0 <= a <= self.n - self.m and 0 <= b <= self.ell and a + b <= self.m

    def require(self, index: Index, label: str = "index") -> None:
        """Raise DomainIndexError unless index lies in the domain."""
        if not self.in_domain(index):
            raise DomainIndexError(f"{label} {index} is outside the domain of {self}")

    @property
    def vertex_count(self) -> int:
        return int(self.qq ** (self.m * self.ell) * q_binomial(self.n, self.m, self.qq))

    @property
    def is_bivariate(self) -> bool:
        """True when both generators (1,0) and (0,1) are relations of the scheme."""
        return self.in_domain((1, 0)) and self.in_domain((0, 1))

    def to_dict(self) -> Dict[str, Any]:
        return {"q": self.q, "n": self.n, "ell": self.ell, "m": self.m}

    def __str__(self) -> str:
        return f"A_{self.q}({self.n},{self.ell},{self.m})"


@dataclass(frozen=True)
class JohnsonParams:
    """Parameters of the non-binary Johnson scheme J_r(n, m) on weight-m words over r letters."""

    r: int
    n: int
    m: int

    def __post_init__(self):
        if self.r < 2:
            raise ConfigError(f"alphabet size must be at least 2, got r={self.r}")
        if not 0 <= self.m <= self.n:
            raise ConfigError(f"m must satisfy 0 <= m <= n, got m={self.m}, n={self.n}")

    @property
    def vertex_count(self) -> int:
        return math.comb(self.n, self.m) * (self.r - 1) ** self.m

    @property
    def domain(self) -> List[Index]:
        """Relation labels (a,b) with a <= n-m and a+b <= m; b > 0 needs r > 2."""
        ell = self.m if self.r > 2 else 0
        return attenuated_domain(self.n, ell, self.m)

    def in_domain(self, index: Index) -> bool:
        return index in self.domain

    def require(self, index: Index, label: str = "index") -> None:
        if not self.in_domain(index):
            raise DomainIndexError(f"{label} {index} is outside the domain of J_{self.r}({self.n},{self.m})")

    def to_dict(self) -> Dict[str, Any]:
        return {"r": self.r, "n": self.n, "m": self.m}

