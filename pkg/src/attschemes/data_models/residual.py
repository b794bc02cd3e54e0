"""
Residual records produced by the identity verifiers.
"""

from fractions import Fraction
from typing import Any, Dict, Tuple

from attschemes.mods.exactnum import format_exact


class RelationResidual:
    """One evaluated instance of an identity: both sides and their difference."""

    def __init__(self, relation: str, index: Tuple[Any, ...], lhs: Fraction, rhs: Fraction):
        """
        Initialize a residual record.

        Args:
            relation: Identity name, e.g. "crecK(+1)" or "recT2"
            index: Index point at which the identity was evaluated
            lhs: Left-hand side value
            rhs: Right-hand side value
        """
        self.relation = relation
        self.index = tuple(index)
        self.lhs = lhs
        self.rhs = rhs

    @property
    def residual(self) -> Fraction:
        return self.lhs - self.rhs

    @property
    def passed(self) -> bool:
        return self.residual == 0

    def sort_key(self) -> Tuple[str, str]:
        return (self.relation, repr(self.index))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "relation": self.relation,
            "index": [list(part) if isinstance(part, tuple) else part for part in self.index],
            "lhs": format_exact(self.lhs),
            "rhs": format_exact(self.rhs),
            "residual": format_exact(self.residual),
        }

    def __repr__(self) -> str:
        return f"RelationResidual({self.relation}, {self.index}, residual={self.residual})"
