"""
Sparse structure-constant tables (intersection numbers and Krein parameters).
"""

from fractions import Fraction
from typing import Any, Dict, Iterator, List, Tuple

from attschemes.mods.exactnum import format_exact

Index = Tuple[int, int]
TensorKey = Tuple[Index, Index, Index]


class ParameterTensor:
    """
    Sparse map (key, (i,j), (a,b)) -> exact value; absent entries are zero.

    For intersection numbers the entry is p_{key,ij}^{ab}; for Krein
    parameters it is q_{key,rs}^{ab}.
    """

    def __init__(self, kind: str):
        """
        Initialize an empty tensor.

        Args:
            kind: "p" for intersection numbers, "q" for Krein parameters
        """
        self.kind = kind
        self._entries: Dict[TensorKey, Fraction] = {}

    def set(self, key: Index, index: Index, target: Index, value) -> None:
        value = Fraction(value)
        if value:
            self._entries[(key, index, target)] = value
        else:
            self._entries.pop((key, index, target), None)

    def get(self, key: Index, index: Index, target: Index) -> Fraction:
        return self._entries.get((key, index, target), Fraction(0))

    def keys(self) -> List[Index]:
        return sorted({entry[0] for entry in self._entries})

    def row(self, key: Index, index: Index) -> Dict[Index, Fraction]:
        """All nonzero targets of (key, index)."""
        return {t: v for (k, i, t), v in self._entries.items() if k == key and i == index}

    def items(self) -> Iterator[Tuple[TensorKey, Fraction]]:
        return iter(sorted(self._entries.items()))

    def __len__(self) -> int:
        return len(self._entries)

    def restrict(self, keys: List[Index]) -> "ParameterTensor":
        """Copy holding only the slices whose key is in ``keys``."""
        result = ParameterTensor(self.kind)
        for (key, index, target), value in self._entries.items():
            if key in keys:
                result.set(key, index, target, value)
        return result

    def differences(self, other: "ParameterTensor") -> List[Tuple[TensorKey, Fraction, Fraction]]:
        """Entries where the two tensors disagree, as (key, self value, other value)."""
        entries = set(self._entries) | set(other._entries)
        return [
            (entry, self._entries.get(entry, Fraction(0)), other._entries.get(entry, Fraction(0)))
            for entry in sorted(entries)
            if self._entries.get(entry) != other._entries.get(entry)
        ]

    def to_rows(self) -> List[Dict[str, Any]]:
        return [{"key": list(k), "index": list(i), "target": list(t), "value": format_exact(v)} for (k, i, t), v in self.items()]
