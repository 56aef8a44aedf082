"""Coordinate charts on odd-dimensional domains."""

from __future__ import annotations

import re
from dataclasses import dataclass

_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Chart:
    """An ordered tuple of coordinate names on a (2n+1)-dimensional domain.

    The dimension must be odd and at least 3.  Every operation that mixes
    tensors checks charts for equality, so charts with the same names are
    interchangeable.
    """

    names: tuple[str, ...]

    def __post_init__(self) -> None:
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(names) < 3 or len(names) % 2 == 0:
            raise ValueError(
                f"chart dimension must be odd and at least 3, got {len(names)}"
            )
        seen: set[str] = set()
        for name in names:
            if not _NAME.match(name):
                raise ValueError(f"invalid coordinate name {name!r}")
            if name in seen:
                raise ValueError(f"duplicate coordinate name {name!r}")
            seen.add(name)

    @property
    def dim(self) -> int:
        return len(self.names)

    @property
    def half(self) -> int:
        """The n in dim = 2n + 1."""
        return (len(self.names) - 1) // 2

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown coordinate {name!r}") from None

    def __repr__(self) -> str:
        return f"Chart({', '.join(self.names)})"
