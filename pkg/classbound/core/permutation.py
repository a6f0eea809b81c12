"""
Permutation carrier.

Permutations act on the right: ``(p * q)`` means apply ``p`` first, then ``q``,
so that ``x**(gh) = (x**g)**h`` matches the exponent notation used for
conjugation throughout the package.
"""

import logging
import math
import re
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


@dataclass(frozen=True)
class Permutation:
    """A bijection on ``{0, ..., degree-1}`` stored as its image sequence.

    Attributes:
        images: ``images[i]`` is the image of point ``i``.
    """
    images: Tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(len(images))):
            error_msg = f"Not a permutation image sequence: {images}"
            logger.error(error_msg)
            raise ValueError(error_msg)
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    @classmethod
    def from_array(cls, row: Sequence[int]) -> "Permutation":
        return cls(tuple(int(i) for i in row))

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> "Permutation":
        """Parse cycle notation such as ``"(0 1 2)(3 4)"``.

        Commas are accepted as separators, and ``"()"`` is the identity.
        """
        images = list(range(degree))
        for body in _CYCLE_RE.findall(text):
            points = [int(tok) for tok in re.split(r"[,\s]+", body.strip()) if tok]
            if len(set(points)) != len(points):
                error_msg = f"Repeated point in cycle ({body})"
                logger.error(error_msg)
                raise ValueError(error_msg)
            for a, b in zip(points, points[1:] + points[:1]):
                if not 0 <= a < degree:
                    error_msg = f"Point {a} outside degree {degree} in {text!r}"
                    logger.error(error_msg)
                    raise ValueError(error_msg)
                images[a] = b
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.images, dtype=np.int64)

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise ValueError("Cannot compose permutations of different degree")
        return Permutation(tuple(other.images[i] for i in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def __pow__(self, exponent: int) -> "Permutation":
        result = Permutation.identity(self.degree)
        base = self if exponent >= 0 else self.inverse()
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def conjugate(self, h: "Permutation") -> "Permutation":
        """Return ``h^-1 * self * h``."""
        return h.inverse() * self * h

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> List[Tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = set()
        result = []
        for start in range(self.degree):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            nxt = self.images[start]
            while nxt != start:
                cycle.append(nxt)
                seen.add(nxt)
                nxt = self.images[nxt]
            if len(cycle) > 1:
                result.append(tuple(cycle))
        return result

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if self.cycles() else 1

    def cycle_string(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(p) for p in c) + ")" for c in cycles)

    def __str__(self) -> str:
        return self.cycle_string()


def shift(perm: Permutation, offset: int, degree: int) -> Permutation:
    """Embed ``perm`` into a larger degree, moving its support up by ``offset``."""
    images = list(range(degree))
    for i, j in enumerate(perm.images):
        images[i + offset] = j + offset
    return Permutation(tuple(images))


def parse_generators(texts: Iterable[str], degree: int) -> List[Permutation]:
    return [Permutation.from_cycles(t, degree) for t in texts]
