"""Surface homology: curves, the intersection form, and twist transvections.

Conventions (inherited by every other module): homology basis
(a1, b1, ..., ag, bg) with <a_i, b_i> = +1, and the right twist acting as
T_c(x) = x - <x, c> c.  With these choices the genus-1 twists about a1 and b1
have matrices [[1,1],[0,1]] and [[1,0],[-1,1]].
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from .errors import DimensionMismatch, SchemaError
from .exact import IntMatrix
from .presentations import exponent_vector, free_reduce


@dataclass(frozen=True)
class SurfaceData:
    genus: int
    punctures: int = 0

    def __post_init__(self):
        if self.genus < 0 or self.punctures < 0:
            raise SchemaError("negative genus or puncture count")


@dataclass(frozen=True)
class Curve:
    """A simple closed curve datum: name, homology class, separating flag and
    an optional fundamental-group word (signed generator indices)."""

    name: str
    homology: Tuple[int, ...]
    separating: bool = False
    word: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "homology", tuple(int(x) for x in self.homology))
        is_zero = all(x == 0 for x in self.homology)
        if self.separating != is_zero:
            raise SchemaError(
                f"curve {self.name}: separating flag must match a zero homology class"
            )
        if self.word is not None:
            w = free_reduce(self.word)
            object.__setattr__(self, "word", w)
            ab = exponent_vector(w, len(self.homology))
            if ab != self.homology:
                raise SchemaError(
                    f"curve {self.name}: word abelianization {ab} != homology {self.homology}"
                )


def symplectic_j(genus: int) -> IntMatrix:
    n = 2 * genus
    m = [[0] * n for _ in range(n)]
    for i in range(genus):
        m[2 * i][2 * i + 1] = 1
        m[2 * i + 1][2 * i] = -1
    return IntMatrix(m)


def intersection_pairing(x: Sequence[int], y: Sequence[int]) -> int:
    """<x, y> for the standard form; <a_i, b_i> = +1."""
    if len(x) != len(y) or len(x) % 2:
        raise DimensionMismatch("classes must have equal even length")
    total = 0
    for i in range(len(x) // 2):
        total += x[2 * i] * y[2 * i + 1] - x[2 * i + 1] * y[2 * i]
    return total


def twist_transvection(curve, genus: Optional[int] = None) -> IntMatrix:
    """Matrix of the right twist about the curve on H1: x -> x - <x, c> c.

    Accepts a Curve or a raw class.  A separating curve (zero class) acts
    trivially.
    """
    c = tuple(curve.homology) if isinstance(curve, Curve) else tuple(curve)
    n = len(c)
    if genus is not None and n != 2 * genus:
        raise DimensionMismatch("class length != 2g")
    if n % 2:
        raise DimensionMismatch("odd class length")
    j = symplectic_j(n // 2)
    ctj = tuple(sum(c[i] * j[i, k] for i in range(n)) for k in range(n))
    return IntMatrix(
        [[(1 if i == k else 0) + c[i] * ctj[k] for k in range(n)] for i in range(n)]
    )


def is_symplectic(m: IntMatrix) -> bool:
    """M^T J M = J for the standard form."""
    if m.rows != m.cols or m.rows % 2:
        raise DimensionMismatch("square even-dimensional matrix required")
    j = symplectic_j(m.rows // 2)
    return m.transpose() * j * m == j
