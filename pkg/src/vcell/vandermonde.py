"""Power-sum map, simplex sampling, multiplicity vectors and boundary patches."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exact import rat

TYPE1 = "Type1"
TYPE2 = "Type2"


class AdmissibilityError(ValueError):
    """Parameter point outside the closed chain 0 <= x_1 <= ... <= x_{d-1}."""


def power_sums(x: Sequence, d: int) -> tuple:
    """Return (p_1, ..., p_d) with p_k = sum of x_i^k, exactly."""
    if d < 1:
        raise ValueError("d must be at least 1")
    xs = [rat(v) for v in x]
    sums = []
    powers = list(xs)
    for _ in range(d):
        sums.append(sum(powers, Fraction(0)))
        powers = [p * v for p, v in zip(powers, xs)]
    return tuple(sums)


def vandermonde_image(x: Sequence, d: int) -> tuple:
    """Coordinates (p_2, ..., p_d) of the cell; p_1 = 1 is dropped."""
    return power_sums(x, d)[1:]


@dataclass(frozen=True)
class MultiplicityVector:
    """Block multiplicities of a boundary preimage.

    ``m`` is stored 0-based.  For Type1 it is ``(m_0, m_1, ..., m_{d-1})``
    where ``m_0`` counts the zero coordinates; Type2 has no zero block and
    stores ``(m_1, ..., m_{d-1})``.
    """

    kind: str
    m: tuple

    def __post_init__(self):
        m = tuple(int(v) for v in self.m)
        object.__setattr__(self, "m", m)
        if self.kind == TYPE1:
            if not m or m[0] < 0:
                raise ValueError("Type1 needs m_0 >= 0")
            for i, v in enumerate(m[1:], start=1):
                if i % 2 == 1 and v != 1:
                    raise ValueError(f"Type1 requires m_{i} = 1")
                if i % 2 == 0 and v < 1:
                    raise ValueError(f"Type1 requires m_{i} >= 1")
        elif self.kind == TYPE2:
            for i, v in enumerate(m, start=1):
                if i % 2 == 0 and v != 1:
                    raise ValueError(f"Type2 requires m_{i} = 1")
                if i % 2 == 1 and v < 1:
                    raise ValueError(f"Type2 requires m_{i} >= 1")
        else:
            raise ValueError(f"unknown kind {self.kind!r}")

    @property
    def n(self) -> int:
        return sum(self.m)

    @property
    def d(self) -> int:
        return len(self.m) + (0 if self.kind == TYPE1 else 1)

    @property
    def blocks(self) -> tuple:
        """Multiplicities of the d-1 nonzero distinct coordinates."""
        return self.m[1:] if self.kind == TYPE1 else self.m

    @property
    def zeros(self) -> int:
        return self.m[0] if self.kind == TYPE1 else 0

    def to_json(self) -> dict:
        return {"kind": self.kind, "m": list(self.m)}


def _compositions(total: int, parts: int, minimum: int = 1):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(minimum, total - minimum * (parts - 1) + 1):
        for rest in _compositions(total - first, parts - 1, minimum):
            yield (first,) + rest


def enumerate_multiplicity_vectors(n: int, d: int) -> list:
    """All Type1 then Type2 vectors for (n, d), in lexicographic order."""
    if d < 2 or n < d - 1:
        return []
    out = []
    # Type1: indices 0..d-1; odd forced to 1, even >= 1 except m_0 >= 0.
    even1 = [i for i in range(2, d) if i % 2 == 0]
    odd1 = [i for i in range(1, d) if i % 2 == 1]
    free_total = n - len(odd1)
    for m0 in range(0, free_total + 1):
        rest = free_total - m0
        for comp in _compositions(rest, len(even1)):
            m = [0] * d
            m[0] = m0
            for i in odd1:
                m[i] = 1
            for i, v in zip(even1, comp):
                m[i] = v
            out.append(MultiplicityVector(TYPE1, tuple(m)))
    # Type2: indices 1..d-1; even forced to 1, odd >= 1.
    odd2 = [i for i in range(1, d) if i % 2 == 1]
    even2 = [i for i in range(1, d) if i % 2 == 0]
    for comp in _compositions(n - len(even2), len(odd2)):
        m = [0] * (d - 1)
        for i in even2:
            m[i - 1] = 1
        for i, v in zip(odd2, comp):
            m[i - 1] = v
        out.append(MultiplicityVector(TYPE2, tuple(m)))
    out = sorted(set(out), key=lambda v: (v.kind, v.m))
    return out


@lru_cache(maxsize=None)
def partition_count(a: int, b: int) -> int:
    """Partitions of a into exactly b positive parts."""
    if b < 1:
        raise ValueError("b must be positive")
    if a < 0:
        return 0
    if a == b:
        return 1
    if b > a:
        return 0
    if b == 1:
        return 1
    return partition_count(a - 1, b - 1) + partition_count(a - b, b)


def new_hypersurface_count(n: int, d: int) -> int:
    """Hypersurfaces of the cell boundary that first appear at n points.

    They correspond to the partitions formed by the free (odd-index)
    blocks of Type2 vectors.
    """
    fixed = (d - 1) // 2
    free = d - 1 - fixed
    if n - fixed < free:
        return 0
    return partition_count(n - fixed, free)


class BoundaryPatch:
    """Evaluator (x_1, ..., x_{d-2}) -> (p_2, ..., p_d) for one multiplicity
    vector.  The last distinct coordinate is solved from the normalization
    sum m_i x_i = 1."""

    def __init__(self, mult: MultiplicityVector):
        self.mult = mult
        self.blocks = mult.blocks
        self.d = mult.d

    @property
    def free_params(self) -> int:
        return self.d - 2

    def preimage(self, params: Sequence) -> tuple:
        """Distinct coordinate values (x_1, ..., x_{d-1}), checked for admissibility."""
        params = [rat(p) for p in params]
        if len(params) != self.free_params:
            raise ValueError(f"expected {self.free_params} parameters")
        used = sum(m * x for m, x in zip(self.blocks[:-1], params))
        last = (1 - used) / self.blocks[-1]
        values = params + [last]
        previous = Fraction(0)
        for v in values:
            if v < previous:
                raise AdmissibilityError(f"parameters {values} are not 0 <= x_1 <= ... ")
            previous = v
        return tuple(values)

    def point(self, params: Sequence) -> tuple:
        """Full simplex point with multiplicities expanded (zeros first)."""
        values = self.preimage(params)
        pt = [Fraction(0)] * self.mult.zeros
        for m, v in zip(self.blocks, values):
            pt.extend([v] * m)
        return tuple(pt)

    def evaluate(self, params: Sequence) -> tuple:
        values = self.preimage(params)
        return tuple(
            sum((m * v**j for m, v in zip(self.blocks, values)), Fraction(0))
            for j in range(2, self.d + 1)
        )

    __call__ = evaluate


def boundary_patch(mult: MultiplicityVector) -> BoundaryPatch:
    return BoundaryPatch(mult)


def sample_simplex(n: int, count: int, seed: int, denominator: int = 10**6) -> list:
    """Seeded rational points on the simplex with n coordinates.

    Each point is a random non-negative integer vector summing to
    ``denominator`` (uniform stars-and-bars cut points), divided by it.
    """
    if n < 1 or count < 0:
        raise ValueError("need n >= 1 and count >= 0")
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        cuts = sorted(rng.randint(0, denominator) for _ in range(n - 1))
        edges = [0] + cuts + [denominator]
        out.append(tuple(Fraction(b - a, denominator) for a, b in zip(edges, edges[1:])))
    return out


def sample_patch_params(mult: MultiplicityVector, count: int, seed: int,
                        denominator: int = 10**4) -> list:
    """Seeded admissible parameter points for a boundary patch.

    Increments x_j - x_{j-1} = w_j / (denominator * M_j), with M_j the
    multiplicity mass from block j on, make the normalization hold for any
    non-negative integer weights w summing to ``denominator``.
    """
    rng = random.Random(seed)
    blocks = mult.blocks
    tails = [sum(blocks[j:]) for j in range(len(blocks))]
    out = []
    for _ in range(count):
        cuts = sorted(rng.randint(0, denominator) for _ in range(len(blocks) - 1))
        edges = [0] + cuts + [denominator]
        weights = [b - a for a, b in zip(edges, edges[1:])]
        x, params = Fraction(0), []
        for w, tail in zip(weights, tails):
            x += Fraction(w, denominator * tail)
            params.append(x)
        out.append(tuple(params[:-1]))
    return out
