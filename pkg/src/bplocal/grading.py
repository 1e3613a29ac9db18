"""Grading arithmetic for the truncated ring R = Z_(p)[v_1, ..., v_N].

The distinguished element v_0 = p sits in degree 0 and is never a monomial
generator; it is tracked by the coefficient structure of a module instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .errors import NonFiniteDegreewise, TruncationExceeded


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class RingDescriptor:
    """The coefficient ring Z_(p)[v_1, ..., v_N] with |v_i| = 2(p^i - 1)."""

    prime: int
    truncation: int

    def __post_init__(self):
        if not _is_prime(self.prime):
            raise ValueError(f"{self.prime} is not prime")
        if self.truncation < 0:
            raise ValueError("truncation must be nonnegative")

    def degree(self, i: int) -> int:
        return generator_degree(self, i)

    def check_index(self, i: int) -> None:
        if i < 0 or i > self.truncation:
            raise TruncationExceeded(
                f"generator index {i} outside 0..{self.truncation}")

    def ideal(self, n: int) -> "IdealSpec":
        """The ideal I_{n+1} = (v_0, ..., v_n)."""
        return IdealSpec(self, n)


def generator_degree(ring: RingDescriptor, i: int) -> int:
    ring.check_index(i)
    if i == 0:
        return 0
    return 2 * (ring.prime ** i - 1)


@dataclass(frozen=True)
class IdealSpec:
    """I_{n+1} = (v_0, v_1, ..., v_n) with v_0 = p; ``top`` is n."""

    ring: RingDescriptor
    top: int

    def __post_init__(self):
        if self.top < 0:
            raise ValueError("an invariant ideal needs at least v_0 = p")
        if self.top > self.ring.truncation:
            raise TruncationExceeded(
                f"I_{self.top + 1} needs v_{self.top} but truncation is "
                f"{self.ring.truncation}")

    @property
    def indices(self) -> range:
        return range(self.top + 1)

    @property
    def label(self) -> int:
        """The subscript in I_{n+1}."""
        return self.top + 1


# --- exponent constraints -------------------------------------------------

@dataclass(frozen=True)
class ExponentRange:
    """Allowed exponents lo..hi (inclusive); ``None`` means unbounded."""

    lo: Optional[int]
    hi: Optional[int]

    @property
    def unbounded_below(self) -> bool:
        return self.lo is None

    @property
    def unbounded_above(self) -> bool:
        return self.hi is None

    def __contains__(self, e: int) -> bool:
        return ((self.lo is None or e >= self.lo)
                and (self.hi is None or e <= self.hi))


FREE = ExponentRange(0, None)
NEGATIVE = ExponentRange(None, -1)
ALL_INTEGERS = ExponentRange(None, None)


def bounded(e: int) -> ExponentRange:
    """Exponents of the basis of R/(v^e): 0 <= a < e."""
    return ExponentRange(0, e - 1)


@dataclass(frozen=True)
class ExponentConstraint:
    """One ExponentRange per positive-degree generator v_1..v_N."""

    ranges: tuple

    @classmethod
    def free(cls, ring: RingDescriptor) -> "ExponentConstraint":
        return cls((FREE,) * ring.truncation)

    @classmethod
    def from_mapping(cls, ring: RingDescriptor, mapping) -> "ExponentConstraint":
        """Build from {index: ExponentRange}; unspecified indices are free."""
        for i in mapping:
            if i < 1 or i > ring.truncation:
                raise TruncationExceeded(
                    f"constraint on v_{i} outside 1..{ring.truncation}")
        return cls(tuple(mapping.get(i, FREE)
                         for i in range(1, ring.truncation + 1)))

    def is_degreewise_finite(self) -> bool:
        """False iff one generator can go to -inf while another goes to +inf."""
        neg = {i for i, r in enumerate(self.ranges) if r.unbounded_below}
        pos = {i for i, r in enumerate(self.ranges) if r.unbounded_above}
        return not any(i != j for i in neg for j in pos)


def _floor_div(a: int, b: int) -> int:
    return a // b


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def monomials_of_degree(ring: RingDescriptor, constraints: ExponentConstraint,
                        d: int) -> list:
    """All exponent vectors (e_1, ..., e_N) allowed by ``constraints`` with
    sum e_i |v_i| = d, in lexicographic order.

    Raises NonFiniteDegreewise when the constraints allow an unbounded
    negative direction and a distinct unbounded positive direction; the
    family is then infinite for every degree it reaches, so the check does
    not depend on ``d``.
    """
    ranges = list(constraints.ranges)
    if len(ranges) != ring.truncation:
        raise ValueError("constraint length does not match truncation")
    if not constraints.is_degreewise_finite():
        neg = [i + 1 for i, r in enumerate(ranges) if r.unbounded_below]
        pos = [i + 1 for i, r in enumerate(ranges) if r.unbounded_above]
        raise NonFiniteDegreewise(
            f"degree {d} piece is infinite: exponents of v{neg} are unbounded "
            f"below while those of v{pos} are unbounded above")
    N = ring.truncation
    if N == 0:
        return [()] if d == 0 else []
    degs = [generator_degree(ring, i) for i in range(1, N + 1)]
    lo = [r.lo for r in ranges]
    hi = [r.hi for r in ranges]

    if all(x is not None for x in lo):
        total = sum(l * g for l, g in zip(lo, degs))
        for i in range(N):
            cap = lo[i] + _floor_div(d - total, degs[i])
            hi[i] = cap if hi[i] is None else min(hi[i], cap)
        solver = N - 1
    elif all(x is not None for x in hi):
        total = sum(h * g for h, g in zip(hi, degs))
        for i in range(N):
            floor_ = hi[i] - _floor_div(total - d, degs[i])
            lo[i] = floor_ if lo[i] is None else max(lo[i], floor_)
        solver = N - 1
    else:
        # a single generator is unbounded on both sides; all others boxed
        solver = next(i for i in range(N) if lo[i] is None or hi[i] is None)

    if any(l is not None and h is not None and l > h for l, h in zip(lo, hi)):
        return []

    order = [i for i in range(N) if i != solver]
    bounded_all = all(l is not None and h is not None for l, h in zip(lo, hi))
    if bounded_all:
        rest_min = [0] * (len(order) + 1)
        rest_max = [0] * (len(order) + 1)
        rest_min[-1] = lo[solver] * degs[solver]
        rest_max[-1] = hi[solver] * degs[solver]
        for pos in range(len(order) - 1, -1, -1):
            i = order[pos]
            rest_min[pos] = rest_min[pos + 1] + lo[i] * degs[i]
            rest_max[pos] = rest_max[pos + 1] + hi[i] * degs[i]

    out = []
    exps = [0] * N

    def solve(pos: int, partial: int) -> None:
        if bounded_all and not (rest_min[pos] <= d - partial <= rest_max[pos]):
            return
        if pos == len(order):
            rem = d - partial
            if rem % degs[solver]:
                return
            e = rem // degs[solver]
            if ((lo[solver] is None or e >= lo[solver])
                    and (hi[solver] is None or e <= hi[solver])):
                exps[solver] = e
                out.append(tuple(exps))
            return
        i = order[pos]
        for e in range(lo[i], hi[i] + 1):
            exps[i] = e
            solve(pos + 1, partial + e * degs[i])

    solve(0, 0)
    out.sort()
    return out


def monomial_degree(ring: RingDescriptor, exps: Sequence[int]) -> int:
    return sum(e * generator_degree(ring, i + 1) for i, e in enumerate(exps))


def iter_generator_degrees(ring: RingDescriptor) -> Iterator[int]:
    for i in range(ring.truncation + 1):
        yield generator_degree(ring, i)
