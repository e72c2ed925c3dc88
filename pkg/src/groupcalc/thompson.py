"""Thompson's group F as exact dyadic piecewise-linear homeomorphisms of [0,1].

An element is the canonical breakpoint list of a PL homeomorphism fixing 0
and 1, with all breakpoint coordinates dyadic rationals and every slope an
exact power of 2. Canonical means no collinear interior breakpoint, so two
elements are equal as functions iff their breakpoint lists are identical.

pl_compose(f, g) is plain function composition f o g. The group product
``f * g`` reads words left to right (apply f first, then g), the convention
under which the standard relations of F hold for the generators below.

All arithmetic is exact; there is no floating point anywhere.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Dyadic",
    "DyadicPLMap",
    "PLValidationError",
    "pl_validate",
    "pl_identity",
    "pl_compose",
    "pl_invert",
    "pl_power",
    "pl_find_roots",
    "generator_x0",
    "generator_x1",
    "plmap_to_json",
    "plmap_from_json",
    "random_plmap",
]


class PLValidationError(ValueError):
    """Breakpoint data that does not describe an element of F."""


_DYADIC_RE = re.compile(r"(?P<num>-?[0-9]+)(?:/2\^(?P<exp>[0-9]+))?\Z")


@dataclass(frozen=True)
class Dyadic:
    """num / 2**exp in lowest terms (num odd or exp == 0), exp >= 0."""

    num: int
    exp: int = 0

    def __post_init__(self):
        if self.exp < 0:
            raise PLValidationError("dyadic exponent must be nonnegative")
        num, exp = self.num, self.exp
        while exp > 0 and num % 2 == 0:
            num //= 2
            exp -= 1
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "exp", exp)

    @classmethod
    def from_fraction(cls, fr: Fraction) -> "Dyadic":
        den = fr.denominator
        if den & (den - 1):
            raise PLValidationError(f"{fr} is not a dyadic rational")
        return cls(fr.numerator, den.bit_length() - 1)

    @classmethod
    def parse(cls, text: str) -> "Dyadic":
        match = _DYADIC_RE.match(text.strip())
        if not match:
            raise PLValidationError(f"malformed dyadic: {text!r}")
        exp = int(match.group("exp")) if match.group("exp") else 0
        return cls(int(match.group("num")), exp)

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, 1 << self.exp)

    def shift(self, s: int) -> "Dyadic":
        """self * 2**s for any integer s."""
        if s >= 0:
            return Dyadic(self.num << s, self.exp)
        return Dyadic(self.num, self.exp - s)

    def __add__(self, other: "Dyadic") -> "Dyadic":
        e = max(self.exp, other.exp)
        return Dyadic(
            (self.num << (e - self.exp)) + (other.num << (e - other.exp)), e
        )

    def __sub__(self, other: "Dyadic") -> "Dyadic":
        e = max(self.exp, other.exp)
        return Dyadic(
            (self.num << (e - self.exp)) - (other.num << (e - other.exp)), e
        )

    def __neg__(self) -> "Dyadic":
        return Dyadic(-self.num, self.exp)

    def _cmp_key(self, other: "Dyadic") -> tuple[int, int]:
        e = max(self.exp, other.exp)
        return self.num << (e - self.exp), other.num << (e - other.exp)

    def __lt__(self, other: "Dyadic") -> bool:
        a, b = self._cmp_key(other)
        return a < b

    def __le__(self, other: "Dyadic") -> bool:
        a, b = self._cmp_key(other)
        return a <= b

    def __str__(self) -> str:
        return f"{self.num}/2^{self.exp}"

    def __repr__(self) -> str:
        return f"Dyadic({self})"


_ZERO = Dyadic(0)
_ONE = Dyadic(1)


def _slope_exponent(dy: Dyadic, dx: Dyadic) -> int:
    """log2 of dy/dx when that ratio is an exact power of 2; error otherwise."""
    ratio = dy.as_fraction() / dx.as_fraction()
    p, q = ratio.numerator, ratio.denominator
    if p <= 0 or (p & (p - 1)) or (q & (q - 1)):
        raise PLValidationError(f"slope {ratio} is not a power of 2")
    return p.bit_length() - q.bit_length()


@dataclass(frozen=True)
class DyadicPLMap:
    """Canonical element of F. Construct through pl_validate only."""

    breakpoints: tuple[tuple[Dyadic, Dyadic], ...]
    slopes: tuple[int, ...]  # slope exponent per segment

    @property
    def is_identity(self) -> bool:
        return len(self.breakpoints) == 2 and self.slopes == (0,)

    def segment_index(self, x: Dyadic) -> int:
        pts = self.breakpoints
        lo, hi = 0, len(pts) - 2
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if pts[mid][0] <= x:
                lo = mid
            else:
                hi = mid - 1
        return lo

    def evaluate(self, x: Dyadic) -> Dyadic:
        if x < _ZERO or _ONE < x:
            raise PLValidationError(f"{x} outside [0, 1]")
        i = self.segment_index(x)
        x0, y0 = self.breakpoints[i]
        return y0 + (x - x0).shift(self.slopes[i])

    def inverse_evaluate(self, y: Dyadic) -> Dyadic:
        if y < _ZERO or _ONE < y:
            raise PLValidationError(f"{y} outside [0, 1]")
        pts = self.breakpoints
        lo, hi = 0, len(pts) - 2
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if pts[mid][1] <= y:
                lo = mid
            else:
                hi = mid - 1
        x0, y0 = pts[lo]
        return x0 + (y - y0).shift(-self.slopes[lo])

    def __mul__(self, other: "DyadicPLMap") -> "DyadicPLMap":
        # left-to-right word order: (self * other)(x) = other(self(x))
        return pl_compose(other, self)

    def __pow__(self, q: int) -> "DyadicPLMap":
        return pl_power(self, q)

    def __invert__(self) -> "DyadicPLMap":
        return pl_invert(self)

    def __str__(self) -> str:
        return " ".join(f"({x},{y})" for x, y in self.breakpoints)

    def __repr__(self) -> str:
        return f"DyadicPLMap[{self}]"


def _coerce_point(point) -> tuple[Dyadic, Dyadic]:
    x, y = point
    if isinstance(x, Fraction):
        x = Dyadic.from_fraction(x)
    if isinstance(y, Fraction):
        y = Dyadic.from_fraction(y)
    if not isinstance(x, Dyadic) or not isinstance(y, Dyadic):
        raise PLValidationError(f"breakpoint {point!r} is not a dyadic pair")
    return x, y


def pl_validate(candidate: Iterable) -> DyadicPLMap:
    """Validate a breakpoint sequence and return the canonical map.

    Checks: endpoints (0,0) and (1,1), strict monotonicity in both
    coordinates, and power-of-2 slope on every segment. Collinear interior
    breakpoints are dropped.
    """
    points = [_coerce_point(p) for p in candidate]
    if len(points) < 2:
        raise PLValidationError("need at least the two endpoint breakpoints")
    if points[0] != (_ZERO, _ZERO) or points[-1] != (_ONE, _ONE):
        raise PLValidationError("map must fix 0 and 1")
    slopes = []
    for (x0, y0), (x1, y1) in zip(points, points[1:]):
        if not (x0 < x1 and y0 < y1):
            raise PLValidationError("breakpoints must increase strictly")
        slopes.append(_slope_exponent(y1 - y0, x1 - x0))
    canon = [points[0]]
    canon_slopes = [slopes[0]]
    for i in range(1, len(points) - 1):
        if slopes[i] == canon_slopes[-1]:
            continue
        canon.append(points[i])
        canon_slopes.append(slopes[i])
    canon.append(points[-1])
    return DyadicPLMap(tuple(canon), tuple(canon_slopes))


def pl_identity() -> DyadicPLMap:
    return DyadicPLMap(((_ZERO, _ZERO), (_ONE, _ONE)), (0,))


def pl_compose(f: DyadicPLMap, g: DyadicPLMap) -> DyadicPLMap:
    """Canonical form of f o g (apply g first)."""
    xs = {x for x, _ in g.breakpoints}
    xs.update(g.inverse_evaluate(xf) for xf, _ in f.breakpoints)
    points = [(x, f.evaluate(g.evaluate(x))) for x in sorted(xs)]
    return pl_validate(points)


def pl_invert(f: DyadicPLMap) -> DyadicPLMap:
    """Coordinate swap; exact inverse under composition."""
    return DyadicPLMap(
        tuple((y, x) for x, y in f.breakpoints),
        tuple(-s for s in f.slopes),
    )


def pl_power(f: DyadicPLMap, q: int) -> DyadicPLMap:
    if q == 0:
        return pl_identity()
    base = f if q > 0 else pl_invert(f)
    result = pl_identity()
    acc = base
    q = abs(q)
    while q:
        if q & 1:
            result = pl_compose(result, acc)
        q >>= 1
        if q:
            acc = pl_compose(acc, acc)
    return result


def generator_x0() -> DyadicPLMap:
    """The standard generator with breakpoints (0,0),(1/4,1/2),(1/2,3/4),(1,1)."""
    return pl_validate(
        [
            (Dyadic(0), Dyadic(0)),
            (Dyadic(1, 2), Dyadic(1, 1)),
            (Dyadic(1, 1), Dyadic(3, 2)),
            (Dyadic(1), Dyadic(1)),
        ]
    )


def generator_x1() -> DyadicPLMap:
    """Identity on [0,1/2], a rescaled copy of x0 on [1/2,1]."""
    return pl_validate(
        [
            (Dyadic(0), Dyadic(0)),
            (Dyadic(1, 1), Dyadic(1, 1)),
            (Dyadic(5, 3), Dyadic(3, 2)),
            (Dyadic(3, 2), Dyadic(7, 3)),
            (Dyadic(1), Dyadic(1)),
        ]
    )


def _splittable(rest: int, terms: int, depth: int) -> bool:
    """Can rest be written as a sum of `terms` powers of 2, each between
    2^0 and 2^(2*depth)? Minimal term count is the capped popcount; any
    count up to rest itself is reachable by splitting a power in half."""
    if terms == 0:
        return rest == 0
    if rest < terms:
        return False
    max_exp = 2 * depth
    min_terms = (rest >> max_exp) + (rest & ((1 << max_exp) - 1)).bit_count()
    return min_terms <= terms


def _slope_vectors(depth: int, first: int | None, last: int | None) -> Iterator[list[int]]:
    """All slope-exponent assignments on the 2^depth uniform grid cells.

    Cell c gets slope 2^(s_c) with |s_c| <= depth; the rises must sum to 1,
    i.e. sum of 2^(s_c + depth) equals 2^(2*depth). DFS with exact
    feasibility pruning; first/last pin those cells when given.
    """
    cells = 1 << depth
    total = 1 << (2 * depth)
    choices = range(-depth, depth + 1)
    vec: list[int] = []

    def rec(idx: int, remaining: int) -> Iterator[list[int]]:
        if idx == cells:
            yield list(vec)
            return
        left = cells - idx - 1
        if idx == 0 and first is not None:
            opts: Sequence[int] = (first,)
        elif idx == cells - 1 and last is not None:
            opts = (last,)
        else:
            opts = choices
        for s in opts:
            rest = remaining - (1 << (s + depth))
            if not _splittable(rest, left, depth):
                continue
            vec.append(s)
            yield from rec(idx + 1, rest)
            vec.pop()

    return rec(0, total)


def _map_from_slopes(depth: int, slopes: Sequence[int]) -> DyadicPLMap:
    points = [(_ZERO, _ZERO)]
    y = _ZERO
    for c, s in enumerate(slopes):
        x1 = Dyadic(c + 1, depth)
        y = y + Dyadic(1, depth).shift(s)
        points.append((x1, y))
    return pl_validate(points)


def pl_find_roots(g: DyadicPLMap, q: int, depth: int) -> set[DyadicPLMap]:
    """All h with h^q = g among maps with breakpoints on the grid k/2^depth
    and slope exponents bounded by depth. Exhaustive within that family;
    nothing is claimed beyond it.

    Since g = h^q has slope(h at 0)^q as its slope at 0 (and likewise at 1),
    the first and last grid cells are pinned, which prunes the search hard.
    """
    if q < 1:
        raise PLValidationError("root degree must be a positive integer")
    if q == 1:
        return {g}
    s0, s1 = g.slopes[0], g.slopes[-1]
    if s0 % q or s1 % q:
        return set()
    first, last = s0 // q, s1 // q
    if abs(first) > depth or abs(last) > depth:
        return set()
    roots = set()
    for vec in _slope_vectors(depth, first, last):
        h = _map_from_slopes(depth, vec)
        if pl_power(h, q) == g:
            roots.add(h)
    return roots


def random_plmap(rng, depth: int) -> DyadicPLMap:
    """Random element from the depth-grid family (may be identity)."""
    cells = 1 << depth
    remaining = 1 << (2 * depth)
    slopes = []
    for idx in range(cells):
        left = cells - idx - 1
        feasible = [
            s
            for s in range(-depth, depth + 1)
            if _splittable(remaining - (1 << (s + depth)), left, depth)
        ]
        s = rng.choice(feasible)
        slopes.append(s)
        remaining -= 1 << (s + depth)
    return _map_from_slopes(depth, slopes)


def plmap_to_json(f: DyadicPLMap) -> str:
    """Canonical file form: ordered array of ["k/2^e", "k/2^e"] pairs."""
    return json.dumps([[str(x), str(y)] for x, y in f.breakpoints])


def plmap_from_json(text: str) -> DyadicPLMap:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PLValidationError(f"bad element file: {exc}") from exc
    if not isinstance(data, list):
        raise PLValidationError("element file must be an array of pairs")
    points = []
    for pair in data:
        if not isinstance(pair, list) or len(pair) != 2:
            raise PLValidationError(f"bad breakpoint entry: {pair!r}")
        points.append((Dyadic.parse(str(pair[0])), Dyadic.parse(str(pair[1]))))
    return pl_validate(points)
