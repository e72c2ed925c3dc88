"""Concrete groups and combinators: free abelian lattices, Z[1/m], free
groups, a Baumslag-Solitar hook, direct sums with support tracking, and
free products with syllable normal form.

Every group is exposed through a small duck-typed handle:

    identity()          the identity element
    mul(x, y), inv(x)   group operations on canonical elements
    power(x, q)         via square-and-multiply
    parse(text) / format_element(x)
    contains(x)         element validity
    roots(x, j)         exact j-th roots as a tuple, when computable
    enumerate_elements()  deterministic enumeration starting at identity
    random_element(rng, size)
    length(x)           a natural length function, when one exists
    ball_enumeration(n) finite enumeration of the length-<= n ball, or None

Elements are canonical hashable values (ints/tuples/Fractions/Words/...),
so == is group equality throughout.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Iterator, Optional, Sequence

from groupcalc import bs as bsmod
from groupcalc.words import (
    Alphabet,
    Word,
    fg_cyclic_reduce,
    fg_multiply,
    fg_power,
    free_reduce,
    parse_word,
    reduced_length,
)

__all__ = [
    "CatalogError",
    "AntecedentOverflowError",
    "EnumerationUnavailableError",
    "GroupHandle",
    "IntLattice",
    "ZInvGroup",
    "FreeGroupHandle",
    "BsGroupHandle",
    "DirectSumGroup",
    "FreeProductGroup",
    "antecedents",
    "supp",
    "dsum_multiply",
    "fprod_normal_form",
    "Ball",
    "ball",
    "parse_group_spec",
]


class CatalogError(ValueError):
    """Bad element, factor mismatch, or unsupported request."""


class AntecedentOverflowError(CatalogError):
    """Antecedent chain did not terminate within the depth limit."""

    def __init__(self, chain):
        self.chain = list(chain)
        pretty = " <- ".join(str(x) for x in self.chain)
        super().__init__(f"unbounded divisibility chain: {pretty}")


class EnumerationUnavailableError(CatalogError):
    """A finite enumeration was requested where none exists."""


class GroupHandle:
    """Shared defaults for the concrete handles below."""

    name = "group"

    def identity(self):
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def is_identity(self, x) -> bool:
        return x == self.identity()

    def power(self, x, q: int):
        if q == 0:
            return self.identity()
        base = x if q > 0 else self.inv(x)
        acc, result, q = base, self.identity(), abs(q)
        while q:
            if q & 1:
                result = self.mul(result, acc)
            q >>= 1
            if q:
                acc = self.mul(acc, acc)
        return result

    def contains(self, x) -> bool:
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def format_element(self, x) -> str:
        return str(x)

    def roots(self, x, j: int) -> tuple:
        raise CatalogError(f"{self.name} has no root extraction")

    def has_roots(self) -> bool:
        try:
            self.roots(self.identity(), 2)
            return True
        except CatalogError:
            return False

    def enumerate_elements(self) -> Iterator:
        raise EnumerationUnavailableError(f"{self.name} has no enumeration")

    def random_element(self, rng, size: int):
        raise CatalogError(f"{self.name} has no random sampler")

    def length(self, x) -> int:
        raise CatalogError(f"{self.name} has no length function")

    def ball_enumeration(self, n: int) -> Optional[tuple]:
        return None

    def __repr__(self) -> str:
        return self.name


class IntLattice(GroupHandle):
    """Z^d with the l1 length; elements are integer d-tuples."""

    def __init__(self, rank: int):
        if rank < 1:
            raise CatalogError("rank must be >= 1")
        self.rank = rank
        self.name = f"z({rank})"

    def identity(self):
        return (0,) * self.rank

    def mul(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def inv(self, x):
        return tuple(-a for a in x)

    def power(self, x, q: int):
        return tuple(q * a for a in x)

    def contains(self, x) -> bool:
        return (
            isinstance(x, tuple)
            and len(x) == self.rank
            and all(isinstance(a, int) for a in x)
        )

    def parse(self, text: str):
        text = text.strip()
        if self.rank == 1 and not text.startswith("("):
            return (int(text),)
        body = text.strip("()")
        coords = tuple(int(p) for p in body.split(",") if p.strip())
        if len(coords) != self.rank:
            raise CatalogError(f"expected {self.rank} coordinates in {text!r}")
        return coords

    def format_element(self, x) -> str:
        if self.rank == 1:
            return str(x[0])
        return "(" + ",".join(str(a) for a in x) + ")"

    def roots(self, x, j: int) -> tuple:
        if any(a % j for a in x):
            return ()
        return (tuple(a // j for a in x),)

    def length(self, x) -> int:
        return sum(abs(a) for a in x)

    def ball_enumeration(self, n: int) -> tuple:
        out = []
        for coords in itertools.product(range(-n, n + 1), repeat=self.rank):
            if sum(abs(a) for a in coords) <= n:
                out.append(coords)
        out.sort(key=lambda c: (sum(abs(a) for a in c), c))
        return tuple(out)

    def enumerate_elements(self) -> Iterator:
        shell = 0
        while True:
            for coords in self.ball_enumeration(shell):
                if sum(abs(a) for a in coords) == shell:
                    yield coords
            shell += 1

    def random_element(self, rng, size: int):
        return tuple(rng.randint(-size, size) for _ in range(self.rank))


class ZInvGroup(GroupHandle):
    """Z[1/m], additive: exact rationals whose denominator divides m^k."""

    def __init__(self, m: int):
        if m < 1:
            raise CatalogError("m must be a positive integer")
        self.m = m
        self.name = f"zinv({m})"

    def identity(self):
        return Fraction(0)

    def mul(self, x, y):
        return x + y

    def inv(self, x):
        return -x

    def power(self, x, q: int):
        return x * q

    def contains(self, x) -> bool:
        if not isinstance(x, Fraction):
            return False
        den = x.denominator
        if self.m == 1:
            return den == 1
        while den != 1:
            g = gcd(den, self.m)
            if g == 1:
                return False
            while den % g == 0:
                den //= g
        return True

    def parse(self, text: str):
        val = Fraction(text.strip())
        if not self.contains(val):
            raise CatalogError(f"{val} is not in {self.name}")
        return val

    def roots(self, x, j: int) -> tuple:
        candidate = x / j
        return (candidate,) if self.contains(candidate) else ()

    def enumerate_elements(self) -> Iterator:
        seen = set()
        shell = 0
        while True:
            batch = []
            for e in range(0, shell + 1):
                den = self.m**e
                for num in range(-shell, shell + 1):
                    val = Fraction(num, den)
                    if val not in seen:
                        batch.append(val)
            batch.sort(key=lambda v: (abs(v), v < 0, v.denominator))
            for val in batch:
                seen.add(val)
                yield val
            shell += 1

    def random_element(self, rng, size: int):
        num = rng.randint(-size, size)
        e = rng.randint(0, max(1, size // 4))
        return Fraction(num, self.m**e) if self.m > 1 else Fraction(num)


_FREE_NAMES = "abcdefgh"


class FreeGroupHandle(GroupHandle):
    """Free group of finite rank; elements are reduced Words."""

    def __init__(self, rank: int, ball_cap: int = 200_000):
        if not 1 <= rank <= len(_FREE_NAMES):
            raise CatalogError(f"rank must be between 1 and {len(_FREE_NAMES)}")
        self.rank = rank
        self.alphabet = Alphabet(_FREE_NAMES[:rank])
        self.ball_cap = ball_cap
        self.name = f"free({rank})"

    def identity(self):
        return Word.identity(self.alphabet)

    def mul(self, x, y):
        return fg_multiply(x, y)

    def inv(self, x):
        return x.inverse()

    def power(self, x, q: int):
        return fg_power(x, q)

    def contains(self, x) -> bool:
        return isinstance(x, Word) and x.alphabet == self.alphabet and x.is_reduced

    def parse(self, text: str):
        return free_reduce(parse_word(text, self.alphabet))

    def roots(self, x, j: int) -> tuple:
        """The unique j-th root when it exists: the cyclically reduced core
        must be a j-fold repetition as a letter sequence."""
        if j == 1:
            return (free_reduce(x),)
        core, conj = fg_cyclic_reduce(x)
        if core.is_identity:
            return (self.identity(),)
        letters: list[tuple[str, int]] = []
        for base, exp in core.syllables:
            sign = 1 if exp > 0 else -1
            letters.extend((base, sign) for _ in range(abs(exp)))
        total = len(letters)
        if total % j:
            return ()
        piece = total // j
        if letters[: total - piece] != letters[piece:]:
            return ()
        root_core = Word(self.alphabet, letters[:piece]).free_reduce()
        root = fg_multiply(fg_multiply(conj, root_core), conj.inverse())
        return (root,)

    def length(self, x) -> int:
        return reduced_length(x)

    def power_length(self, x, q: int) -> int:
        """Reduced length of x^q without computing the power:
        |x^q| = |q| * |core| + 2 * |conj| from the cyclic decomposition."""
        if q == 0:
            return 0
        core, conj = fg_cyclic_reduce(x)
        if core.is_identity:
            return 0
        return abs(q) * core.letter_length + 2 * conj.letter_length

    def _ball_size(self, n: int) -> int:
        r = self.rank
        if r == 1:
            return 2 * n + 1
        # 1 + 2r * ((2r-1)^n - 1) / (2r - 2)
        return 1 + 2 * r * ((2 * r - 1) ** n - 1) // (2 * r - 2)

    def ball_enumeration(self, n: int) -> Optional[tuple]:
        if self._ball_size(n) > self.ball_cap:
            return None
        gens = [(g, s) for g in self.alphabet for s in (1, -1)]
        out = [self.identity()]
        frontier = [self.identity()]
        for _ in range(n):
            new_frontier = []
            for w in frontier:
                last = w.syllables[-1] if w.syllables else None
                for g, s in gens:
                    if last and last.base == g and (last.exp > 0) != (s > 0):
                        continue
                    nxt = fg_multiply(w, Word(self.alphabet, [(g, s)]))
                    new_frontier.append(nxt)
            out.extend(new_frontier)
            frontier = new_frontier
        return tuple(out)

    def enumerate_elements(self) -> Iterator:
        n = 0
        while True:
            enum = self.ball_enumeration(n)
            if enum is None:
                raise EnumerationUnavailableError(
                    f"{self.name} ball radius {n} exceeds the enumeration cap"
                )
            for w in enum:
                if w.letter_length == n:
                    yield w
            n += 1

    def random_element(self, rng, size: int):
        length = rng.randint(0, size)
        letters: list[tuple[str, int]] = []
        last = None
        for _ in range(length):
            options = [
                (g, s)
                for g in self.alphabet
                for s in (1, -1)
                if not (last and last[0] == g and last[1] == -s)
            ]
            last = rng.choice(options)
            letters.append(last)
        return Word(self.alphabet, letters).free_reduce()


class BsGroupHandle(GroupHandle):
    """BS(m, n) hook; elements are normal-form BsWords. Root extraction is
    exhaustive only within the configured bound."""

    def __init__(self, m: int, n: int, root_bound: Optional[bsmod.RootBound] = None):
        self.pres = bsmod.BsPresentation(m, n)
        self.root_bound = root_bound or bsmod.RootBound(max_t=2, max_exp=8)
        self.name = f"bs({m},{n})"

    def identity(self):
        return bsmod.BsWord.identity(self.pres)

    def mul(self, x, y):
        return bsmod.bs_normal_form(bsmod.bs_multiply(x, y))

    def inv(self, x):
        return bsmod.bs_normal_form(bsmod.bs_invert(x))

    def power(self, x, q: int):
        return bsmod.bs_power(x, q)

    def contains(self, x) -> bool:
        return isinstance(x, bsmod.BsWord) and x.pres == self.pres

    def parse(self, text: str):
        return bsmod.bs_normal_form(bsmod.bs_parse(text, self.pres))

    def roots(self, x, j: int) -> tuple:
        found = bsmod.bs_find_roots(x, j, self.root_bound)
        return tuple(sorted(found, key=lambda w: (w.eps, w.k)))

    def length(self, x) -> int:
        return bsmod.bs_length(x)

    def enumerate_elements(self) -> Iterator:
        seen = set()
        shell = 0
        while True:
            bound = bsmod.RootBound(max_t=min(shell, 3), max_exp=shell)
            batch = [
                w
                for w in bsmod.enumerate_normal_forms(self.pres, bound)
                if (w.k, w.eps) not in seen
            ]
            batch.sort(key=lambda w: (w.t_count, w.eps, w.k))
            for w in batch:
                seen.add((w.k, w.eps))
                yield w
            shell += 1

    def random_element(self, rng, size: int):
        j = rng.randint(0, max(1, size // 3))
        eps = tuple(rng.choice((1, -1)) for _ in range(j))
        k = tuple(rng.randint(-size, size) for _ in range(j + 1))
        return bsmod.bs_normal_form(bsmod.BsWord(self.pres, k, eps))


def supp(g) -> tuple:
    """Support of a direct-sum element: the indices stored (all nonidentity)."""
    return tuple(idx for idx, _ in g)


class DirectSumGroup(GroupHandle):
    """Direct sum over an index set; elements are sorted tuples of
    (index, nonidentity factor element), i.e. finite support always.

    Factors come either as a mapping {index: handle} or as a factory
    callable index -> handle (for sums over infinite index sets)."""

    def __init__(self, factors, name: Optional[str] = None):
        if callable(factors):
            self._factory = factors
            self._known: dict = {}
        else:
            self._factory = None
            self._known = dict(factors)
        self.name = name or (
            "dsum(" + ",".join(str(h) for h in self._known.values()) + ")"
            if self._known
            else "dsum(<factory>)"
        )

    def factor(self, idx) -> GroupHandle:
        if idx in self._known:
            return self._known[idx]
        if self._factory is None:
            raise CatalogError(f"no factor at index {idx!r}")
        handle = self._factory(idx)
        self._known[idx] = handle
        return handle

    @property
    def factor_indices(self) -> tuple:
        if self._factory is not None:
            raise EnumerationUnavailableError("factory-based sum has no index list")
        return tuple(self._known)

    def identity(self):
        return ()

    def inject(self, idx, x):
        """The element with component x at idx and identity elsewhere."""
        handle = self.factor(idx)
        if not handle.contains(x):
            raise CatalogError(f"{x!r} is not in factor {idx!r}")
        if handle.is_identity(x):
            return ()
        return ((idx, x),)

    def mul(self, x, y):
        merged = dict(x)
        for idx, val in y:
            if idx in merged:
                handle = self.factor(idx)
                prod = handle.mul(merged[idx], val)
                if handle.is_identity(prod):
                    del merged[idx]
                else:
                    merged[idx] = prod
            else:
                merged[idx] = val
        return tuple(sorted(merged.items(), key=lambda item: repr(item[0])))

    def inv(self, x):
        return tuple((idx, self.factor(idx).inv(val)) for idx, val in x)

    def contains(self, x) -> bool:
        if not isinstance(x, tuple):
            return False
        for idx, val in x:
            handle = self.factor(idx)
            if not handle.contains(val) or handle.is_identity(val):
                return False
        return True

    def roots(self, x, j: int) -> tuple:
        parts = []
        for idx, val in x:
            opts = self.factor(idx).roots(val, j)
            if not opts:
                return ()
            parts.append([(idx, r) for r in opts])
        combos = itertools.product(*parts) if parts else ((),)
        return tuple(tuple(c) for c in combos)

    def parse(self, text: str):
        data = json.loads(text)
        if not isinstance(data, dict):
            raise CatalogError("direct-sum element must be a JSON object")
        items = []
        for key, val in data.items():
            idx = int(key) if key.lstrip("-").isdigit() else key
            handle = self.factor(idx)
            elem = handle.parse(val)
            if not handle.is_identity(elem):
                items.append((idx, elem))
        return tuple(sorted(items, key=lambda item: repr(item[0])))

    def format_element(self, x) -> str:
        return json.dumps(
            {str(idx): self.factor(idx).format_element(val) for idx, val in x}
        )

    def random_element(self, rng, size: int):
        out = self.identity()
        for idx in self.factor_indices:
            if rng.random() < 0.5:
                val = self.factor(idx).random_element(rng, size)
                out = self.mul(out, self.inject(idx, val) if val else ())
        return out


def dsum_multiply(group: DirectSumGroup, u, v):
    """Componentwise product with identity components pruned."""
    return group.mul(u, v)


class FreeProductGroup(GroupHandle):
    """Free product of finitely many factors; elements are alternating
    syllable tuples (factor_index, nonidentity element)."""

    def __init__(self, factors: Sequence[GroupHandle], name: Optional[str] = None):
        self.factors = tuple(factors)
        if not self.factors:
            raise CatalogError("free product needs at least one factor")
        self.name = name or "fprod(" + ",".join(str(h) for h in self.factors) + ")"

    def identity(self):
        return ()

    def normal_form(self, raw: Iterable[tuple[int, object]]):
        """Stack syllable reduction: merge adjacent same-factor syllables,
        drop identities, cascade until alternating."""
        out: list[tuple[int, object]] = []
        for fi, val in raw:
            handle = self.factors[fi]
            if handle.is_identity(val):
                continue
            if out and out[-1][0] == fi:
                merged = handle.mul(out[-1][1], val)
                if handle.is_identity(merged):
                    out.pop()
                else:
                    out[-1] = (fi, merged)
            else:
                out.append((fi, val))
        return tuple(out)

    def syllable(self, fi: int, val):
        return self.normal_form([(fi, val)])

    def mul(self, x, y):
        return self.normal_form(itertools.chain(x, y))

    def inv(self, x):
        return tuple((fi, self.factors[fi].inv(val)) for fi, val in reversed(x))

    def contains(self, x) -> bool:
        if not isinstance(x, tuple):
            return False
        prev = None
        for fi, val in x:
            if fi == prev:
                return False
            handle = self.factors[fi]
            if not handle.contains(val) or handle.is_identity(val):
                return False
            prev = fi
        return True

    def parse(self, text: str):
        data = json.loads(text)
        if not isinstance(data, list):
            raise CatalogError("free-product element must be a JSON array")
        raw = []
        for pair in data:
            fi = int(pair[0])
            raw.append((fi, self.factors[fi].parse(pair[1])))
        return self.normal_form(raw)

    def format_element(self, x) -> str:
        return json.dumps(
            [[fi, self.factors[fi].format_element(val)] for fi, val in x]
        )

    def random_element(self, rng, size: int):
        raw = []
        for _ in range(rng.randint(0, size)):
            fi = rng.randrange(len(self.factors))
            raw.append((fi, self.factors[fi].random_element(rng, max(1, size // 2))))
        return self.normal_form(raw)


def fprod_normal_form(group: FreeProductGroup, raw) -> tuple:
    return group.normal_form(raw)


def antecedents(g, k: int, group: GroupHandle, max_depth: int = 64) -> frozenset:
    """Ant_k(g) = every h with h^(k^n) = g for some n >= 0, g included.

    Breadth-first root extraction: level n holds the k-th roots of level
    n-1. Raises AntecedentOverflowError with the witness chain if the
    extraction is still producing new elements at max_depth.
    """
    if k < 2:
        raise CatalogError("antecedent exponent must be >= 2")
    found = {g: None}  # element -> parent, for witness chains
    frontier = [g]
    for _ in range(max_depth):
        if not frontier:
            return frozenset(found)
        next_frontier = []
        for x in frontier:
            for r in group.roots(x, k):
                if r not in found:
                    found[r] = x
                    next_frontier.append(r)
        frontier = next_frontier
    if frontier:
        chain = [frontier[0]]
        while found[chain[-1]] is not None:
            chain.append(found[chain[-1]])
        raise AntecedentOverflowError(chain)
    return frozenset(found)


class Ball:
    """The closed ball {g : length(g) <= n}; iterable when the group can
    enumerate it, a pure membership predicate otherwise."""

    def __init__(self, group: GroupHandle, n: int, length: Optional[Callable] = None):
        self.group = group
        self.n = n
        self._length = length or group.length
        self._enum = group.ball_enumeration(n)

    def __contains__(self, g) -> bool:
        return self._length(g) <= self.n

    @property
    def enumerable(self) -> bool:
        return self._enum is not None

    def __iter__(self):
        if self._enum is None:
            raise EnumerationUnavailableError(
                f"ball of radius {self.n} in {self.group.name} is not enumerable"
            )
        return iter(self._enum)

    def __repr__(self) -> str:
        return f"Ball({self.group.name}, {self.n})"


def ball(group: GroupHandle, n: int, length: Optional[Callable] = None) -> Ball:
    if n < 0:
        raise CatalogError("ball radius must be nonnegative")
    return Ball(group, n, length)


def _parse_args(body: str) -> list[str]:
    """Split a construction-tree argument list at top-level commas."""
    parts, depth, cur = [], 0, []
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    if cur:
        parts.append("".join(cur).strip())
    return [p for p in parts if p]


def parse_group_spec(spec: str) -> GroupHandle:
    """Construction-tree syntax for group instances.

    Examples: z(1), z(2), zinv(2), free(2), bs(2,3),
    dsum(zinv(2),zinv(3),free(2)), fprod(free(2),z(1)).
    """
    spec = spec.strip()
    if "(" not in spec or not spec.endswith(")"):
        raise CatalogError(f"malformed group spec: {spec!r}")
    head, body = spec.split("(", 1)
    head = head.strip().lower()
    body = body[:-1]
    if head == "z":
        return IntLattice(int(body))
    if head == "zinv":
        return ZInvGroup(int(body))
    if head == "free":
        return FreeGroupHandle(int(body))
    if head == "bs":
        args = _parse_args(body)
        if len(args) != 2:
            raise CatalogError("bs takes two parameters: bs(m,n)")
        return BsGroupHandle(int(args[0]), int(args[1]))
    if head == "dsum":
        factors = {i: parse_group_spec(arg) for i, arg in enumerate(_parse_args(body))}
        return DirectSumGroup(factors)
    if head == "fprod":
        return FreeProductGroup([parse_group_spec(arg) for arg in _parse_args(body)])
    raise CatalogError(f"unknown group constructor: {head!r}")
