"""Baumslag-Solitar groups BS(m, n) = <a, t | t^-1 a^m t = a^n>.

Words are kept in alternating syllable form a^k0 t^e1 a^k1 ... t^ej a^kj.
A word is *reduced* when it is freely reduced and contains no pinch
t^-1 a^c t with m | c nor t a^c t^-1 with n | c; by Britton's lemma a
nonempty reduced word is a nonidentity element, which makes the word
problem decidable. A reduced word is in *normal form* when every a-exponent
that follows a t-letter is a Euclidean remainder: 0 <= k_i < |n| after t,
0 <= k_i < |m| after t^-1. Normal forms are unique per element, so equality
is normal-form identity.

Remainders use |m| and |n| so that uniqueness survives negative parameters
(the inequalities only make sense for positive moduli). All exponents are
arbitrary-precision: the normalization carry multiplies them by n/m
repeatedly and must not overflow.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from groupcalc import kernels
from groupcalc.words import Alphabet, Word, WordError

__all__ = [
    "BsPresentation",
    "BsWord",
    "RootBound",
    "FracTrace",
    "BsError",
    "PresentationMismatchError",
    "bs_alphabet",
    "bs_parse",
    "bs_reduce",
    "bs_normal_form",
    "bs_equal",
    "bs_is_identity",
    "bs_length",
    "bs_cyclic_form",
    "bs_cyclic_length",
    "bs_multiply",
    "bs_invert",
    "bs_power",
    "bs_find_roots",
    "enumerate_normal_forms",
    "frac_T_check",
]


class BsError(ValueError):
    """Malformed Baumslag-Solitar word or presentation."""


class PresentationMismatchError(BsError):
    """Operands belong to different presentations."""


@dataclass(frozen=True)
class BsPresentation:
    """Parameters of BS(m, n); both must be nonzero."""

    m: int
    n: int

    def __post_init__(self):
        if self.m == 0 or self.n == 0:
            raise BsError("BS(m, n) requires nonzero m and n")

    def __str__(self) -> str:
        return f"BS({self.m},{self.n})"


_BS_ALPHABET = Alphabet(["a", "t"])


def bs_alphabet() -> Alphabet:
    return _BS_ALPHABET


@dataclass(frozen=True)
class BsWord:
    """A word over {a, t} in alternating form, tagged with its status.

    k has length j+1 and eps length j with entries +-1. status is "raw",
    "reduced" or "normal" and never participates in equality: two BsWords
    are equal iff presentation and syllables agree.
    """

    pres: BsPresentation
    k: tuple[int, ...]
    eps: tuple[int, ...]
    status: str = field(default="raw", compare=False)

    def __post_init__(self):
        if len(self.k) != len(self.eps) + 1:
            raise BsError("alternating form needs len(k) == len(eps) + 1")
        if any(e not in (1, -1) for e in self.eps):
            raise BsError("stable-letter exponents must be +1 or -1")
        if any(not isinstance(c, int) for c in self.k):
            raise BsError("a-exponents must be ints")

    @classmethod
    def identity(cls, pres: BsPresentation) -> "BsWord":
        return cls(pres, (0,), (), status="normal")

    @classmethod
    def from_word(cls, pres: BsPresentation, word: Word) -> "BsWord":
        """Convert a Word over {a, t}; t-runs split into unit letters."""
        if word.alphabet != _BS_ALPHABET:
            raise BsError("BS words live over the alphabet {a, t}")
        k = [0]
        eps: list[int] = []
        for base, exp in word.syllables:
            if base == "a":
                k[-1] += exp
            else:
                sign = 1 if exp > 0 else -1
                for _ in range(abs(exp)):
                    eps.append(sign)
                    k.append(0)
        return cls(pres, tuple(k), tuple(eps))

    def to_word(self) -> Word:
        """The same element as a freely reduced Word over {a, t}."""
        items: list[tuple[str, int]] = [("a", self.k[0])]
        for e, c in zip(self.eps, self.k[1:]):
            items.append(("t", e))
            items.append(("a", c))
        return Word(_BS_ALPHABET, items).free_reduce()

    @property
    def t_count(self) -> int:
        return len(self.eps)

    @property
    def is_a_power(self) -> bool:
        return not self.eps

    def __str__(self) -> str:
        return str(self.to_word())

    def __repr__(self) -> str:
        return f"BsWord({self.pres}, {str(self)!r}, {self.status})"


def bs_parse(text: str, pres: BsPresentation) -> BsWord:
    from groupcalc.words import parse_word

    return BsWord.from_word(pres, parse_word(text, _BS_ALPHABET))


def _require_same_presentation(u: BsWord, v: BsWord) -> None:
    if u.pres != v.pres:
        raise PresentationMismatchError(f"{u.pres} vs {v.pres}")


def bs_reduce(w: BsWord) -> BsWord:
    """The pinch-free (reduced) form of w; equal to w in BS(m, n)."""
    if w.status in ("reduced", "normal"):
        return w
    k, eps = kernels.bs_reduce_parts(w.k, w.eps, w.pres.m, w.pres.n)
    return BsWord(w.pres, tuple(k), tuple(eps), status="reduced")


def bs_normal_form(w: BsWord) -> BsWord:
    """The unique normal form of w.

    Reduces first, then walks the t-letters right to left replacing
    t^-1 a^(qm+r) by a^(qn) t^-1 a^r (and t a^(qn+r) by a^(qm) t a^r),
    carrying a^(qn) (resp. a^(qm)) into the exponent to the left. The
    carry cannot create a new pinch: it shifts each exponent by a multiple
    of the modulus that guards its own pinch condition. A final reduction
    pass guards that invariant anyway.
    """
    if w.status == "normal":
        return w
    red = bs_reduce(w)
    m, n = red.pres.m, red.pres.n
    k = list(red.k)
    eps = red.eps
    for i in range(len(eps), 0, -1):
        e = eps[i - 1]
        divisor, carry_mul = (m, n) if e == -1 else (n, m)
        r = k[i] % abs(divisor)
        q = (k[i] - r) // divisor
        if q:
            k[i] = r
            k[i - 1] += q * carry_mul
    k2, eps2 = kernels.bs_reduce_parts(k, list(eps), m, n)
    return BsWord(red.pres, tuple(k2), tuple(eps2), status="normal")


def bs_is_identity(w: BsWord) -> bool:
    nf = bs_normal_form(w)
    return nf.k == (0,) and not nf.eps


def bs_equal(u: BsWord, v: BsWord) -> bool:
    """Word problem: u =_G v iff their normal forms coincide."""
    _require_same_presentation(u, v)
    a, b = bs_normal_form(u), bs_normal_form(v)
    return a.k == b.k and a.eps == b.eps


def bs_length(w: BsWord) -> int:
    """Number of t-letters of the reduced form (representative-independent)."""
    return bs_reduce(w).t_count


def bs_multiply(u: BsWord, v: BsWord) -> BsWord:
    _require_same_presentation(u, v)
    k = u.k[:-1] + (u.k[-1] + v.k[0],) + v.k[1:]
    eps = u.eps + v.eps
    return bs_reduce(BsWord(u.pres, k, eps))


def bs_invert(w: BsWord) -> BsWord:
    k = tuple(-c for c in reversed(w.k))
    eps = tuple(-e for e in reversed(w.eps))
    inv = BsWord(w.pres, k, eps)
    # reducedness is mirror-symmetric, so the status survives inversion
    if w.status in ("reduced", "normal"):
        inv = BsWord(w.pres, k, eps, status="reduced")
    return inv


def bs_power(w: BsWord, q: int) -> BsWord:
    """Normal form of w^q (q may be zero or negative)."""
    if q == 0:
        return BsWord.identity(w.pres)
    base = bs_normal_form(w) if q > 0 else bs_normal_form(bs_invert(w))
    result = BsWord.identity(w.pres)
    acc = base
    q = abs(q)
    while q:
        if q & 1:
            result = bs_multiply(result, acc)
        q >>= 1
        if q:
            acc = bs_multiply(acc, acc)
    return bs_normal_form(result)


def _wrap_pinch(pres: BsPresentation, e_last: int, k_last: int, e_first: int) -> bool:
    """Would t^e_last a^k_last t^e_first pinch if the word were read cyclically?"""
    if e_last != -e_first:
        return False
    divisor = pres.m if e_first == 1 else pres.n
    return k_last % divisor == 0


def bs_cyclic_form(w: BsWord) -> BsWord:
    """A cyclically reduced word conjugate to w, in normal form.

    Reading the normal form cyclically, the a-runs at the two ends merge
    into one seam run of exponent k_j + k_0, so the only possible cyclic
    pinch is t^ej a^(kj+k0) t^e1. While that seam pinches, conjugate by
    a^k0 t^e1 (rotate the leading block to the end) and re-reduce, which
    removes at least two t-letters; hence termination. Internal pinches
    cannot appear because the word stays reduced throughout.
    """
    cur = bs_normal_form(w)
    while True:
        if not cur.eps:
            return cur
        k, eps = cur.k, cur.eps
        seam = k[-1] + k[0]
        if not _wrap_pinch(cur.pres, eps[-1], seam, eps[0]):
            return cur
        k_rot = list(k[1:-1]) + [seam, 0]
        eps_rot = list(eps[1:]) + [eps[0]]
        k2, eps2 = kernels.bs_reduce_parts(k_rot, eps_rot, cur.pres.m, cur.pres.n)
        cur = bs_normal_form(BsWord(cur.pres, tuple(k2), tuple(eps2)))


def bs_cyclic_length(w: BsWord) -> int:
    """Minimal t-letter count over cyclically reduced conjugates of w."""
    return bs_cyclic_form(w).t_count


@dataclass(frozen=True)
class RootBound:
    """Search bound for root enumeration: at most max_t t-letters and
    every a-exponent bounded by max_exp in absolute value."""

    max_t: int
    max_exp: int

    def __post_init__(self):
        if self.max_t < 0 or self.max_exp < 0:
            raise BsError("bounds must be nonnegative")


def enumerate_normal_forms(
    pres: BsPresentation, bound: RootBound
) -> Iterator[BsWord]:
    """All normal forms within the bound, in a deterministic order.

    For i >= 1 the exponent k_i ranges over Euclidean remainders (capped by
    max_exp), with k_i != 0 wherever eps_i != eps_{i+1} since a zero there
    would be a pinch.
    """
    m, n = pres.m, pres.n
    k0_range = range(-bound.max_exp, bound.max_exp + 1)
    for j in range(bound.max_t + 1):
        if j == 0:
            for k0 in k0_range:
                yield BsWord(pres, (k0,), (), status="normal")
            continue
        for eps in itertools.product((1, -1), repeat=j):
            ranges = []
            for i in range(1, j + 1):
                modulus = abs(n) if eps[i - 1] == 1 else abs(m)
                hi = min(modulus - 1, bound.max_exp)
                lo = 0
                if i < j and eps[i] == -eps[i - 1]:
                    lo = 1
                if hi < lo:
                    ranges = None
                    break
                ranges.append(range(lo, hi + 1))
            if ranges is None:
                continue
            for k0 in k0_range:
                for rest in itertools.product(*ranges):
                    yield BsWord(pres, (k0, *rest), eps, status="normal")


_root_map_cache: dict[tuple, dict] = {}


def _root_map(pres: BsPresentation, p: int, bound: RootBound) -> dict:
    """Map normal-form key of h^p -> list of candidates h within bound."""
    cache_key = (pres, p, bound)
    table = _root_map_cache.get(cache_key)
    if table is None:
        table = {}
        for h in enumerate_normal_forms(pres, bound):
            hp = bs_power(h, p)
            table.setdefault((hp.k, hp.eps), []).append(h)
        _root_map_cache[cache_key] = table
    return table


def bs_find_roots(g: BsWord, p: int, bound: RootBound) -> set[BsWord]:
    """All h within the bound (in normal form) with h^p =_G g.

    Exhaustive over the bounded candidate family; says nothing about roots
    outside it. p = 1 returns {g} regardless of the bound.
    """
    if p < 1:
        raise BsError("root degree must be a positive integer")
    nf = bs_normal_form(g)
    if p == 1:
        return {nf}
    table = _root_map(g.pres, p, bound)
    return set(table.get((nf.k, nf.eps), ()))


@dataclass(frozen=True)
class FracTrace:
    """The exact rational trace of a t-sign sequence: T = prod Frac(eps_i)
    with Frac(+1) = n/m and Frac(-1) = m/n."""

    epsilons: tuple[int, ...]
    T: Fraction

    def geometric_sum(self, q: int) -> Fraction:
        """T^(q-1) + ... + T + 1, exactly."""
        total = Fraction(0)
        power = Fraction(1)
        for _ in range(q):
            total += power
            power *= self.T
        return total


def frac_T_check(
    epsilons: Iterable[int], pres: BsPresentation, q: int
) -> tuple[Fraction, bool]:
    """Evaluate T for the sign sequence and test T^(q-1)+...+T+1 != 0.

    For odd q the sum is never zero over the rationals (the polynomial
    x^(q-1)+...+1 has no rational roots when q-1 is even), which is the
    arithmetic heart of odd-root uniqueness for cyclic length >= 1.
    """
    eps = tuple(epsilons)
    if any(e not in (1, -1) for e in eps):
        raise BsError("sign sequence entries must be +1 or -1")
    if q < 1 or q % 2 == 0:
        raise BsError("q must be an odd positive integer")
    T = Fraction(1)
    for e in eps:
        T *= Fraction(pres.n, pres.m) if e == 1 else Fraction(pres.m, pres.n)
    trace = FracTrace(eps, T)
    return T, trace.geometric_sum(q) != 0
