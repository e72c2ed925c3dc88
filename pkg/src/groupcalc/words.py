"""Alphabets, finite words with formal inverses, and free-group arithmetic.

Words are stored in merged-syllable form: a maximal run of one generator is
a single (base, exponent) pair with a nonzero arbitrary-precision exponent.
The empty word is the identity. All values are immutable; operations are
pure functions, so words can be shared freely across threads.

Text syntax: whitespace-separated syllables, each ``base`` or ``base^exp``
with a signed decimal exponent; indexed generators are written ``a_7``.
Serialization is minimal (``a``, not ``a^1``); the identity prints as ``1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, NamedTuple, Optional

from groupcalc import kernels

__all__ = [
    "Alphabet",
    "Letter",
    "Word",
    "LengthFunction",
    "WordError",
    "AlphabetMismatchError",
    "WordParseError",
    "free_reduce",
    "fg_multiply",
    "fg_invert",
    "fg_power",
    "fg_equal",
    "fg_cyclic_reduce",
    "parse_word",
    "reduced_length",
    "free_length_function",
]


class WordError(ValueError):
    """Malformed letter, word, or alphabet."""


class AlphabetMismatchError(WordError):
    """Operands declared over different alphabets."""


class WordParseError(WordError):
    """Unparseable word text."""


_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9]*(?:_[0-9]+)?\Z")
_SYLLABLE_RE = re.compile(
    r"(?P<base>[A-Za-z][A-Za-z0-9]*(?:_[0-9]+)?)(?:\^(?P<exp>-?[0-9]+))?\Z"
)


class Letter(NamedTuple):
    """One merged syllable: a generator name and a nonzero exponent."""

    base: str
    exp: int


class Alphabet:
    """Ordered finite set of generator names.

    Names are plain identifiers ("a", "t") or indexed ones ("a_7").
    """

    __slots__ = ("names", "_pos")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        seen = set()
        for name in names:
            if not _NAME_RE.match(name):
                raise WordError(f"invalid generator name: {name!r}")
            if name in seen:
                raise WordError(f"duplicate generator name: {name!r}")
            seen.add(name)
        self.names = names
        self._pos = {g: i for i, g in enumerate(names)}

    @classmethod
    def indexed(cls, prefix: str, count: int) -> "Alphabet":
        """The alphabet {prefix_1, ..., prefix_count}."""
        return cls(tuple(f"{prefix}_{i}" for i in range(1, count + 1)))

    def __contains__(self, name: object) -> bool:
        return name in self._pos

    def position(self, name: str) -> int:
        return self._pos[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Alphabet) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"Alphabet({list(self.names)!r})"


class Word:
    """Immutable word over an alphabet.

    Zero-exponent syllables are dropped at construction; adjacent merging
    and cancellation happen in free_reduce. Equality is structural (same
    alphabet, same syllable sequence); for group-element equality compare
    reduced forms or use fg_equal.
    """

    __slots__ = ("alphabet", "syllables", "_known_reduced")

    def __init__(self, alphabet: Alphabet, syllables: Iterable[tuple[str, int]]):
        kept = []
        for base, exp in syllables:
            if not isinstance(exp, int):
                raise WordError(f"exponent must be an int, got {exp!r}")
            if exp == 0:
                continue
            if base not in alphabet:
                raise WordError(f"generator {base!r} not in alphabet {alphabet!r}")
            kept.append(Letter(base, exp))
        self.alphabet = alphabet
        self.syllables = tuple(kept)
        self._known_reduced = False

    @classmethod
    def identity(cls, alphabet: Alphabet) -> "Word":
        return cls(alphabet, ())

    @classmethod
    def _reduced(cls, alphabet: Alphabet, syllables) -> "Word":
        w = cls.__new__(cls)
        w.alphabet = alphabet
        w.syllables = tuple(Letter(b, e) for b, e in syllables)
        w._known_reduced = True
        return w

    @property
    def is_identity(self) -> bool:
        return not self.syllables

    @property
    def is_reduced(self) -> bool:
        if self._known_reduced:
            return True
        syl = self.syllables
        ok = all(syl[i].base != syl[i + 1].base for i in range(len(syl) - 1))
        if ok:
            self._known_reduced = True
        return ok

    @property
    def letter_length(self) -> int:
        """Total letter count: the sum of |exponent| over syllables."""
        return sum(abs(e) for _, e in self.syllables)

    def free_reduce(self) -> "Word":
        if self.is_reduced:
            return self
        return Word._reduced(self.alphabet, kernels.reduce_syllables(self.syllables))

    def inverse(self) -> "Word":
        inv = [(b, -e) for b, e in reversed(self.syllables)]
        w = Word(self.alphabet, inv)
        w._known_reduced = self._known_reduced
        return w

    def __mul__(self, other: "Word") -> "Word":
        return fg_multiply(self, other)

    def __pow__(self, q: int) -> "Word":
        return fg_power(self, q)

    def __invert__(self) -> "Word":
        return self.inverse()

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Word)
            and self.alphabet == other.alphabet
            and self.syllables == other.syllables
        )

    def __hash__(self) -> int:
        return hash((self.alphabet, self.syllables))

    def __str__(self) -> str:
        if not self.syllables:
            return "1"
        return " ".join(b if e == 1 else f"{b}^{e}" for b, e in self.syllables)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


def _require_same_alphabet(u: Word, v: Word) -> None:
    if u.alphabet != v.alphabet:
        raise AlphabetMismatchError(
            f"alphabet mismatch: {u.alphabet!r} vs {v.alphabet!r}"
        )


def free_reduce(w: Word) -> Word:
    """The unique reduced word equal to w in the free group."""
    return w.free_reduce()


def fg_multiply(u: Word, v: Word) -> Word:
    """Reduced product u*v in the free group on the shared alphabet."""
    _require_same_alphabet(u, v)
    a = u.free_reduce()
    b = v.free_reduce()
    return Word._reduced(u.alphabet, kernels.concat_reduce(a.syllables, b.syllables))


def fg_invert(w: Word) -> Word:
    return w.inverse()


def fg_power(w: Word, q: int) -> Word:
    """Reduced q-th power; q may be negative or zero."""
    if q == 0:
        return Word.identity(w.alphabet)
    base = w.free_reduce() if q > 0 else w.inverse().free_reduce()
    result = Word.identity(base.alphabet)
    acc = base
    q = abs(q)
    while q:
        if q & 1:
            result = fg_multiply(result, acc)
        q >>= 1
        if q:
            acc = fg_multiply(acc, acc)
    return result


def fg_equal(u: Word, v: Word) -> bool:
    _require_same_alphabet(u, v)
    return u.free_reduce().syllables == v.free_reduce().syllables


def fg_cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """Split w = conjugator * core * conjugator^-1 with core cyclically reduced.

    The core's first and last syllables are not inverse to each other, so no
    cyclic permutation of the core admits a free cancellation at the seam.
    """
    syl = [list(l) for l in free_reduce(w).syllables]
    conj: list[tuple[str, int]] = []
    while len(syl) >= 2:
        b0, e0 = syl[0]
        b1, e1 = syl[-1]
        if b0 != b1 or (e0 > 0) == (e1 > 0):
            break
        step = min(abs(e0), abs(e1))
        s = step if e0 > 0 else -step
        conj.append((b0, s))
        syl[0][1] -= s
        syl[-1][1] += s
        if syl[-1][1] == 0:
            syl.pop()
        if syl and syl[0][1] == 0:
            syl.pop(0)
    core = Word._reduced(w.alphabet, [(b, e) for b, e in syl])
    conjugator = Word(w.alphabet, conj).free_reduce()
    return core, conjugator


def parse_word(text: str, alphabet: Alphabet) -> Word:
    """Parse word text (see the module docstring for the syntax).

    ``1`` (or the empty string) denotes the identity. Zero exponents are
    normalized away; adjacent equal bases are kept as written, so the
    result of parsing "a a" only merges under free_reduce.
    """
    tokens = text.split()
    syllables: list[tuple[str, int]] = []
    for tok in tokens:
        if tok == "1":
            continue
        match = _SYLLABLE_RE.match(tok)
        if not match:
            raise WordParseError(f"malformed syllable: {tok!r}")
        base = match.group("base")
        if base not in alphabet:
            raise WordParseError(f"unknown generator {base!r} in {text!r}")
        exp = int(match.group("exp")) if match.group("exp") is not None else 1
        syllables.append((base, exp))
    return Word(alphabet, syllables)


def reduced_length(w: Word) -> int:
    """Letter length of the reduced form: a Dudley norm on the free group."""
    return free_reduce(w).letter_length


@dataclass(frozen=True)
class LengthFunction:
    """A length function on a group, tagged with the axiom family it claims.

    kind is one of "dudley", "uniformly-monotone", "plain"; k is the
    monotonicity constant when kind is "uniformly-monotone".
    """

    evaluator: Callable[[object], int]
    kind: str = "plain"
    k: Optional[int] = None

    def __call__(self, g: object) -> int:
        return self.evaluator(g)


def free_length_function() -> LengthFunction:
    """Reduced word length on a free group, as a Dudley norm."""
    return LengthFunction(reduced_length, kind="dudley")
