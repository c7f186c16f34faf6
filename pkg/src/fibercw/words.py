"""Free-group words over named generators.

A word is stored as a tuple of nonzero integers: ``+(i + 1)`` is the i-th
generator of its alphabet and ``-(i + 1)`` its inverse.  Every constructor
freely reduces, so there is no unreduced ``Word`` value.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
TOKEN_RE = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?[0-9]+))?\Z")


class WordError(ValueError):
    """Malformed word input or an operation mixing incompatible words."""


class ParseError(WordError):
    """A text-format parse failure; carries the 1-based line and offending token."""

    def __init__(self, message: str, line: int | None = None, token: str | None = None):
        self.line = line
        self.token = token
        where = []
        if line is not None:
            where.append(f"line {line}")
        if token is not None:
            where.append(f"token {token!r}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


class UnknownGeneratorError(WordError):
    def __init__(self, token: str):
        self.token = token
        super().__init__(f"unknown generator {token!r}")


@dataclass(frozen=True)
class Alphabet:
    """An ordered generator universe; names are unique identifiers."""

    names: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        for name in names:
            if not isinstance(name, str) or not NAME_RE.match(name):
                raise WordError(f"invalid generator name {name!r}")
        if len(set(names)) != len(names):
            dup = next(n for n in names if names.count(n) > 1)
            raise WordError(f"duplicate generator name {dup!r}")
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name):
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownGeneratorError(name) from None

    def letter(self, name: str, sign: int = 1) -> int:
        return (self.index(name) + 1) * (1 if sign > 0 else -1)

    def generator(self, name: str) -> "Word":
        return Word(self, (self.letter(name),))

    def identity(self) -> "Word":
        return Word(self, ())

    def gens(self) -> list["Word"]:
        return [self.generator(n) for n in self.names]

    def word(self, text: str) -> "Word":
        return parse_word(text, self)

    def without(self, name: str) -> "Alphabet":
        return Alphabet(tuple(n for n in self.names if n != name))


def free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce_letters(letters: Sequence[int]) -> tuple[int, ...]:
    letters = free_reduce(letters)
    i, j = 0, len(letters) - 1
    while i < j and letters[i] == -letters[j]:
        i += 1
        j -= 1
    return tuple(letters[i:j + 1])


@dataclass(frozen=True)
class Word:
    alphabet: Alphabet
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        letters = tuple(self.letters)
        n = len(self.alphabet)
        for x in letters:
            if not isinstance(x, int) or x == 0 or abs(x) > n:
                raise WordError(f"letter {x!r} outside alphabet of size {n}")
        object.__setattr__(self, "letters", free_reduce(letters))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        return f"Word({format_word(self)!r})"

    def _check(self, other: "Word"):
        if not isinstance(other, Word):
            return NotImplemented
        if other.alphabet != self.alphabet:
            raise WordError(
                f"generator universe mismatch: {self.alphabet.names} vs {other.alphabet.names}"
            )
        return None

    def __mul__(self, other: "Word") -> "Word":
        if self._check(other) is NotImplemented:
            return NotImplemented
        return Word(self.alphabet, self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(self.alphabet, tuple(-x for x in reversed(self.letters)))

    __invert__ = inverse

    def __pow__(self, k: int) -> "Word":
        if k < 0:
            return self.inverse() ** -k
        return Word(self.alphabet, self.letters * k)

    def is_identity(self) -> bool:
        return not self.letters

    def cyclically_reduced(self) -> "Word":
        return Word(self.alphabet, cyclic_reduce_letters(self.letters))

    def signed_letters(self) -> list[tuple[str, int]]:
        names = self.alphabet.names
        return [(names[abs(x) - 1], 1 if x > 0 else -1) for x in self.letters]

    def exponent_sum(self, name: str) -> int:
        i = self.alphabet.index(name) + 1
        return sum(1 if x == i else -1 if x == -i else 0 for x in self.letters)

    def exponent_vector(self) -> list[int]:
        vec = [0] * len(self.alphabet)
        for x in self.letters:
            vec[abs(x) - 1] += 1 if x > 0 else -1
        return vec

    def occurrences(self, name: str) -> int:
        i = self.alphabet.index(name) + 1
        return sum(1 for x in self.letters if abs(x) == i)

    def support(self) -> set[str]:
        names = self.alphabet.names
        return {names[abs(x) - 1] for x in self.letters}

    def syllables(self) -> list[tuple[str, int]]:
        """Maximal runs ``(name, exponent)``, e.g. ``a a b^-1`` -> ``[(a, 2), (b, -1)]``."""
        out: list[tuple[str, int]] = []
        prev = None
        for x in self.letters:
            e = 1 if x > 0 else -1
            if prev is not None and prev == x:
                name, k = out[-1]
                out[-1] = (name, k + e)
            else:
                out.append((self.alphabet.names[abs(x) - 1], e))
            prev = x
        return out


def reduce(alphabet: Alphabet, raw: Iterable[tuple[str, int]]) -> Word:
    """Freely reduce a sequence of ``(generator name, ±1)`` pairs."""
    letters = []
    for name, sign in raw:
        if sign not in (1, -1):
            raise WordError(f"exponent sign must be +1 or -1, got {sign!r}")
        letters.append(alphabet.letter(name, sign))
    return Word(alphabet, tuple(letters))


def multiply(u: Word, v: Word) -> Word:
    return u * v


def invert(w: Word) -> Word:
    return w.inverse()


def substitute(w: Word, images: Mapping[str, Word], target: Alphabet | None = None) -> Word:
    """Apply the endomorphism ``g -> images[g]`` to ``w``.

    ``target`` is the alphabet of the images; it is inferred from them when
    omitted, falling back to ``w``'s own alphabet if ``images`` is empty.
    """
    if target is None:
        target = next(iter(images.values())).alphabet if images else w.alphabet
    names = w.alphabet.names
    cache: dict[int, tuple[int, ...]] = {}
    out: list[int] = []
    for x in w.letters:
        i = abs(x)
        if i not in cache:
            name = names[i - 1]
            try:
                img = images[name]
            except KeyError:
                raise WordError(f"missing image for generator {name!r}") from None
            if img.alphabet != target:
                raise WordError(f"image of {name!r} lies in a different generator universe")
            cache[i] = img.letters
        img = cache[i]
        out.extend(img if x > 0 else (-y for y in reversed(img)))
    return Word(target, tuple(out))


def _parse_token(token: str, alphabet: Alphabet, line: int | None) -> list[int]:
    m = TOKEN_RE.match(token)
    if not m:
        raise ParseError("malformed word token", line, token)
    name, exp = m.group(1), m.group(2)
    k = 1 if exp is None else int(exp)
    if k == 0:
        raise ParseError("zero exponent", line, token)
    if name not in alphabet:
        raise ParseError(f"unknown generator {name!r}", line, token)
    x = alphabet.letter(name)
    return [x if k > 0 else -x] * abs(k)


def parse_word(text: str, alphabet: Alphabet, line: int | None = None) -> Word:
    """Parse ``name``, ``name^-1``, ``name^k`` tokens; ``1`` is the empty word."""
    tokens = text.split()
    if tokens == ["1"]:
        return Word(alphabet, ())
    if not tokens:
        raise ParseError("empty word (write 1 for the identity)", line, text)
    letters: list[int] = []
    for tok in tokens:
        letters.extend(_parse_token(tok, alphabet, line))
    return Word(alphabet, tuple(letters))


def format_word(w: Word) -> str:
    if not w.letters:
        return "1"
    parts = []
    for name, k in w.syllables():
        parts.append(name if k == 1 else f"{name}^{k}")
    return " ".join(parts)
