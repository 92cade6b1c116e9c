"""Free-group words over a finite alphabet of single-letter generators.

Letters are stored as signed integers: generator ``i`` (0-based) is ``i + 1``
and its inverse is ``-(i + 1)``.  Every :class:`Word` is freely reduced on
construction, so equality of words is equality in the free group.

>>> ab = Alphabet.from_names("ab")
>>> w = parse_word("a^4ba^-1b=1", ab)
>>> len(w), str(w)
(7, 'a^4ba^-1b')
>>> str(invert(w))
'b^-1ab^-1a^-4'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence


class WordError(ValueError):
    """Base class for word construction and parsing errors."""


class WordSyntaxError(WordError):
    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position} in {text!r}")


class UnknownGeneratorError(WordSyntaxError):
    pass


class ZeroExponentError(WordSyntaxError):
    pass


class AlphabetMismatchError(WordError):
    pass


@dataclass(frozen=True)
class Alphabet:
    names: tuple[str, ...]

    def __post_init__(self):
        if not self.names:
            raise ValueError("alphabet needs at least one generator")
        for name in self.names:
            if len(name) != 1 or not ("a" <= name <= "z"):
                raise ValueError(f"generator names must be single lowercase letters, got {name!r}")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate generator names in {self.names}")

    @classmethod
    def from_names(cls, names: Iterable[str]) -> Alphabet:
        return cls(tuple(names))

    @property
    def size(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def __contains__(self, name) -> bool:
        return name in self.names

    def __len__(self) -> int:
        return len(self.names)

    def __str__(self) -> str:
        return ",".join(self.names)


def letter(generator: int, sign: int = 1) -> int:
    """Encode ``generator ** sign`` as a signed letter."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return sign * (generator + 1)


def letter_generator(x: int) -> int:
    return abs(x) - 1


def letter_sign(x: int) -> int:
    return 1 if x > 0 else -1


def free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    stack: list[int] = []
    for x in letters:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    """A freely reduced word.  Build with :func:`parse_word` or :meth:`from_letters`."""

    letters: tuple[int, ...]
    alphabet: Alphabet

    def __post_init__(self):
        n = self.alphabet.size
        for x in self.letters:
            if x == 0 or abs(x) > n:
                raise WordError(f"letter {x} outside alphabet {self.alphabet}")
        for x, y in zip(self.letters, self.letters[1:]):
            if x == -y:
                raise WordError("word is not freely reduced; use Word.from_letters")

    @classmethod
    def from_letters(cls, letters: Iterable[int], alphabet: Alphabet) -> Word:
        return cls(free_reduce(letters), alphabet)

    @classmethod
    def empty(cls, alphabet: Alphabet) -> Word:
        return cls((), alphabet)

    @classmethod
    def generator(cls, alphabet: Alphabet, name: str, sign: int = 1) -> Word:
        return cls((letter(alphabet.index(name), sign),), alphabet)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, item):
        return self.letters[item]

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: Word) -> Word:
        return concat(self, other)

    def __invert__(self) -> Word:
        return invert(self)

    def __pow__(self, n: int) -> Word:
        base = self if n >= 0 else invert(self)
        return Word.from_letters(base.letters * abs(n), self.alphabet)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"

    def is_cyclically_reduced(self) -> bool:
        return len(self.letters) < 2 or self.letters[0] != -self.letters[-1]


@dataclass(frozen=True)
class CyclicWord:
    """A word up to rotation and inversion, held by its canonical representative."""

    representative: Word

    def __len__(self) -> int:
        return len(self.representative)

    def __str__(self) -> str:
        return str(self.representative)


def letter_key(x: int) -> tuple[int, int]:
    # generator index first, then +1 before -1
    return (abs(x) - 1, 0 if x > 0 else 1)


def _word_key(letters: Sequence[int]) -> tuple[tuple[int, int], ...]:
    return tuple(letter_key(x) for x in letters)


# -- parsing ---------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, alphabet: Alphabet):
        self.text = text
        self.alphabet = alphabet
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def word(self) -> list[int]:
        out: list[int] = []
        while True:
            c = self.peek()
            if c == "" or c == ")":
                return out
            out.extend(self.factor())

    def factor(self) -> list[int]:
        start = self.pos
        c = self.peek()
        if c == "(":
            self.pos += 1
            inner = self.word()
            if self.peek() != ")":
                raise WordSyntaxError("expected ')'", self.text, self.pos)
            self.pos += 1
            atom = inner
        elif "a" <= c <= "z":
            if c not in self.alphabet:
                raise UnknownGeneratorError(f"unknown generator {c!r}", self.text, self.pos)
            atom = [self.alphabet.index(c) + 1]
            self.pos += 1
        else:
            raise WordSyntaxError(f"unexpected character {c!r}", self.text, self.pos if c else start)
        if self.peek() == "^":
            self.pos += 1
            n = self.exponent()
            if n < 0:
                atom = [-x for x in reversed(atom)]
            return atom * abs(n)
        return atom

    def exponent(self) -> int:
        # no whitespace inside an exponent
        start = self.pos
        sign = 1
        if self.pos < len(self.text) and self.text[self.pos] == "-":
            sign = -1
            self.pos += 1
        digits_start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        digits = self.text[digits_start:self.pos]
        if not digits:
            raise WordSyntaxError("expected digits after '^'", self.text, digits_start)
        n = int(digits)
        if n == 0:
            raise ZeroExponentError("zero exponent", self.text, start)
        return sign * n


_EQUALS_ONE = re.compile(r"\s*=\s*1\s*$")


def parse_word(text: str, alphabet: Alphabet) -> Word:
    """Parse caption syntax such as ``"a^4ba^-1b=1"`` or ``"a(b^-1a^-1)^6b^-1"``.

    A lone ``"1"`` denotes the empty word, matching :func:`format_word`.
    """
    body = _EQUALS_ONE.sub("", text)
    if body.strip() == "1":
        return Word.empty(alphabet)
    p = _Parser(body, alphabet)
    letters = p.word()
    if p.peek() != "":
        raise WordSyntaxError(f"unexpected character {p.peek()!r}", body, p.pos)
    return Word.from_letters(letters, alphabet)


def format_word(w: Word) -> str:
    if not w.letters:
        return "1"
    parts = []
    i = 0
    letters = w.letters
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        n = (j - i) * letter_sign(letters[i])
        name = w.alphabet.names[letter_generator(letters[i])]
        parts.append(name if n == 1 else f"{name}^{n}")
        i = j
    return "".join(parts)


# -- arithmetic ------------------------------------------------------------


def invert(w: Word) -> Word:
    return Word(tuple(-x for x in reversed(w.letters)), w.alphabet)


def concat(u: Word, v: Word) -> Word:
    if u.alphabet != v.alphabet:
        raise AlphabetMismatchError(f"cannot multiply words over {u.alphabet} and {v.alphabet}")
    return Word.from_letters(u.letters + v.letters, u.alphabet)


def product(words: Iterable[Word], alphabet: Alphabet) -> Word:
    letters: list[int] = []
    for w in words:
        if w.alphabet != alphabet:
            raise AlphabetMismatchError(f"word over {w.alphabet}, expected {alphabet}")
        letters.extend(w.letters)
    return Word.from_letters(letters, alphabet)


def cyclically_reduce(w: Word) -> Word:
    letters = w.letters
    i, j = 0, len(letters)
    while j - i >= 2 and letters[i] == -letters[j - 1]:
        i += 1
        j -= 1
    return Word(letters[i:j], w.alphabet)


def rotate(w: Word, k: int) -> Word:
    """Cyclic rotation moving the first ``k`` letters to the end (reduced afterwards)."""
    if not w.letters:
        return w
    k %= len(w.letters)
    return Word.from_letters(w.letters[k:] + w.letters[:k], w.alphabet)


def rotations(w: Word) -> list[Word]:
    n = len(w.letters)
    return [Word(w.letters[k:] + w.letters[:k], w.alphabet) for k in range(n)] if n else [w]


def cyclic_normal_form(w: Word) -> CyclicWord:
    """Least rotation of the cyclic reduction of ``w`` or of its inverse."""
    r = cyclically_reduce(w)
    n = len(r.letters)
    if n == 0:
        return CyclicWord(r)
    candidates = []
    for seq in (r.letters, tuple(-x for x in reversed(r.letters))):
        for k in range(n):
            candidates.append(seq[k:] + seq[:k])
    best = min(candidates, key=_word_key)
    return CyclicWord(Word(best, w.alphabet))


def exponent_sum(w: Word, g: int) -> int:
    if not 0 <= g < w.alphabet.size:
        raise IndexError(f"generator index {g} outside alphabet {w.alphabet}")
    return sum(letter_sign(x) for x in w.letters if abs(x) == g + 1)


def occurrences(w: Word, g: int) -> int:
    return sum(1 for x in w.letters if abs(x) == g + 1)


def substitute(w: Word, g: int, r: Word) -> Word:
    """Replace each ``g^{+-1}`` in ``w`` by ``r^{+-1}``; other generators map by name into r's alphabet."""
    target = r.alphabet
    inv = invert(r).letters
    letters: list[int] = []
    for x in w.letters:
        gi = letter_generator(x)
        if gi == g:
            letters.extend(r.letters if x > 0 else inv)
        else:
            name = w.alphabet.names[gi]
            if name not in target:
                raise AlphabetMismatchError(f"generator {name!r} missing from {target}")
            letters.append(letter(target.index(name), letter_sign(x)))
    return Word.from_letters(letters, target)


def translate(w: Word, alphabet: Alphabet, renaming: dict[str, str] | None = None) -> Word:
    """Re-express ``w`` over another alphabet by generator name (optionally renamed)."""
    renaming = renaming or {}
    letters = []
    for x in w.letters:
        name = w.alphabet.names[letter_generator(x)]
        name = renaming.get(name, name)
        if name not in alphabet:
            raise AlphabetMismatchError(f"generator {name!r} missing from {alphabet}")
        letters.append(letter(alphabet.index(name), letter_sign(x)))
    return Word.from_letters(letters, alphabet)
