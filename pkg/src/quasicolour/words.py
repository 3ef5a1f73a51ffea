"""Words over a finite generating set.

A word is a tuple of non-zero ints: ``i + 1`` stands for generator ``i`` and
``-(i + 1)`` for its inverse.  The text form is ``"xz^3y^-1"``: single-letter
generator names, each optionally followed by ``^`` and a signed exponent.
"""

from __future__ import annotations

import re

Word = tuple

_TOKEN = re.compile(r"\s*([A-Za-z])(?:\^(-?\d+))?\s*")


def parse_word(text: str, names) -> Word:
    index = {name: i for i, name in enumerate(names)}
    out = []
    pos = 0
    text = text.strip()
    if text in ("", "1", "e"):
        return ()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse word {text!r} at offset {pos}")
        name, exp = m.group(1), m.group(2)
        if name not in index:
            raise ValueError(f"unknown generator {name!r} in word {text!r}")
        e = 1 if exp is None else int(exp)
        letter = index[name] + 1
        out.extend([letter if e > 0 else -letter] * abs(e))
        pos = m.end()
    return reduce_word(out)


def format_word(word: Word, names) -> str:
    if not word:
        return "1"
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        n = j - i
        letter = word[i]
        exp = n if letter > 0 else -n
        name = names[abs(letter) - 1]
        parts.append(name if exp == 1 else f"{name}^{exp}")
        i = j
    return "".join(parts)


def reduce_word(word) -> Word:
    """Free reduction (cancel adjacent ``g g^-1`` pairs)."""
    stack = []
    for letter in word:
        if stack and stack[-1] == -letter:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


def invert_word(word: Word) -> Word:
    return tuple(-a for a in reversed(word))


def multiply_words(a: Word, b: Word) -> Word:
    return reduce_word(tuple(a) + tuple(b))


def letter_column(letter: int) -> int:
    """Column index in a coset table: ``2i`` for generator i, ``2i+1`` for its inverse."""
    g = abs(letter) - 1
    return 2 * g if letter > 0 else 2 * g + 1
