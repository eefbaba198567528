"""Reduced words in a free group.

A word is a tuple of nonzero integers; ``k`` is the generator ``x_k`` and
``-k`` its inverse.
"""

from __future__ import annotations

from typing import Iterable, Sequence

Word = tuple


def reduce(letters: Iterable[int]) -> Word:
    out: list[int] = []
    for a in letters:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def inverse(w: Sequence[int]) -> Word:
    return tuple(-a for a in reversed(w))


def mul(*words: Sequence[int]) -> Word:
    out: list[int] = []
    for w in words:
        for a in w:
            if out and out[-1] == -a:
                out.pop()
            else:
                out.append(a)
    return tuple(out)


def substitute(w: Sequence[int], images: Sequence[Sequence[int]],
               inverse_images: Sequence[Sequence[int]] | None = None) -> Word:
    """Apply the endomorphism ``x_k -> images[k-1]`` to ``w``."""
    if inverse_images is None:
        inverse_images = [inverse(im) for im in images]
    out: list[int] = []
    for a in w:
        piece = images[a - 1] if a > 0 else inverse_images[-a - 1]
        for b in piece:
            if out and out[-1] == -b:
                out.pop()
            else:
                out.append(b)
    return tuple(out)


def exponent_sums(w: Sequence[int], rank: int) -> list[int]:
    sums = [0] * rank
    for a in w:
        sums[abs(a) - 1] += 1 if a > 0 else -1
    return sums
