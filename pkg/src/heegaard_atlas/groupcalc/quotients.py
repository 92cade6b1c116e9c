"""Exhaustive search for homomorphisms onto small permutation groups.

Permutations are tuples of images on ``0..n-1``; a word is evaluated left to
right with points acted on from the right, so ``(p * q)[i] == q[p[i]]``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from ..presentation import Presentation
from ..words import Word, letter_generator

Perm = tuple[int, ...]
MAX_TARGET_ORDER = 10_000


class TargetTooLarge(ValueError):
    pass


def perm_mul(p: Perm, q: Perm) -> Perm:
    return tuple(q[i] for i in p)


def perm_inv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def perm_from_cycles(cycles: str, degree: int) -> Perm:
    """``"(1,2,3)(4,5)"`` on points 1..degree, as a 0-based image tuple."""
    img = list(range(degree))
    for chunk in cycles.replace(" ", "").split(")"):
        chunk = chunk.lstrip("(")
        if not chunk:
            continue
        pts = [int(x) - 1 for x in chunk.split(",")]
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a] = b
    if sorted(img) != list(range(degree)):
        raise ValueError(f"{cycles!r} is not a permutation of degree {degree}")
    return tuple(img)


def closure(gens: Sequence[Perm], degree: int, limit: int | None = None) -> list[Perm]:
    """All elements of the group generated by ``gens`` in breadth-first order from the identity."""
    ident = tuple(range(degree))
    seen = {ident}
    order = [ident]
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = perm_mul(g, s)
            if h not in seen:
                seen.add(h)
                order.append(h)
                if limit is not None and len(order) > limit:
                    raise TargetTooLarge(f"group has more than {limit} elements")
                queue.append(h)
    return order


def evaluate(word: Word, images: Sequence[Perm], inverses: Sequence[Perm], degree: int) -> Perm:
    result = tuple(range(degree))
    for x in word.letters:
        g = letter_generator(x)
        result = perm_mul(result, images[g] if x > 0 else inverses[g])
    return result


@dataclass(frozen=True)
class QuotientWitness:
    target: tuple[Perm, ...]
    images: Mapping[str, Perm]
    surjective: bool


def verify_quotient_witness(p: Presentation, w: QuotientWitness) -> bool:
    degree = len(w.target[0]) if w.target else len(next(iter(w.images.values()), ()))
    ident = tuple(range(degree))
    images = [w.images[n] for n in p.alphabet.names]
    inverses = [perm_inv(g) for g in images]
    if any(evaluate(r, images, inverses, degree) != ident for r in p.relators):
        return False
    if w.surjective:
        return len(closure(images, degree)) == len(closure(list(w.target), degree))
    return set(closure(images, degree)) <= set(closure(list(w.target), degree))


def quotient_search(
    p: Presentation,
    target: Iterable[Perm],
    require_surjective: bool = True,
    max_order: int = MAX_TARGET_ORDER,
) -> QuotientWitness | None:
    """First generator-image tuple (lexicographic in BFS element order) killing every relator."""
    target = tuple(tuple(g) for g in target)
    degree = len(target[0]) if target else 1
    elements = closure(target, degree, limit=max_order)
    order = len(elements)
    inverse_of = {g: perm_inv(g) for g in elements}
    ident = elements[0]
    k = p.alphabet.size
    # relators checked as soon as all their generators have images
    needed = [max((letter_generator(x) for x in r.letters), default=-1) for r in p.relators]
    checks = [[r for r, top in zip(p.relators, needed) if top == depth] for depth in range(k)]

    images: list[Perm] = [ident] * k
    inverses: list[Perm] = [ident] * k

    def extend(depth: int) -> QuotientWitness | None:
        if depth == k:
            if require_surjective and len(closure(images, degree)) != order:
                return None
            return QuotientWitness(target, dict(zip(p.alphabet.names, images)), len(closure(images, degree)) == order)
        for g in elements:
            images[depth] = g
            inverses[depth] = inverse_of[g]
            if all(evaluate(r, images, inverses, degree) == ident for r in checks[depth]):
                found = extend(depth + 1)
                if found is not None:
                    return found
        return None

    return extend(0)


# A few small targets used by the atlas.
def klein_four() -> tuple[Perm, ...]:
    return (perm_from_cycles("(1,2)(3,4)", 4), perm_from_cycles("(1,3)(2,4)", 4))


def psl_2_7() -> tuple[Perm, ...]:
    """The simple group of order 168 acting on the seven points of the Fano plane."""
    return (perm_from_cycles("(1,2,3,4,5,6,7)", 7), perm_from_cycles("(3,5)(6,7)", 7))
