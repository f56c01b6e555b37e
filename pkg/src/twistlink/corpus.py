"""Exhaustive small corpora of twisted codes.

Codes are generated once per equivalence class under cyclic rotation of each
component, reordering of components and renaming of crossings. Generation
runs in two stages. First the undecorated skeletons (which positions hold
bars and which pairs of positions belong to one crossing) are enumerated up
to those symmetries, remembering each skeleton's automorphisms. Then every
assignment of over/under markers and signs is emitted unless an
automorphism maps it to a smaller assignment.
"""
from __future__ import annotations

import itertools
from typing import Iterator

from .gauss import BAR, CrossPass, TwistedCode

__all__ = ["skeletons", "generate_corpus", "corpus_size", "random_code"]

Skeleton = tuple  # tuple of components; each a tuple of chord labels (1..n) or 0 for a bar


def _labelled_words(n: int, b: int) -> Iterator[tuple[int, ...]]:
    """Words with n chords (each label twice, labels in first-appearance order) and b zeros."""
    length = 2 * n + b

    def rec(word, count, opened, bars):
        if len(word) == length:
            yield tuple(word)
            return
        if bars < b:
            word.append(0)
            yield from rec(word, count, opened, bars + 1)
            word.pop()
        if opened < n:
            word.append(opened + 1)
            count[opened + 1] = 1
            yield from rec(word, count, opened + 1, bars)
            word.pop()
            del count[opened + 1]
        for lab in range(1, opened + 1):
            if count[lab] == 1:
                count[lab] = 2
                word.append(lab)
                yield from rec(word, count, opened, bars)
                word.pop()
                count[lab] = 1

    yield from rec([], {}, 0, 0)


def _relabel(comps) -> tuple:
    mapping = {}
    out = []
    for comp in comps:
        row = []
        for x in comp:
            if x:
                if x not in mapping:
                    mapping[x] = len(mapping) + 1
                row.append(mapping[x])
            else:
                row.append(0)
        out.append(tuple(row))
    return tuple(out)


def _transforms(sk: Skeleton):
    """Yield (image skeleton, position map) for every reorder/rotation of ``sk``.

    Positions are ``(component, index)``; the map sends a position of ``sk``
    to its position in the image.
    """
    k = len(sk)
    for order in itertools.permutations(range(k)):
        rots = [range(max(len(sk[ci]), 1)) for ci in order]
        for shifts in itertools.product(*rots):
            comps = []
            pos = {}
            for new_ci, (ci, r) in enumerate(zip(order, shifts)):
                comp = sk[ci]
                m = len(comp)
                comps.append(comp[r:] + comp[:r])
                for p in range(m):
                    pos[(ci, p)] = (new_ci, (p - r) % m)
            yield comps, pos


def skeletons(n: int, b: int, k: int) -> list[tuple[Skeleton, list[dict]]]:
    """Canonical skeletons with ``n`` crossings, ``b`` bars and ``k`` components.

    Each comes with its automorphisms as position maps.
    """
    seen = set()
    out = []
    for word in _labelled_words(n, b):
        length = len(word)
        for cuts in itertools.combinations_with_replacement(range(length + 1), k - 1):
            bounds = (0, *cuts, length)
            sk = tuple(word[bounds[i]:bounds[i + 1]] for i in range(k))
            best = None
            for comps, _ in _transforms(sk):
                cand = _relabel(comps)
                if best is None or cand < best:
                    best = cand
            if best in seen:
                continue
            seen.add(best)
            autos = [pos for comps, pos in _transforms(best) if _relabel(comps) == best]
            out.append((best, autos))
    return out


def _decorations(sk: Skeleton, autos: list[dict]) -> Iterator[TwistedCode]:
    positions = [(ci, p) for ci, comp in enumerate(sk) for p, x in enumerate(comp) if x]
    index = {pos: i for i, pos in enumerate(positions)}
    label = {pos: sk[pos[0]][pos[1]] for pos in positions}
    chords = sorted(set(label.values()))
    first = {}
    for pos in positions:
        first.setdefault(label[pos], pos)
    perms = []
    for pos_map in autos:
        perm = [index[pos_map[pos]] for pos in positions]
        if perm != list(range(len(positions))):
            perms.append(perm)
    for overs in itertools.product((True, False), repeat=len(chords)):
        for signs in itertools.product((1, -1), repeat=len(chords)):
            over_of = dict(zip(chords, overs))
            sign_of = dict(zip(chords, signs))
            deco = [((pos == first[label[pos]]) == over_of[label[pos]], sign_of[label[pos]])
                    for pos in positions]
            key = tuple(deco)
            minimal = True
            for perm in perms:
                moved = [None] * len(deco)
                for i, j in enumerate(perm):
                    moved[j] = deco[i]
                if tuple(moved) < key:
                    minimal = False
                    break
            if not minimal:
                continue
            comps = []
            for ci, comp in enumerate(sk):
                row = []
                for p, x in enumerate(comp):
                    if x:
                        over, sign = deco[index[(ci, p)]]
                        row.append(CrossPass(x, over, sign))
                    else:
                        row.append(BAR)
                comps.append(tuple(row))
            yield TwistedCode(tuple(comps))


def generate_corpus(max_crossings: int = 4, max_bars: int = 2,
                    max_components: int = 2) -> Iterator[TwistedCode]:
    """Every code within the bounds, once per class, in a deterministic order."""
    for n in range(max_crossings + 1):
        for b in range(max_bars + 1):
            for k in range(1, max_components + 1):
                for sk, autos in skeletons(n, b, k):
                    yield from _decorations(sk, autos)


def corpus_size(max_crossings: int = 4, max_bars: int = 2, max_components: int = 2) -> int:
    return sum(1 for _ in generate_corpus(max_crossings, max_bars, max_components))


def random_code(rng, max_crossings: int = 6, max_bars: int = 4,
                max_components: int = 3) -> TwistedCode:
    """A uniformly shuffled valid code drawn with ``rng`` (a ``random.Random``)."""
    n = rng.randint(0, max_crossings)
    b = rng.randint(0, max_bars)
    k = rng.randint(1, max_components)
    ids = rng.sample(range(1, 3 * max_crossings + 2), n)
    syms = [BAR] * b
    for c in ids:
        sign = rng.choice((1, -1))
        syms += [CrossPass(c, True, sign), CrossPass(c, False, sign)]
    rng.shuffle(syms)
    cuts = sorted(rng.randint(0, len(syms)) for _ in range(k - 1))
    bounds = (0, *cuts, len(syms))
    return TwistedCode(tuple(tuple(syms[bounds[i]:bounds[i + 1]]) for i in range(k)))
