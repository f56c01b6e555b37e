"""Relation building and program compilation for the coloring counter.

Kept as plain Python: the build also compiles this file with Cython into
``_compiler_c``, which is imported in its place when present. Presentations
are passed as ``(is_group, nvars, relations)`` and programs come back as
plain tuples so both builds exchange only builtin types.
"""
from array import array

from .gauss import BAR

BRANCH, GSOLVE, GCHECK, QSOLVE, QCHECK = range(5)
STAR, STAR_BAR = 0, 1


def gap_offsets(components):
    offsets = []
    total = 0
    for comp in components:
        offsets.append(total)
        total += len(comp) or 1
    offsets.append(total)
    return offsets


def crossing_rows(components, offsets):
    """``(sign, i, i', j, j')`` per crossing in order of first appearance.

    ``i -> i'`` are the semi-arcs around the over pass, ``j -> j'`` around
    the under pass.
    """
    over = {}
    under = {}
    order = []
    for ci, comp in enumerate(components):
        n = len(comp)
        base = offsets[ci]
        for pos, sym in enumerate(comp):
            if sym is BAR:
                continue
            c = sym.crossing
            if c not in over and c not in under:
                order.append(c)
            entry = (sym.sign, base + (pos - 1) % n, base + pos)
            if sym.over:
                over[c] = entry
            else:
                under[c] = entry
    return [(over[c][0], over[c][1], over[c][2], under[c][1], under[c][2]) for c in order]


def bar_rows(components, offsets):
    out = []
    for ci, comp in enumerate(components):
        n = len(comp)
        base = offsets[ci]
        for pos, sym in enumerate(comp):
            if sym is BAR:
                out.append((base + (pos - 1) % n, base + pos))
    return out


def group_relations(components, upper, lower, bars, shift):
    """Wirtinger-style relations; lower generators sit ``shift`` above upper ones."""
    offsets = gap_offsets(components)
    rels = []
    for sign, i, i2, j, j2 in crossing_rows(components, offsets):
        if upper:
            rels.append((((i2, 1),), ((i, 1),)))
            if sign > 0:
                rels.append((((j2, 1),), ((i, -1), (j, 1), (i, 1))))
            else:
                rels.append((((j2, 1),), ((i, 1), (j, 1), (i, -1))))
        if lower:
            yi, yi2, yj, yj2 = i + shift, i2 + shift, j + shift, j2 + shift
            if sign > 0:
                rels.append((((yi2, 1),), ((yj, -1), (yi, 1), (yj, 1))))
            else:
                rels.append((((yi2, 1),), ((yj, 1), (yi, 1), (yj, -1))))
            rels.append((((yj2, 1),), ((yj, 1),)))
    if bars:
        for i, i2 in bar_rows(components, offsets):
            rels.append((((i2, 1),), ((i + shift, 1),)))
            rels.append((((i2 + shift, 1),), ((i, 1),)))
    return tuple(rels)


def quandle_relations(components, upper, lower, bars, shift):
    offsets = gap_offsets(components)
    rels = []
    for sign, i, i2, j, j2 in crossing_rows(components, offsets):
        op = STAR if sign > 0 else STAR_BAR
        if upper:
            rels.append(((i2, ()), (i, ())))
            rels.append(((j2, ()), (j, ((op, i),))))
        if lower:
            yi, yi2, yj, yj2 = i + shift, i2 + shift, j + shift, j2 + shift
            rels.append(((yi2, ()), (yi, ((op, yj),))))
            rels.append(((yj2, ()), (yj, ())))
    if bars:
        for i, i2 in bar_rows(components, offsets):
            rels.append(((i2, ()), (i + shift, ())))
            rels.append(((i2 + shift, ()), (i, ())))
    return tuple(rels)


def _free_reduce(word):
    out = []
    for g, e in word:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return out


def merge_identities(group, nvars, relations):
    """Union generators related by ``a = b``; return representatives and the other relations."""
    rep = list(range(nvars))
    rest = []
    for rel in relations:
        lhs, rhs = rel
        if group:
            if len(lhs) != 1 or len(rhs) != 1 or lhs[0][1] != rhs[0][1]:
                rest.append(rel)
                continue
            a, b = lhs[0][0], rhs[0][0]
        else:
            if lhs[1] or rhs[1]:
                rest.append(rel)
                continue
            a, b = lhs[0], rhs[0]
        while rep[a] != a:
            a = rep[a]
        while rep[b] != b:
            b = rep[b]
        if a < b:
            rep[b] = a
        elif b < a:
            rep[a] = b
    for g in range(len(rep)):
        r = g
        while rep[r] != r:
            r = rep[r]
        rep[g] = r
    return rep, rest


def _group_constraints(rels, rep):
    cons = []
    for lhs, rhs in rels:
        lhs = [(rep[g], e) for g, e in lhs]
        rhs = [(rep[g], e) for g, e in rhs]
        w = _free_reduce(lhs + [(g, -e) for g, e in reversed(rhs)])
        # cyclic reduction keeps the relator equivalent
        while len(w) >= 2 and w[0][0] == w[-1][0] and w[0][1] == -w[-1][1]:
            w = w[1:-1]
        if w:
            cons.append(w)
    return cons


def _quandle_constraints(rels, rep):
    out = []
    for l, r in rels:
        l = (rep[l[0]], tuple((op, rep[g]) for op, g in l[1]))
        r = (rep[r[0]], tuple((op, rep[g]) for op, g in r[1]))
        if l != r:
            out.append((l, r))
    return out


def compile_program(is_group, nvars, relations):
    """Straight-line program for a presentation, as ``(prog, words, terms, nvars, branches)``."""
    rep, rels = merge_identities(is_group, nvars, relations)
    cons = _group_constraints(rels, rep) if is_group else _quandle_constraints(rels, rep)

    prog = []
    words = []
    terms = []

    occ = []
    flat = []
    for c in cons:
        counts = {}
        if is_group:
            f = []
            for g, e in c:
                counts[g] = counts.get(g, 0) + 1
                f.append(g)
                f.append(e)
            flat.append(f)
        else:
            (lh, lops), (rh, rops) = c
            for g in (lh, *(g for _, g in lops), rh, *(g for _, g in rops)):
                counts[g] = counts.get(g, 0) + 1
        occ.append(counts)

    by_var = [[] for _ in range(nvars)]
    for ci, counts in enumerate(occ):
        for v in counts:
            by_var[v].append(ci)
    unknown = [len(counts) for counts in occ]
    # merged generators follow their representative and are never assigned
    known = [rep[v] != v for v in range(nvars)]
    used = [False] * len(cons)

    def put_term(t):
        off = len(terms)
        head, ops = t
        terms.append(head)
        terms.append(len(ops))
        for op, g in ops:
            terms.append(op)
            terms.append(g)
        return off

    def settle(v):
        known[v] = True
        queue = [v]
        while queue:
            u = queue.pop()
            for ci in by_var[u]:
                if used[ci]:
                    continue
                left = unknown[ci] - 1
                unknown[ci] = left
                if left == 0:
                    used[ci] = True
                    if is_group:
                        off = len(words)
                        words.extend(flat[ci])
                        prog.extend((GCHECK, off, len(cons[ci])))
                    else:
                        l, r = cons[ci]
                        prog.extend((QCHECK, put_term(l), put_term(r)))
                elif left == 1:
                    counts = occ[ci]
                    # none left: the last unknown was just solved and its decrement is queued
                    w = -1
                    for g in counts:
                        if not known[g]:
                            w = g
                            break
                    if w < 0 or counts[w] != 1:
                        continue
                    if is_group:
                        f = flat[ci]
                        k = _position(f, w)
                        off = len(words)
                        words.extend(f[:k])
                        words.extend(f[k + 2:])
                        prog.extend((GSOLVE, w, f[k + 1], off, k // 2,
                                     off + k, (len(f) - k - 2) // 2))
                    else:
                        l, r = cons[ci]
                        if l[0] == w:
                            mine, other = l, r
                        elif r[0] == w:
                            mine, other = r, l
                        else:
                            continue
                        ops_off = len(terms)
                        for op, g in mine[1]:
                            terms.append(op)
                            terms.append(g)
                        prog.extend((QSOLVE, w, ops_off, len(mine[1]), put_term(other)))
                    used[ci] = True
                    known[w] = True
                    queue.append(w)

    branches = 0
    while not all(known):
        # prefer a generator that unblocks relations waiting only on it
        score = [0] * nvars
        near = [0] * nvars
        for ci, counts in enumerate(occ):
            if used[ci]:
                continue
            u = unknown[ci]
            if u == 1:
                for g in counts:
                    if not known[g]:
                        score[g] += 1
            elif u == 2:
                for g in counts:
                    if not known[g]:
                        near[g] += 1
        best, best_key = -1, None
        for v in range(nvars):
            if not known[v]:
                key = (score[v], near[v], -v)
                if best_key is None or key > best_key:
                    best, best_key = v, key
        prog.extend((BRANCH, best))
        branches += 1
        settle(best)

    # the compiled kernel cannot take zero-length buffers
    return (array("i", prog), array("i", words or [0]),
            array("i", terms or [0]), nvars, branches)


def _position(flat, g):
    for k in range(0, len(flat), 2):
        if flat[k] == g:
            return k
    raise ValueError(g)
