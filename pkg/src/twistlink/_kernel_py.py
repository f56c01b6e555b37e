"""Pure-Python coloring counter; reference twin of ``_kernel.pyx``.

Both execute the straight-line program built by ``coloring.compile_program``
under a depth-first search over the BRANCH instructions. Instruction layout
(flat ints):

    BRANCH  0 var
    GSOLVE  1 var exp pre_off pre_len suf_off suf_len
    GCHECK  2 off len
    QSOLVE  3 var ops_off ops_len term_off
    QCHECK  4 t1_off t2_off

Group words live in ``words`` as (var, exp) pairs. Quandle terms live in
``terms`` as ``head nops (op var)*``; op 0 is ``*``, op 1 its dual.
"""

BRANCH, GSOLVE, GCHECK, QSOLVE, QCHECK = range(5)
WIDTH = {BRANCH: 2, GSOLVE: 7, GCHECK: 3, QSOLVE: 5, QCHECK: 3}


def _decode(prog):
    steps = []
    i = 0
    n = len(prog)
    while i < n:
        w = WIDTH[prog[i]]
        steps.append(tuple(prog[i:i + w]))
        i += w
    return steps


def count(prog, words, terms, nvars, m, mul, inv, ident, qtab, budget):
    """Number of complete assignments; -1 once ``budget`` branch nodes are spent."""
    steps = _decode(prog)
    nsteps = len(steps)
    vals = [0] * max(nvars, 1)
    mm = m * m

    def word_product(off, length):
        acc = ident
        for k in range(off, off + 2 * length, 2):
            g = vals[words[k]]
            if words[k + 1] < 0:
                g = inv[g]
            acc = mul[acc * m + g]
        return acc

    def term_value(off):
        v = vals[terms[off]]
        nops = terms[off + 1]
        k = off + 2
        for _ in range(nops):
            v = qtab[terms[k] * mm + v * m + vals[terms[k + 1]]]
            k += 2
        return v

    total = 0
    nodes = 0
    stack = []  # (step index, value currently tried)
    i = 0
    while True:
        ok = True
        while i < nsteps:
            st = steps[i]
            op = st[0]
            if op == BRANCH:
                nodes += 1
                if nodes > budget:
                    return -1
                vals[st[1]] = 0
                stack.append([i, 0])
            elif op == GSOLVE:
                a = word_product(st[3], st[4])
                b = word_product(st[5], st[6])
                ba = mul[b * m + a]
                vals[st[1]] = inv[ba] if st[2] > 0 else ba
            elif op == GCHECK:
                if word_product(st[1], st[2]) != ident:
                    ok = False
                    break
            elif op == QSOLVE:
                v = term_value(st[4])
                ops_off = st[2]
                for k in range(ops_off + 2 * (st[3] - 1), ops_off - 2, -2):
                    v = qtab[(1 - terms[k]) * mm + v * m + vals[terms[k + 1]]]
                vals[st[1]] = v
            else:
                if term_value(st[1]) != term_value(st[2]):
                    ok = False
                    break
            i += 1
        if ok:
            total += 1
        while stack:
            top = stack[-1]
            if top[1] + 1 < m:
                top[1] += 1
                nodes += 1
                if nodes > budget:
                    return -1
                vals[steps[top[0]][1]] = top[1]
                i = top[0] + 1
                break
            stack.pop()
        else:
            return total
