# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled coloring counter. Same instruction set as ``_kernel_py``."""

from libc.stdlib cimport malloc, free

cdef enum:
    BRANCH = 0
    GSOLVE = 1
    GCHECK = 2
    QSOLVE = 3
    QCHECK = 4


cdef inline int _word(const int[:] words, int off, int length, int* vals,
                      const int[:] mul, const int[:] inv, int ident, int m) nogil:
    cdef int acc = ident
    cdef int k, g
    for k in range(off, off + 2 * length, 2):
        g = vals[words[k]]
        if words[k + 1] < 0:
            g = inv[g]
        acc = mul[acc * m + g]
    return acc


cdef inline int _term(const int[:] terms, int off, int* vals,
                      const int[:] qtab, int m) nogil:
    cdef int v = vals[terms[off]]
    cdef int nops = terms[off + 1]
    cdef int k = off + 2
    cdef int j
    cdef int mm = m * m
    for j in range(nops):
        v = qtab[terms[k] * mm + v * m + vals[terms[k + 1]]]
        k += 2
    return v


def count(const int[:] prog, const int[:] words, const int[:] terms,
          int nvars, int m, const int[:] mul, const int[:] inv, int ident,
          const int[:] qtab, long long budget):
    cdef int nprog = prog.shape[0]
    cdef int* vals = <int*> malloc((nvars + 1) * sizeof(int))
    cdef int* stack_pc = <int*> malloc((nvars + 1) * sizeof(int))
    cdef int* stack_val = <int*> malloc((nvars + 1) * sizeof(int))
    cdef int depth = 0
    cdef int pc = 0
    cdef int op, a, b, ba, v, k, ops_off, mm = m * m
    cdef bint ok
    cdef long long total = 0
    cdef long long nodes = 0
    if vals == NULL or stack_pc == NULL or stack_val == NULL:
        free(vals); free(stack_pc); free(stack_val)
        raise MemoryError()
    try:
        with nogil:
            while True:
                ok = True
                while pc < nprog:
                    op = prog[pc]
                    if op == BRANCH:
                        nodes += 1
                        if nodes > budget:
                            total = -1
                            break
                        vals[prog[pc + 1]] = 0
                        stack_pc[depth] = pc
                        stack_val[depth] = 0
                        depth += 1
                        pc += 2
                    elif op == GSOLVE:
                        a = _word(words, prog[pc + 3], prog[pc + 4], vals, mul, inv, ident, m)
                        b = _word(words, prog[pc + 5], prog[pc + 6], vals, mul, inv, ident, m)
                        ba = mul[b * m + a]
                        if prog[pc + 2] > 0:
                            vals[prog[pc + 1]] = inv[ba]
                        else:
                            vals[prog[pc + 1]] = ba
                        pc += 7
                    elif op == GCHECK:
                        if _word(words, prog[pc + 1], prog[pc + 2], vals, mul, inv, ident, m) != ident:
                            ok = False
                            break
                        pc += 3
                    elif op == QSOLVE:
                        v = _term(terms, prog[pc + 4], vals, qtab, m)
                        ops_off = prog[pc + 2]
                        k = ops_off + 2 * (prog[pc + 3] - 1)
                        while k >= ops_off:
                            v = qtab[(1 - terms[k]) * mm + v * m + vals[terms[k + 1]]]
                            k -= 2
                        vals[prog[pc + 1]] = v
                        pc += 5
                    else:
                        if _term(terms, prog[pc + 1], vals, qtab, m) != _term(terms, prog[pc + 2], vals, qtab, m):
                            ok = False
                            break
                        pc += 3
                if total < 0:
                    break
                if ok:
                    total += 1
                while depth > 0:
                    if stack_val[depth - 1] + 1 < m:
                        stack_val[depth - 1] += 1
                        nodes += 1
                        if nodes > budget:
                            total = -1
                            break
                        vals[prog[stack_pc[depth - 1] + 1]] = stack_val[depth - 1]
                        pc = stack_pc[depth - 1] + 2
                        break
                    depth -= 1
                if total < 0 or depth == 0:
                    break
        return total
    finally:
        free(vals)
        free(stack_pc)
        free(stack_val)
