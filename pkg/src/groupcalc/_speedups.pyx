# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled rewriting kernels; semantics identical to _purekernels.

Exponents stay Python ints (BS normal forms need arbitrary precision),
so the win comes from removing interpreter overhead in the stack loops,
not from native arithmetic.
"""

IMPLEMENTATION = "c"


def reduce_syllables(syllables):
    """Freely reduce a sequence of (base, exponent) syllables."""
    cdef list out = []
    cdef Py_ssize_t top = -1
    for syl in syllables:
        base = syl[0]
        exp = syl[1]
        if exp == 0:
            continue
        if top >= 0 and out[top][0] == base:
            merged = out[top][1] + exp
            if merged == 0:
                out.pop()
                top -= 1
            else:
                out[top] = (base, merged)
        else:
            out.append((base, exp))
            top += 1
    return out


def concat_reduce(left, right):
    """Reduced concatenation of two already-reduced syllable sequences."""
    cdef list out = list(left)
    cdef Py_ssize_t top = len(out) - 1
    for syl in right:
        base = syl[0]
        exp = syl[1]
        if exp == 0:
            continue
        if top >= 0 and out[top][0] == base:
            merged = out[top][1] + exp
            if merged == 0:
                out.pop()
                top -= 1
            else:
                out[top] = (base, merged)
        else:
            out.append((base, exp))
            top += 1
    return out


def bs_reduce_parts(k, eps, m, n):
    """Reduce a BS(m, n) word in alternating form; see the pure twin."""
    cdef list stack = []
    cdef Py_ssize_t i, top = -1
    cdef int e, top_e
    cdef bint pinched
    k0 = k[0]
    for i in range(len(eps)):
        e = eps[i]
        pinched = False
        val = None
        if top >= 0:
            entry = stack[top]
            top_e = entry[0]
            if top_e == -e:
                top_k = entry[1]
                if e == 1:
                    if top_k % m == 0:
                        val = (top_k // m) * n
                        pinched = True
                else:
                    if top_k % n == 0:
                        val = (top_k // n) * m
                        pinched = True
        if pinched:
            stack.pop()
            top -= 1
            landing = val + k[i + 1]
            if top >= 0:
                stack[top][1] = stack[top][1] + landing
            else:
                k0 = k0 + landing
        else:
            stack.append([e, k[i + 1]])
            top += 1
    new_k = [k0]
    new_eps = []
    for entry in stack:
        new_eps.append(entry[0])
        new_k.append(entry[1])
    return new_k, new_eps
