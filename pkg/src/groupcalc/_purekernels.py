"""Pure-Python rewriting kernels.

These are the hot inner loops of the whole library: single-pass stack
reduction of syllable words, and the pinch rewriting that turns a raw
Baumslag-Solitar word into a reduced one. groupcalc._speedups holds a
compiled twin with identical semantics; groupcalc.kernels picks one at
import time.

All exponents are Python ints, so arithmetic is arbitrary precision.
"""

IMPLEMENTATION = "python"


def reduce_syllables(syllables):
    """Freely reduce a sequence of (base, exponent) syllables.

    Single left-to-right pass with a stack: merges equal-base neighbours,
    drops zero exponents, cascades cancellations. Returns a new list.
    """
    out = []
    for base, exp in syllables:
        if exp == 0:
            continue
        if out and out[-1][0] == base:
            merged = out[-1][1] + exp
            if merged == 0:
                out.pop()
            else:
                out[-1] = (base, merged)
        else:
            out.append((base, exp))
    return out


def concat_reduce(left, right):
    """Reduced concatenation of two already-reduced syllable sequences."""
    out = list(left)
    for base, exp in right:
        if exp == 0:
            continue
        if out and out[-1][0] == base:
            merged = out[-1][1] + exp
            if merged == 0:
                out.pop()
            else:
                out[-1] = (base, merged)
        else:
            out.append((base, exp))
    return out


def bs_reduce_parts(k, eps, m, n):
    """Reduce a BS(m, n) word given in alternating form.

    ``k`` lists the a-exponents (length j+1), ``eps`` the stable-letter
    signs (length j, entries +-1). Removes every pinch: a t^-1 a^c t with
    m | c becomes a^(c*n/m), a t a^c t^-1 with n | c becomes a^(c*m/n);
    free cancellation of t-letters is the c = 0 case of the same rule.
    One pass suffices because each incoming t-letter is checked against
    the exposed top of the stack.

    Returns (k', eps') with k' of length j'+1.
    """
    k0 = k[0]
    stack = []  # entries [eps_i, trailing a-exponent]
    for i, e in enumerate(eps):
        pinched = False
        if stack:
            top_e, top_k = stack[-1]
            if top_e == -e:
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
            landing = val + k[i + 1]
            if stack:
                stack[-1][1] += landing
            else:
                k0 += landing
        else:
            stack.append([e, k[i + 1]])
    new_k = [k0]
    new_eps = []
    for e, a_exp in stack:
        new_eps.append(e)
        new_k.append(a_exp)
    return new_k, new_eps
