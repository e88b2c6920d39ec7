"""Pure-Python hot loops. Used when the compiled ``_ckernels`` module is absent.

Every function here has a line-for-line twin in ``_ckernels.pyx``; keep the
two in sync. Coefficient vectors are plain lists of Python ints, lowest
degree first.
"""


def mul_reduce(a, b, order):
    """Product of two ring vectors reduced by delta**order = 1 - delta."""
    prod = [0] * (2 * order - 1)
    for i in range(order):
        ai = a[i]
        if not ai:
            continue
        for j in range(order):
            prod[i + j] += ai * b[j]
    return _reduce(prod, order)


def sqr_reduce(a, order):
    """Square of a ring vector, using the symmetric half of the convolution."""
    prod = [0] * (2 * order - 1)
    for i in range(order):
        ai = a[i]
        if not ai:
            continue
        prod[2 * i] += ai * ai
        twice = ai << 1
        for j in range(i + 1, order):
            prod[i + j] += twice * a[j]
    return _reduce(prod, order)


def _reduce(prod, order):
    # delta**k = delta**(k-N) - delta**(k-N+1); k-N+1 <= N-1, so one pass
    for k in range(2 * order - 2, order - 1, -1):
        c = prod[k]
        if c:
            prod[k - order] += c
            prod[k - order + 1] -= c
    del prod[order:]
    return prod


def mul_delta(a, order):
    """Multiply by delta: shift up one degree, fold the overflow term."""
    top = a[order - 1]
    out = [0] + a[: order - 1]
    out[0] += top
    out[1] -= top
    return out


def advance_two_term(window, order, steps):
    """Advance the last ``order`` terms of a_k = a_{k-1} + a_{k-order} by ``steps``.

    ``window`` is oldest first; a new list is returned.
    """
    w = list(window)
    head = 0
    last = w[order - 1]
    for _ in range(steps):
        last = last + w[head]
        w[head] = last
        head += 1
        if head == order:
            head = 0
    return w[head:] + w[:head]


def advance_linear(weights, window, steps):
    """Advance a_k = sum_u weights[u-1] * a_{k-u} by ``steps``; window oldest first."""
    order = len(weights)
    w = list(window)
    for _ in range(steps):
        s = 0
        for u in range(order):
            wu = weights[u]
            if wu:
                s += wu * w[order - 1 - u]
        del w[0]
        w.append(s)
    return w


def series_coeffs(num, den, count):
    """First ``count`` Taylor coefficients of num/den, den[0] == 1."""
    out = []
    dlen = len(den)
    nlen = len(num)
    for k in range(count):
        c = num[k] if k < nlen else 0
        for j in range(1, min(k, dlen - 1) + 1):
            dj = den[j]
            if dj:
                c -= dj * out[k - j]
        out.append(c)
    return out
