# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twins of the loops in ``_pykernels``.

Entries stay Python ints (coefficients are unbounded); the win comes from
typed loop indices and list access without interpreter dispatch.
"""


cpdef list mul_reduce(list a, list b, Py_ssize_t order):
    cdef Py_ssize_t i, j
    cdef list prod = [0] * (2 * order - 1)
    cdef object ai
    for i in range(order):
        ai = a[i]
        if not ai:
            continue
        for j in range(order):
            prod[i + j] = prod[i + j] + ai * b[j]
    return _reduce(prod, order)


cpdef list sqr_reduce(list a, Py_ssize_t order):
    cdef Py_ssize_t i, j
    cdef list prod = [0] * (2 * order - 1)
    cdef object ai, twice
    for i in range(order):
        ai = a[i]
        if not ai:
            continue
        prod[2 * i] = prod[2 * i] + ai * ai
        twice = ai << 1
        for j in range(i + 1, order):
            prod[i + j] = prod[i + j] + twice * a[j]
    return _reduce(prod, order)


cdef list _reduce(list prod, Py_ssize_t order):
    cdef Py_ssize_t k
    cdef object c
    for k in range(2 * order - 2, order - 1, -1):
        c = prod[k]
        if c:
            prod[k - order] = prod[k - order] + c
            prod[k - order + 1] = prod[k - order + 1] - c
    del prod[order:]
    return prod


cpdef list mul_delta(list a, Py_ssize_t order):
    cdef object top = a[order - 1]
    cdef list out = [0] + a[: order - 1]
    out[0] = out[0] + top
    out[1] = out[1] - top
    return out


cpdef list advance_two_term(window, Py_ssize_t order, Py_ssize_t steps):
    cdef list w = list(window)
    cdef Py_ssize_t head = 0, s
    cdef object last = w[order - 1]
    for s in range(steps):
        last = last + w[head]
        w[head] = last
        head += 1
        if head == order:
            head = 0
    return w[head:] + w[:head]


cpdef list advance_linear(list weights, window, Py_ssize_t steps):
    cdef Py_ssize_t order = len(weights)
    cdef Py_ssize_t u, s
    cdef list w = list(window)
    cdef object acc, wu
    for s in range(steps):
        acc = 0
        for u in range(order):
            wu = weights[u]
            if wu:
                acc = acc + wu * w[order - 1 - u]
        del w[0]
        w.append(acc)
    return w


cpdef list series_coeffs(list num, list den, Py_ssize_t count):
    cdef list out = []
    cdef Py_ssize_t k, j, hi
    cdef Py_ssize_t dlen = len(den), nlen = len(num)
    cdef object c, dj
    for k in range(count):
        c = num[k] if k < nlen else 0
        hi = k if k < dlen - 1 else dlen - 1
        for j in range(1, hi + 1):
            dj = den[j]
            if dj:
                c = c - dj * out[k - j]
        out.append(c)
    return out
