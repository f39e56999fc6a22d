# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: free-word reduction/substitution and Cayley-table
tuple operations.  Signature-compatible with the pure-Python twin in
``pure.py``; the package picks whichever imports."""

from libc.stdlib cimport free, malloc

BACKEND = "cython"


def reduce_word(letters):
    """Freely reduce a word of signed generator indices."""
    cdef Py_ssize_t n = len(letters)
    if n == 0:
        return []
    cdef long* buf = <long*> malloc(n * sizeof(long))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t top = 0
    cdef long x
    try:
        for obj in letters:
            x = obj
            if top > 0 and buf[top - 1] == -x:
                top -= 1
            else:
                buf[top] = x
                top += 1
        return [buf[i] for i in range(top)]
    finally:
        free(buf)


def substitute(images, word):
    """Apply a generator-wise substitution to ``word`` and reduce."""
    cdef Py_ssize_t cap = 0
    cdef long letter
    for obj in word:
        letter = obj
        cap += len(images[(letter if letter > 0 else -letter) - 1])
    if cap == 0:
        return []
    cdef long* buf = <long*> malloc(cap * sizeof(long))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t top = 0
    cdef long x
    cdef Py_ssize_t j, m
    try:
        for obj in word:
            letter = obj
            img = images[(letter if letter > 0 else -letter) - 1]
            m = len(img)
            for j in range(m):
                if letter > 0:
                    x = img[j]
                else:
                    x = -(<long> img[m - 1 - j])
                if top > 0 and buf[top - 1] == -x:
                    top -= 1
                else:
                    buf[top] = x
                    top += 1
        return [buf[i] for i in range(top)]
    finally:
        free(buf)


cdef long* _flatten_table(table, Py_ssize_t n) except NULL:
    cdef long* ct = <long*> malloc(n * n * sizeof(long))
    if ct == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j
    for i in range(n):
        row = table[i]
        for j in range(n):
            ct[i * n + j] = row[j]
    return ct


cdef long* _copy_inverse(inv, Py_ssize_t n) except NULL:
    cdef long* ci = <long*> malloc(n * sizeof(long))
    if ci == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        ci[i] = inv[i]
    return ci


def evaluate_word(table, inv, tup, word):
    """Evaluate a free word at a tuple of group elements (0 = identity)."""
    cdef long acc = 0
    cdef long letter, g
    for obj in word:
        letter = obj
        if letter > 0:
            g = tup[letter - 1]
        else:
            g = inv[<long> tup[-letter - 1]]
        acc = table[acc][g]
    return acc


def canonical_tuple(table, inv, tup):
    """Lexicographically least tuple in the simultaneous-conjugation orbit."""
    cdef Py_ssize_t n = len(inv)
    cdef Py_ssize_t d = len(tup)
    cdef long* ct = NULL
    cdef long* ci = NULL
    cdef long* cur = NULL
    cdef long* best = NULL
    cdef long* cand = NULL
    cdef Py_ssize_t i, h, k
    cdef long hi_, c
    cdef int smaller
    try:
        ct = _flatten_table(table, n)
        ci = _copy_inverse(inv, n)
        cur = <long*> malloc(d * sizeof(long))
        best = <long*> malloc(d * sizeof(long))
        cand = <long*> malloc(d * sizeof(long))
        if cur == NULL or best == NULL or cand == NULL:
            raise MemoryError()
        for i in range(d):
            cur[i] = tup[i]
            best[i] = cur[i]
        for h in range(n):
            hi_ = ci[h]
            smaller = 0
            for k in range(d):
                c = ct[ct[hi_ * n + cur[k]] * n + h]
                cand[k] = c
                if not smaller:
                    if c > best[k]:
                        break  # candidate already larger; skip it
                    if c < best[k]:
                        smaller = 1
            if smaller:
                # loop ran to completion once `smaller` was set
                for i in range(d):
                    best[i] = cand[i]
        return tuple([best[i] for i in range(d)])
    finally:
        free(ct)
        free(ci)
        free(cur)
        free(best)
        free(cand)


def product_one_classes_chunk(table, inv, d, first_lo, first_hi):
    """Canonical representatives of product-one d-tuples with first
    coordinate in [first_lo, first_hi)."""
    cdef Py_ssize_t n = len(inv)
    cdef Py_ssize_t free_coords = d - 1
    cdef Py_ssize_t lo = first_lo, hi = first_hi
    classes = set()
    if lo >= hi or free_coords < 1:
        return classes
    cdef long* ct = NULL
    cdef long* ci = NULL
    cdef long* coords = NULL
    cdef long* tup = NULL
    cdef long* best = NULL
    cdef long* cand = NULL
    cdef Py_ssize_t i, k, pos
    cdef long acc, h, hi_inv, c, limit
    cdef Py_ssize_t dd = d
    cdef int smaller
    try:
        ct = _flatten_table(table, n)
        ci = _copy_inverse(inv, n)
        coords = <long*> malloc(free_coords * sizeof(long))
        tup = <long*> malloc(dd * sizeof(long))
        best = <long*> malloc(dd * sizeof(long))
        cand = <long*> malloc(dd * sizeof(long))
        if coords == NULL or tup == NULL or best == NULL or cand == NULL:
            raise MemoryError()
        for i in range(free_coords):
            coords[i] = 0
        coords[0] = lo
        while True:
            acc = 0
            for i in range(free_coords):
                tup[i] = coords[i]
                acc = ct[acc * n + coords[i]]
            tup[dd - 1] = ci[acc]
            # canonical form of tup
            for i in range(dd):
                best[i] = tup[i]
            for h in range(n):
                hi_inv = ci[h]
                smaller = 0
                for k in range(dd):
                    c = ct[ct[hi_inv * n + tup[k]] * n + h]
                    cand[k] = c
                    if not smaller:
                        if c > best[k]:
                            break  # candidate already larger; skip it
                        if c < best[k]:
                            smaller = 1
                if smaller:
                    for i in range(dd):
                        best[i] = cand[i]
            classes.add(tuple([best[i] for i in range(dd)]))
            # odometer
            pos = free_coords - 1
            while pos >= 0:
                coords[pos] += 1
                limit = hi if pos == 0 else n
                if coords[pos] < limit:
                    break
                coords[pos] = lo if pos == 0 else 0
                pos -= 1
            if pos < 0:
                break
        return classes
    finally:
        free(ct)
        free(ci)
        free(coords)
        free(tup)
        free(best)
        free(cand)
