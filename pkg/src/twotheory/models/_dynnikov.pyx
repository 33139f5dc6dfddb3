# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled Dynnikov action on 64-bit integers.

Raises OverflowError when a coordinate leaves a safe range so the caller can
redo the computation with Python integers.
"""

cdef long long LIMIT = 1LL << 60


cdef inline long long pos(long long v):
    return v if v > 0 else 0


cdef inline long long neg(long long v):
    return v if v < 0 else 0


def dynnikov_coords(letters, int strands):
    cdef Py_ssize_t k, n = 2 * strands
    cdef long long x1, y1, x2, y2, z
    cdef int e, i
    cdef long long[:] c
    import array
    buf = array.array("q", [0, 1] * strands)
    c = buf
    for e in letters:
        i = (e if e > 0 else -e) - 1
        if i < 0 or 2 * i + 3 >= n:
            raise ValueError(f"letter {e} out of range for {strands} strands")
        x1 = c[2 * i]
        y1 = c[2 * i + 1]
        x2 = c[2 * i + 2]
        y2 = c[2 * i + 3]
        if e > 0:
            z = x1 - neg(y1) - x2 + pos(y2)
            c[2 * i] = x1 + pos(y1) + pos(pos(y2) - z)
            c[2 * i + 1] = y2 - pos(z)
            c[2 * i + 2] = x2 + neg(y2) + neg(neg(y1) + z)
            c[2 * i + 3] = y1 + pos(z)
        else:
            z = x1 + neg(y1) - x2 - pos(y2)
            c[2 * i] = x1 - pos(y1) - pos(pos(y2) + z)
            c[2 * i + 1] = y2 + neg(z)
            c[2 * i + 2] = x2 - neg(y2) - neg(neg(y1) - z)
            c[2 * i + 3] = y1 - neg(z)
        for k in range(2 * i, 2 * i + 4):
            if c[k] > LIMIT or c[k] < -LIMIT:
                raise OverflowError("coordinate out of 64-bit range")
    return tuple(buf)
