"""Pure-Python Dynnikov action, used when the compiled kernel is unavailable."""


def dynnikov_coords(letters, strands):
    """Coordinates of ``(0,1,...,0,1) . word``; letters are signed 1-based indices."""
    c = [0, 1] * strands
    for e in letters:
        i = abs(e) - 1
        x1, y1, x2, y2 = c[2 * i], c[2 * i + 1], c[2 * i + 2], c[2 * i + 3]
        if e > 0:
            z = x1 - min(y1, 0) - x2 + max(y2, 0)
            c[2 * i] = x1 + max(y1, 0) + max(max(y2, 0) - z, 0)
            c[2 * i + 1] = y2 - max(z, 0)
            c[2 * i + 2] = x2 + min(y2, 0) + min(min(y1, 0) + z, 0)
            c[2 * i + 3] = y1 + max(z, 0)
        else:
            z = x1 + min(y1, 0) - x2 - max(y2, 0)
            c[2 * i] = x1 - max(y1, 0) - max(max(y2, 0) + z, 0)
            c[2 * i + 1] = y2 + min(z, 0)
            c[2 * i + 2] = x2 - min(y2, 0) - min(min(y1, 0) - z, 0)
            c[2 * i + 3] = y1 - min(z, 0)
    return tuple(c)
