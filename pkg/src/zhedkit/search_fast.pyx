# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernel.

Mirror of search_slow.py: identical move ordering, memo policy and return
codes, so the two kernels are interchangeable and produce the same
classifications, witnesses and state counts.  The hot path applies moves
into a scratch buffer, hashes it with an inline 128-bit FNV-1a variant and
only materializes a bytes object when the child is genuinely new; memo keys
match search_slow (raw cells when <= 64 bytes, 16-byte digest otherwise, at
a collision probability far below hardware error rates).
"""

import time
from hashlib import blake2b

from cpython.bytearray cimport PyByteArray_AS_STRING
from cpython.bytes cimport PyBytes_AS_STRING, PyBytes_FromStringAndSize
from libc.stdlib cimport free, malloc
from libc.string cimport memcpy

cdef int C_EMPTY = 0
cdef int C_BLANK = 255

SOLVED = 0
UNSOLVED = 1
EXHAUSTED = 2

KERNEL = "cython"

cdef int[4] DR = [-1, 0, 1, 0]
cdef int[4] DC = [0, 1, 0, -1]

cdef unsigned long long FNV_OFFSET = 14695981039346656037ULL
cdef unsigned long long FNV_PRIME = 1099511628211ULL


cdef inline object _digest(const unsigned char *p, Py_ssize_t n):
    """Memo key: raw bytes for small boards, 16-byte hash otherwise."""
    cdef unsigned long long h1 = FNV_OFFSET
    cdef unsigned long long h2 = 9029988052155159843ULL
    cdef Py_ssize_t i
    cdef unsigned char out[16]
    if n <= 64:
        return PyBytes_FromStringAndSize(<const char *> p, n)
    for i in range(n):
        h1 = (h1 ^ p[i]) * FNV_PRIME
        h2 = (h2 ^ p[n - 1 - i]) * FNV_PRIME
    h1 ^= h1 >> 29
    h1 *= 0xbf58476d1ce4e5b9ULL
    h2 ^= h2 >> 31
    h2 *= 0x94d049bb133111ebULL
    for i in range(8):
        out[i] = <unsigned char> (h1 >> (8 * i))
        out[8 + i] = <unsigned char> (h2 >> (8 * i))
    return PyBytes_FromStringAndSize(<const char *> out, 16)


cdef list _ordered_moves(const unsigned char *p, int width, int height,
                         int tr, int tc, bint prune_zero):
    cdef int n = width * height
    cdef int idx, r, c, d, rr, cc, dr, dc
    cdef unsigned char v
    cdef bint effect, toward
    cdef long key
    cdef list keys = []
    for idx in range(n):
        v = p[idx]
        if v == C_EMPTY or v == C_BLANK:
            continue
        r = idx / width
        c = idx % width
        for d in range(4):
            dr = DR[d]
            dc = DC[d]
            rr = r + dr
            cc = c + dc
            effect = False
            while 0 <= rr < height and 0 <= cc < width:
                if p[rr * width + cc] == C_EMPTY:
                    effect = True
                    break
                rr += dr
                cc += dc
            if (not effect) and prune_zero:
                continue
            toward = ((d == 0 and tr < r) or (d == 1 and tc > c)
                      or (d == 2 and tr > r) or (d == 3 and tc < c))
            key = ((<long> (0 if effect else 1)) << 21) \
                | ((<long> (0 if toward else 1)) << 20) \
                | (<long> idx << 2) | d
            keys.append(key)
    keys.sort()
    cdef long mask = (1 << 20) - 1
    cdef Py_ssize_t i
    for i in range(len(keys)):
        keys[i] = keys[i] & mask
    return keys


cdef int _apply_into(unsigned char *out, const unsigned char *src, Py_ssize_t n,
                     int width, int height, int move, int *filled) nogil:
    """Copy src into out, apply the encoded move, record filled indices."""
    cdef int idx = move >> 2
    cdef int d = move & 3
    cdef int k, dr, dc, r, c, j
    cdef int count = 0
    memcpy(out, src, n)
    k = out[idx]
    out[idx] = C_BLANK
    dr = DR[d]
    dc = DC[d]
    r = idx / width + dr
    c = idx % width + dc
    while k and 0 <= r < height and 0 <= c < width:
        j = r * width + c
        if out[j] == C_EMPTY:
            out[j] = C_BLANK
            filled[count] = j
            count += 1
            k -= 1
        r += dr
        c += dc
    return count


def ordered_moves(cells, int width, int height, int tr, int tc, bint prune_zero):
    cdef bytes data = bytes(cells)
    return _ordered_moves(<const unsigned char *> PyBytes_AS_STRING(data),
                          width, height, tr, tc, prune_zero)


def apply_encoded(cells, int width, int height, int move):
    cdef bytes data = bytes(cells)
    cdef Py_ssize_t n = len(data)
    cdef bytes out = PyBytes_FromStringAndSize(NULL, n)
    cdef int fills[300]
    cdef int count = _apply_into(<unsigned char *> PyBytes_AS_STRING(out),
                                 <const unsigned char *> PyBytes_AS_STRING(data),
                                 n, width, height, move, fills)
    return out, [fills[i] for i in range(count)]


def solve(cells, int width, int height, int target, long max_states,
          long max_millis, bint prune_zero):
    cdef bytes root = bytes(cells)
    cdef Py_ssize_t n = len(root)
    if (<const unsigned char *> PyBytes_AS_STRING(root))[target] != C_EMPTY:
        return SOLVED, [], 0
    cdef int tr = target / width
    cdef int tc = target % width
    cdef double deadline = time.monotonic() + max_millis / 1000.0 if max_millis else 0.0

    cdef unsigned char *scratch = <unsigned char *> malloc(n)
    cdef int *fills = <int *> malloc(sizeof(int) * (n + 4))
    if scratch == NULL or fills == NULL:
        free(scratch)
        free(fills)
        raise MemoryError()

    cdef set memo = set()
    cdef long states = 0
    cdef list stack_cells = [root]
    cdef list stack_moves = [_ordered_moves(
        <const unsigned char *> PyBytes_AS_STRING(root), width, height,
        tr, tc, prune_zero)]
    cdef list stack_next = [0]
    cdef list path = []
    cdef long ticks = 0
    cdef int i, move
    cdef list moves
    cdef bytes cur, child
    cdef const unsigned char *cp

    try:
        while stack_cells:
            i = <int> stack_next[len(stack_next) - 1]
            cur = <bytes> stack_cells[len(stack_cells) - 1]
            moves = <list> stack_moves[len(stack_moves) - 1]
            if i == len(moves):
                cp = <const unsigned char *> PyBytes_AS_STRING(cur)
                memo.add(_digest(cp, n))
                states += 1
                stack_cells.pop()
                stack_moves.pop()
                stack_next.pop()
                if path:
                    path.pop()
                if stack_cells and max_states > 0 and states >= max_states:
                    return EXHAUSTED, [], states
                continue
            stack_next[len(stack_next) - 1] = i + 1
            move = <int> moves[i]
            cp = <const unsigned char *> PyBytes_AS_STRING(cur)
            _apply_into(scratch, cp, n, width, height, move, fills)
            if scratch[target] != C_EMPTY:
                return SOLVED, path + [move], states
            if _digest(scratch, n) in memo:
                continue
            ticks += 1
            if max_millis and ticks % 1024 == 0 and time.monotonic() > deadline:
                return EXHAUSTED, [], states
            child = PyBytes_FromStringAndSize(<const char *> scratch, n)
            stack_cells.append(child)
            stack_moves.append(_ordered_moves(scratch, width, height,
                                              tr, tc, prune_zero))
            stack_next.append(0)
            path.append(move)

        return UNSOLVED, [], states
    finally:
        free(scratch)
        free(fills)


def explore(cells, int width, int height, int target, long max_states,
            long max_millis):
    cdef bytes root = bytes(cells)
    cdef Py_ssize_t n = len(root)
    cdef int tr = target / width
    cdef int tc = target % width
    cdef double deadline = time.monotonic() + max_millis / 1000.0 if max_millis else 0.0

    cdef unsigned char *scratch = <unsigned char *> malloc(n)
    cdef int *fills = <int *> malloc(sizeof(int) * (n + 4))
    if scratch == NULL or fills == NULL:
        free(scratch)
        free(fills)
        raise MemoryError()

    cdef bytearray union = bytearray(n)
    cdef unsigned char *up = <unsigned char *> PyByteArray_AS_STRING(union)
    cdef const unsigned char *rp = <const unsigned char *> PyBytes_AS_STRING(root)
    cdef Py_ssize_t ii
    for ii in range(n):
        if rp[ii] != C_EMPTY:
            up[ii] = 1
    fillable = rp[target] != C_EMPTY

    cdef set memo = set()
    cdef long states = 0
    cdef list stack_cells = [root]
    cdef list stack_moves = [_ordered_moves(rp, width, height, tr, tc, False)]
    cdef list stack_next = [0]
    cdef long ticks = 0
    cdef int i, move, count, f
    cdef list moves
    cdef bytes cur, child
    cdef const unsigned char *cp

    try:
        while stack_cells:
            i = <int> stack_next[len(stack_next) - 1]
            cur = <bytes> stack_cells[len(stack_cells) - 1]
            moves = <list> stack_moves[len(stack_moves) - 1]
            if i == len(moves):
                cp = <const unsigned char *> PyBytes_AS_STRING(cur)
                memo.add(_digest(cp, n))
                states += 1
                stack_cells.pop()
                stack_moves.pop()
                stack_next.pop()
                if stack_cells and max_states > 0 and states >= max_states:
                    return fillable, union, states, False
                continue
            stack_next[len(stack_next) - 1] = i + 1
            move = <int> moves[i]
            cp = <const unsigned char *> PyBytes_AS_STRING(cur)
            count = _apply_into(scratch, cp, n, width, height, move, fills)
            if _digest(scratch, n) in memo:
                continue
            for f in range(count):
                up[fills[f]] = 1
            if scratch[target] != C_EMPTY:
                fillable = True
            ticks += 1
            if max_millis and ticks % 1024 == 0 and time.monotonic() > deadline:
                return fillable, union, states, False
            child = PyBytes_FromStringAndSize(<const char *> scratch, n)
            stack_cells.append(child)
            stack_moves.append(_ordered_moves(scratch, width, height, tr, tc, False))
            stack_next.append(0)

        return fillable, union, states, True
    finally:
        free(scratch)
        free(fills)
