# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""
Compiled kernel for the Kauffman-bracket state sum.

Drop-in twin of ``braidkit._bracket_py`` (see that module for the exact
semantics); this one runs the 2^L state loop in C with the GIL released,
so it is the backend of choice for 16-24 crossing diagrams and for the
template fuzzing runs.
"""

from libc.stdlib cimport calloc, free

BACKEND = "cython"


def bracket_coeffs(int n, letters, unsigned long long start, unsigned long long end):
    """Partial bracket coefficient table over states ``start <= s < end``."""
    cdef int L = len(letters)
    cdef int max_nodes = n + L
    cdef int width = 3 * L + 2 * n + 1      # |exponent| bound: L + 2*(max_nodes-1)
    cdef int size = 2 * width + 1
    cdef int j, k, p, a, b, x, bit, nodes, loops, bcount, c1, e0, base
    cdef long long sgn
    cdef unsigned long long s

    cdef int* idx = <int*> calloc(L if L else 1, sizeof(int))
    cdef int* neg = <int*> calloc(L if L else 1, sizeof(int))
    cdef int* parent = <int*> calloc(max_nodes, sizeof(int))
    cdef int* cur = <int*> calloc(n, sizeof(int))
    cdef long long* coeffs = <long long*> calloc(size, sizeof(long long))
    cdef long long* binoms = <long long*> calloc(max_nodes * (max_nodes + 1), sizeof(long long))
    if not idx or not neg or not parent or not cur or not coeffs or not binoms:
        free(idx); free(neg); free(parent); free(cur); free(coeffs); free(binoms)
        raise MemoryError()

    try:
        for j in range(L):
            x = letters[j]
            idx[j] = (x if x > 0 else -x) - 1
            neg[j] = 1 if x < 0 else 0
        # Pascal's triangle, row c at offset c*(max_nodes+1).
        for j in range(max_nodes):
            binoms[j * (max_nodes + 1)] = 1
            for k in range(1, j + 1):
                binoms[j * (max_nodes + 1) + k] = (
                    binoms[(j - 1) * (max_nodes + 1) + k - 1]
                    + (binoms[(j - 1) * (max_nodes + 1) + k] if k <= j - 1 else 0)
                )

        with nogil:
            s = start
            while s < end:
                for x in range(max_nodes):
                    parent[x] = x
                for x in range(n):
                    cur[x] = x
                nodes = n
                bcount = 0
                for j in range(L):
                    bit = <int> ((s >> j) & 1)
                    bcount += bit
                    if bit ^ neg[j]:
                        p = idx[j]
                        a = cur[p]
                        while parent[a] != a:
                            parent[a] = parent[parent[a]]
                            a = parent[a]
                        b = cur[p + 1]
                        while parent[b] != b:
                            parent[b] = parent[parent[b]]
                            b = parent[b]
                        if a != b:
                            parent[a] = b
                        cur[p] = nodes
                        cur[p + 1] = nodes
                        nodes += 1
                for j in range(n):
                    a = cur[j]
                    while parent[a] != a:
                        parent[a] = parent[parent[a]]
                        a = parent[a]
                    b = j
                    while parent[b] != b:
                        parent[b] = parent[parent[b]]
                        b = parent[b]
                    if a != b:
                        parent[a] = b
                loops = 0
                for x in range(nodes):
                    if parent[x] == x:
                        loops += 1
                e0 = L - 2 * bcount
                c1 = loops - 1
                sgn = -1 if c1 % 2 else 1
                base = e0 - 2 * c1 + width
                for k in range(c1 + 1):
                    coeffs[base + 4 * k] += sgn * binoms[c1 * (max_nodes + 1) + k]
                s += 1

        out = {}
        for x in range(size):
            if coeffs[x] != 0:
                out[x - width] = coeffs[x]
        return out
    finally:
        free(idx)
        free(neg)
        free(parent)
        free(cur)
        free(coeffs)
        free(binoms)
