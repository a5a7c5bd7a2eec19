# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels. Mirrors ``hyperkube._purepy`` function for function."""

from libc.stdint cimport uint64_t

cdef extern from *:
    int __builtin_popcountll(unsigned long long)

cdef uint64_t FNV_OFFSET = 0xCBF29CE484222325ULL
cdef uint64_t FNV_PRIME = 0x100000001B3ULL


def fnv1a64(bytes data):
    cdef const unsigned char* p = data
    cdef Py_ssize_t i, n = len(data)
    cdef uint64_t h = FNV_OFFSET
    for i in range(n):
        h ^= p[i]
        h *= FNV_PRIME
    return h


def popcount(unsigned long long x):
    return __builtin_popcountll(x)


def hamming(unsigned long long u, unsigned long long v):
    return __builtin_popcountll(u ^ v)


def greedy_path(unsigned long long start, unsigned long long target):
    cdef unsigned long long cur = start
    cdef unsigned long long diff = start ^ target
    cdef unsigned long long low
    path = [start]
    while diff:
        low = diff & (~diff + 1)
        cur ^= low
        diff ^= low
        path.append(cur)
    return path


def free_positions(unsigned long long root, int r):
    cdef int i
    return [i for i in range(r) if not (root >> i) & 1]


def sbt_children(unsigned long long root, unsigned long long v, int r):
    cdef int i
    children = []
    for i in range(r):
        if (root >> i) & 1:
            continue
        if (v >> i) & 1:
            break
        children.append(v | (1ULL << i))
    return children


cdef void _preorder(unsigned long long root, unsigned long long v, int r, list out):
    cdef int i
    out.append(v)
    for i in range(r):
        if (root >> i) & 1:
            continue
        if (v >> i) & 1:
            break
        _preorder(root, v | (1ULL << i), r, out)


def sbt_preorder(unsigned long long root, int r):
    out = []
    _preorder(root, root, r, out)
    return out
