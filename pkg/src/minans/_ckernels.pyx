# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled rule-table kernels (languages of at most 64 atoms)."""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free


cdef class RuleTable:
    cdef uint64_t* _antec
    cdef uint64_t* _negb
    cdef uint64_t* _head
    cdef readonly Py_ssize_t size
    backend = "cython"

    def __cinit__(self, antec, negb, head):
        cdef Py_ssize_t i
        self.size = len(head)
        n = self.size if self.size > 0 else 1
        self._antec = <uint64_t*>malloc(n * sizeof(uint64_t))
        self._negb = <uint64_t*>malloc(n * sizeof(uint64_t))
        self._head = <uint64_t*>malloc(n * sizeof(uint64_t))
        if not self._antec or not self._negb or not self._head:
            raise MemoryError()
        for i in range(self.size):
            self._antec[i] = antec[i]
            self._negb[i] = negb[i]
            self._head[i] = head[i]

    def __dealloc__(self):
        free(self._antec)
        free(self._negb)
        free(self._head)

    cpdef Py_ssize_t first_violated(self, uint64_t pos, uint64_t neg, Py_ssize_t start=0):
        cdef Py_ssize_t i
        cdef uint64_t h
        for i in range(start, self.size):
            h = self._head[i]
            if (h & pos) == h and (self._antec[i] & pos) == 0 and (self._negb[i] & neg) == 0:
                return i
        return -1

    cdef inline bint _is_model(self, uint64_t m) nogil:
        cdef Py_ssize_t i
        cdef uint64_t a
        for i in range(self.size):
            a = self._antec[i]
            if (a & m) == a and (self._negb[i] & m) == 0 and (self._head[i] & m) == 0:
                return False
        return True

    cdef inline bint _is_reduct_model(self, uint64_t m, uint64_t against) nogil:
        cdef Py_ssize_t i
        cdef uint64_t a
        for i in range(self.size):
            a = self._antec[i]
            if (self._negb[i] & against) == 0 and (a & m) == a and (self._head[i] & m) == 0:
                return False
        return True

    cpdef bint is_model(self, uint64_t m):
        return self._is_model(m)

    cpdef bint is_reduct_model(self, uint64_t m, uint64_t against):
        return self._is_reduct_model(m, against)

    def models(self, int n):
        cdef uint64_t m, top
        if n > 40:
            raise OverflowError("language too large for exhaustive enumeration")
        top = (<uint64_t>1) << n
        out = []
        m = 0
        while m < top:
            if self._is_model(m):
                out.append(m)
            m += 1
        return out

    def stable_models(self, int n):
        cdef uint64_t m, sub, top
        cdef bint stable
        if n > 40:
            raise OverflowError("language too large for exhaustive enumeration")
        top = (<uint64_t>1) << n
        out = []
        m = 0
        while m < top:
            if self._is_model(m):
                stable = True
                sub = (m - 1) & m
                while True:
                    if sub != m and self._is_reduct_model(sub, m):
                        stable = False
                        break
                    if sub == 0:
                        break
                    sub = (sub - 1) & m
                if stable:
                    out.append(m)
            m += 1
        return out


def minimal_masks(masks):
    """Return the ⊆-minimal elements of `masks`, sorted ascending."""
    cdef list keep = []
    cdef uint64_t m, k
    cdef bint dominated
    for obj in sorted(set(masks), key=lambda x: (bin(x).count("1"), x)):
        m = obj
        dominated = False
        for kobj in keep:
            k = kobj
            if (k & m) == k:
                dominated = True
                break
        if not dominated:
            keep.append(obj)
    return sorted(keep)
