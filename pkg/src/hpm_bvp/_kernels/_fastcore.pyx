# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled convolution kernels.

Exponent tuples are packed into a single 64-bit key (10 bits per symbol,
up to 6 symbols), so monomial products reduce to integer additions and the
inner accumulation runs on a C++ hash map.  Inputs that do not fit the
packed layout raise PackOverflow; the dispatcher then falls back to the
pure-Python kernels.
"""

from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector
from cython.operator cimport dereference as deref, preincrement as inc

ctypedef unsigned long long u64

DEF SHIFT = 10
DEF MAXSYM = 6
# After adding two keys each exponent field must stay below 2**SHIFT, so
# individual input exponents are capped at 2**(SHIFT-1) - 1.
DEF MAXEXP = 511


class PackOverflow(Exception):
    """Input polynomial does not fit the packed-key layout."""


cdef int _pack(dict terms, int nsym, vector[u64]& keys, vector[double]& vals) except -1:
    cdef u64 key
    cdef int i
    cdef long e
    for mono, coeff in terms.items():
        key = 0
        for i in range(nsym):
            e = mono[i]
            if e > MAXEXP:
                raise PackOverflow(e)
            key |= (<u64> e) << (SHIFT * i)
        keys.push_back(key)
        vals.push_back(coeff)
    return 0


cdef dict _unpack(unordered_map[u64, double]& acc, int nsym):
    cdef dict out = {}
    cdef u64 key
    cdef int i
    cdef unordered_map[u64, double].iterator it = acc.begin()
    while it != acc.end():
        key = deref(it).first
        mono = tuple((key >> (SHIFT * i)) & <u64> (2 ** SHIFT - 1) for i in range(nsym))
        out[mono] = deref(it).second
        inc(it)
    return out


def poly_mul(dict a, dict b, int nsym):
    """Packed-key equivalent of pure.poly_mul."""
    if nsym > MAXSYM:
        raise PackOverflow(nsym)
    if not a or not b:
        return {}
    cdef vector[u64] ka, kb
    cdef vector[double] va, vb
    _pack(a, nsym, ka, va)
    _pack(b, nsym, kb, vb)
    cdef unordered_map[u64, double] acc
    cdef size_t i, j
    cdef u64 key
    cdef double coeff
    for i in range(ka.size()):
        coeff = va[i]
        key = ka[i]
        for j in range(kb.size()):
            acc[key + kb[j]] += coeff * vb[j]
    return _unpack(acc, nsym)


def series_mul(list a, list b, int nsym, int cap):
    """Packed-key equivalent of pure.series_mul (Cauchy product up to cap)."""
    if nsym > MAXSYM:
        raise PackOverflow(nsym)
    if not a or not b:
        return []
    cdef int la = len(a), lb = len(b)
    cdef int n = min(la + lb - 1, cap + 1)
    cdef vector[vector[u64]] akeys = vector[vector[u64]](la)
    cdef vector[vector[double]] avals = vector[vector[double]](la)
    cdef vector[vector[u64]] bkeys = vector[vector[u64]](lb)
    cdef vector[vector[double]] bvals = vector[vector[double]](lb)
    cdef int i, j
    for i in range(la):
        _pack(a[i], nsym, akeys[i], avals[i])
    for j in range(lb):
        _pack(b[j], nsym, bkeys[j], bvals[j])

    cdef vector[unordered_map[u64, double]] acc = vector[unordered_map[u64, double]](n)
    cdef size_t s, t
    cdef u64 key
    cdef double coeff
    cdef int jmax
    for i in range(la):
        if akeys[i].size() == 0:
            continue
        jmax = min(lb, cap + 1 - i)
        for j in range(jmax):
            if bkeys[j].size() == 0:
                continue
            for s in range(akeys[i].size()):
                key = akeys[i][s]
                coeff = avals[i][s]
                for t in range(bkeys[j].size()):
                    acc[i + j][key + bkeys[j][t]] += coeff * bvals[j][t]
    return [_unpack(acc[i], nsym) for i in range(n)]
