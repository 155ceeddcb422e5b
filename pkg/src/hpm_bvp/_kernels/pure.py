"""Pure-Python reference kernels for polynomial and series convolution.

These are the semantics of record: the compiled backend in ``_fastcore``
must agree with them coefficientwise (up to float summation order).  A
polynomial is a dict mapping dense exponent tuples to float coefficients;
a series is a list of such dicts indexed by the power of x.
"""

from __future__ import annotations


def poly_mul(a: dict, b: dict, nsym: int) -> dict:
    """Distributive product of two term maps; exponent vectors add."""
    if not a or not b:
        return {}
    out: dict = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            key = tuple(x + y for x, y in zip(ka, kb))
            out[key] = out.get(key, 0.0) + va * vb
    return out


def series_mul(a: list, b: list, nsym: int, cap: int) -> list:
    """Cauchy product of two coefficient lists, truncated at degree ``cap``.

    Entry k of the result accumulates sum_{i+j=k} a[i]*b[j]; powers of x
    beyond the cap are discarded silently.
    """
    if not a or not b:
        return []
    n = min(len(a) + len(b) - 1, cap + 1)
    out: list = [{} for _ in range(n)]
    for i, ca in enumerate(a):
        if not ca:
            continue
        jmax = min(len(b), cap + 1 - i)
        for j in range(jmax):
            cb = b[j]
            if not cb:
                continue
            acc = out[i + j]
            for ka, va in ca.items():
                for kb, vb in cb.items():
                    key = tuple(x + y for x, y in zip(ka, kb))
                    acc[key] = acc.get(key, 0.0) + va * vb
    return out
