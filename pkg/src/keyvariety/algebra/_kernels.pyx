# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sparse term kernels (same contract as ``_kernels_py``)."""
from .gaussian import GaussianRational, QZERO

cdef object _make = GaussianRational._make
cdef object _Z = QZERO


cdef bint _all_real(dict d):
    cdef object c
    for c in d.values():
        if c.im:
            return False
    return True


def mul_terms(dict a, dict b):
    cdef dict acc, acc_re, acc_im, out
    cdef list bl
    cdef Py_ssize_t j, nb
    cdef object ma, ca, mb, ra, rb, m, v, ar, ai, br, bi, pr, pi, r, i
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    if _all_real(a) and _all_real(b):
        acc = {}
        bl = [(mb, cb.re) for mb, cb in b.items()]
        nb = len(bl)
        for ma, ca in a.items():
            ra = ca.re
            for j in range(nb):
                mb, rb = <tuple>bl[j]
                m = ma + mb
                v = acc.get(m)
                if v is None:
                    acc[m] = ra * rb
                else:
                    acc[m] = v + ra * rb
        return {m: _make(v, _Z) for m, v in acc.items() if v}
    acc_re = {}
    acc_im = {}
    bl = [(mb, cb.re, cb.im) for mb, cb in b.items()]
    nb = len(bl)
    for ma, ca in a.items():
        ar = ca.re
        ai = ca.im
        for j in range(nb):
            mb, br, bi = <tuple>bl[j]
            m = ma + mb
            pr = ar * br - ai * bi
            pi = ar * bi + ai * br
            v = acc_re.get(m)
            if v is None:
                acc_re[m] = pr
                acc_im[m] = pi
            else:
                acc_re[m] = v + pr
                acc_im[m] = acc_im[m] + pi
    out = {}
    for m, r in acc_re.items():
        i = acc_im[m]
        if r or i:
            out[m] = _make(r, i)
    return out


def add_scaled(dict a, dict b, c=None, shift=0):
    cdef dict out = dict(a)
    cdef object m, v, k, w, s, p
    if c is None:
        for m, v in b.items():
            k = m + shift
            w = out.get(k)
            if w is None:
                out[k] = v
            else:
                s = w + v
                if s:
                    out[k] = s
                else:
                    del out[k]
        return out
    if not c:
        return out
    for m, v in b.items():
        k = m + shift
        p = v * c
        w = out.get(k)
        if w is None:
            out[k] = p
        else:
            s = w + p
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def sub_scaled_inplace(dict row, dict piv, c):
    cdef object cr = c.re
    cdef object ci = c.im
    cdef object k, v, vr, vi, pr, pi, w, r, i
    for k, v in piv.items():
        vr = v.re
        vi = v.im
        if ci or vi:
            pr = vr * cr - vi * ci
            pi = vr * ci + vi * cr
        else:
            pr = vr * cr
            pi = _Z
        w = row.get(k)
        if w is None:
            row[k] = _make(-pr, -pi)
        else:
            r = w.re - pr
            i = w.im - pi
            if r or i:
                row[k] = _make(r, i)
            else:
                del row[k]


def scale_terms(dict a, c):
    if not c:
        return {}
    return {m: v * c for m, v in a.items()}
