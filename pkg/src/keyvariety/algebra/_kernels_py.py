"""Pure-Python sparse term kernels.

A term map is a dict from packed monomial (or column index) to
GaussianRational.  These functions are the reference implementations of the
routines in ``_kernels.pyx``; both modules must stay behaviourally identical.
"""
from .gaussian import GaussianRational, QZERO

_make = GaussianRational._make


def _all_real(d):
    for c in d.values():
        if c.im:
            return False
    return True


def mul_terms(a, b):
    """Product of two term maps."""
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    if _all_real(a) and _all_real(b):
        acc = {}
        get = acc.get
        bl = [(mb, cb.re) for mb, cb in b.items()]
        for ma, ca in a.items():
            ra = ca.re
            for mb, rb in bl:
                m = ma + mb
                v = get(m)
                acc[m] = ra * rb if v is None else v + ra * rb
        return {m: _make(v, QZERO) for m, v in acc.items() if v}
    acc_re = {}
    acc_im = {}
    bl = [(mb, cb.re, cb.im) for mb, cb in b.items()]
    for ma, ca in a.items():
        ar, ai = ca.re, ca.im
        for mb, br, bi in bl:
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


def add_scaled(a, b, c=None, shift=0):
    """Return ``a + c * x^shift * b`` as a new term map (``c=None`` means 1)."""
    out = dict(a)
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


def sub_scaled_inplace(row, piv, c):
    """In place: ``row -= c * piv``."""
    cr, ci = c.re, c.im
    for k, v in piv.items():
        vr, vi = v.re, v.im
        if ci or vi:
            pr = vr * cr - vi * ci
            pi = vr * ci + vi * cr
        else:
            pr = vr * cr
            pi = QZERO
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


def scale_terms(a, c):
    """Return ``c * a``."""
    if not c:
        return {}
    return {m: v * c for m, v in a.items()}
