# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner-loop kernels for split-step propagation.

Arrays must be C-contiguous complex128/float64; multidimensional callers
pass flattened views.  `qmlab._kernels_py` provides the NumPy twin of this
module; keep the two signature-compatible.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def apply_phase(cnp.complex128_t[::1] amp, const cnp.complex128_t[::1] phase):
    """In-place amp *= phase.

    Spelled out in real arithmetic on the interleaved (re, im) layout so the
    compiler can vectorize (the C99 complex product goes through a
    non-inlined NaN-handling helper).
    """
    cdef Py_ssize_t i, n = amp.shape[0]
    if n == 0:
        return
    cdef double* a = <double*> &amp[0]
    cdef const double* b = <const double*> &phase[0]
    cdef double ar, ai, br, bi
    for i in range(n):
        ar = a[2 * i]
        ai = a[2 * i + 1]
        br = b[2 * i]
        bi = b[2 * i + 1]
        a[2 * i] = ar * br - ai * bi
        a[2 * i + 1] = ar * bi + ai * br


def apply_real(cnp.complex128_t[::1] amp, const cnp.float64_t[::1] factor):
    """In-place amp *= factor (real factor, e.g. mask times sponge)."""
    cdef Py_ssize_t i, n = amp.shape[0]
    if n == 0:
        return
    cdef double* a = <double*> &amp[0]
    cdef double f
    for i in range(n):
        f = factor[i]
        a[2 * i] *= f
        a[2 * i + 1] *= f


def density(const cnp.complex128_t[::1] amp, cnp.float64_t[::1] out):
    """out = |amp|^2."""
    cdef Py_ssize_t i, n = amp.shape[0]
    cdef double re, im
    for i in range(n):
        re = amp[i].real
        im = amp[i].imag
        out[i] = re * re + im * im


def weighted_moments(const cnp.complex128_t[::1] amp, const cnp.float64_t[::1] x):
    """Single-pass (sum |a|^2, sum x|a|^2, sum x^2|a|^2)."""
    cdef Py_ssize_t i, n = amp.shape[0]
    cdef double s0 = 0.0, s1 = 0.0, s2 = 0.0, p, re, im, xi
    for i in range(n):
        re = amp[i].real
        im = amp[i].imag
        p = re * re + im * im
        xi = x[i]
        s0 += p
        s1 += xi * p
        s2 += xi * xi * p
    return s0, s1, s2


def flux_line(const cnp.complex128_t[::1] center,
              const cnp.complex128_t[::1] left,
              const cnp.complex128_t[::1] right,
              cnp.float64_t[::1] out,
              double coef):
    """out += coef * Im(conj(center) * (right - left))."""
    cdef Py_ssize_t i, n = center.shape[0]
    cdef double cr, ci, dr, di
    for i in range(n):
        cr = center[i].real
        ci = center[i].imag
        dr = right[i].real - left[i].real
        di = right[i].imag - left[i].imag
        out[i] += coef * (cr * di - ci * dr)
