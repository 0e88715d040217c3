"""NumPy fallback for the compiled kernels (same signatures as _kernels.pyx)."""

import numpy as np


def apply_phase(amp, phase):
    amp *= phase


def apply_real(amp, factor):
    amp *= factor


def density(amp, out):
    np.multiply(amp.real, amp.real, out=out)
    out += amp.imag * amp.imag


def weighted_moments(amp, x):
    p = amp.real**2 + amp.imag**2
    xp = x * p
    return float(p.sum()), float(xp.sum()), float((x * xp).sum())


def flux_line(center, left, right, out, coef):
    out += coef * (np.conj(center) * (right - left)).imag
