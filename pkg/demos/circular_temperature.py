"""Effective temperature seen on a circular orbit.

Circular motion is stationary but not thermal: the ratio D-/D+ defines a
temperature that depends on frequency.  The table compares it with the
linear-acceleration value a/(2 pi) for the same proper acceleration.
"""

import math

import numpy as np

from worldline_decoherence import WightmanSpectrum, Worldline

for v in (0.9, 0.99, 0.999):
    wl = Worldline.circular_from_speed(v, 1.0)
    spec = WightmanSpectrum(wl)
    t_lin = wl.proper_acceleration / (2 * math.pi)
    print(f"v = {v}: proper acceleration {wl.proper_acceleration:.6g}, a/(2 pi) = {t_lin:.6g}")
    for w in np.geomspace(0.1, 10.0, 5):
        t = spec.effective_temperature(w)
        print(f"    omega = {w:8.4f}  T_eff = {t:.6g}  T_eff / (a/2pi) = {t / t_lin:.4f}")
