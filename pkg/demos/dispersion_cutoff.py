"""Cutoff dependence of the dispersion coefficients.

The force-like C1 converges with the frequency cutoff when only the
acceleration-induced part is kept.  The quadratic C2 coefficients contain
vacuum pieces, so their value moves with the cutoff; the reported drift shows
by how much.
"""

import math

from worldline_decoherence import QuadConfig, Worldline, build_params, c1_td, c2_du, c2_td

p = build_params(1.0, 1.0, 1.0, 1.0)
wl = Worldline.hyperbolic(2 * math.pi)

r = c1_td(wl, p)
print(f"C1 (thermal part) = {r.value:.10g}  drift = {r.cutoff_drift:.1e}  converged = {r.converged}")
for L in (10.0, 20.0, 50.0):
    cfg = QuadConfig(uv_cutoff=L)
    for fn in (c2_du, c2_td):
        for sub in (False, True):
            r = fn(wl, p, cfg, vacuum_subtract=sub)
            print(f"{r.kind.value} L = {L:5.1f} vacuum_subtracted = {sub!s:5}  value = {r.value:14.6g}  "
                  f"drift = {r.cutoff_drift:.2e}")
