"""Uniform acceleration versus a thermal bath.

A detector accelerating at a sees its field fluctuations at the temperature
a/(2 pi).  This script compares the acceleration-induced decoherence rate
with the rate of a particle at rest in a bath at that temperature.
"""

import math

from worldline_decoherence import Worldline, build_params, lambda_du, lambda_thermal

p = build_params(1.0, 1.0, 1.0, 1.0)

print(f"{'T':>6} {'Lambda accelerated':>20} {'Lambda thermal':>20} {'rel diff':>10}")
for T in (0.1, 0.25, 0.5, 1.0, 2.0, 4.0):
    acc = lambda_du(Worldline.hyperbolic(2 * math.pi * T), p).value
    th = lambda_thermal(T, p).value
    print(f"{T:6.2f} {acc:20.12e} {th:20.12e} {abs(acc - th) / th:10.1e}")
