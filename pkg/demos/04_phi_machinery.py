#!/usr/bin/env python3
"""The tail-shift machinery behind the sufficient conditions.

y(x) = x + phi(x) is inverted numerically; the shifted step in
y-coordinates, varphi(y) = y - x(y), must satisfy three asymptotic
conditions ((a) varphi' in [0,1], (b) varphi <= C+ log y,
(c) y varphi' <= C+) for the determinacy machinery to run.  The
certificate is an explicitly finite-range check: sups over a geometric
grid, 5% inflation for C+, and a growth test so a phi that can never
satisfy the conditions (a linear one, say) is refused rather than handed
a huge useless C+.
"""

import math

import numpy as np

from mdet import (certify_conditions, custom_phi, forward, inverse,
                  make_phi, varphi_and_prime)

print("=== the three built-in families ===")
for fam, a, alpha in [("logpow", 1.0, 1.0), ("logpow", 2.0, 0.0),
                      ("logpow+loglog", 1.0, 0.5),
                      ("logpow*loglog", 1.0, 0.5)]:
    p = make_phi(fam, a, alpha)
    x = max(10.0, p.x_min * 2)
    print(f"{p.label:30s} x_min={p.x_min:.3f}  phi({x:.1f})="
          f"{float(p.phi(np.array([x]))[0]):.4f}")

print("\n=== forward / inverse round trip ===")
p = make_phi("logpow", 1.0, 1.0)
for y in (10.0, 100.0, 1e8):
    x = inverse(p, y)
    print(f"y = {y:10.4g}: x(y) = {x:.10g}, y(x(y)) - y = "
          f"{forward(p, x) - y:+.2e}")

print("\n=== varphi and the chain rule ===")
y = math.e + 1.0
vp, vpp = varphi_and_prime(p, y)
print(f"at y = e+1: varphi = {vp:.6f}, varphi' = {vpp:.6f} "
      "(= phi'(e)/(1+phi'(e)))")
_, vpp = varphi_and_prime(p, 1e8)
print(f"at y = 1e8: y varphi'(y) = {1e8 * vpp:.6f} -> tends to a*alpha = 1")

print("\n=== certificates ===")
for fam, a, alpha in [("logpow", 1.0, 1.0), ("logpow", 2.0, 0.0),
                      ("logpow*loglog", 1.0, 0.5)]:
    cert = certify_conditions(make_phi(fam, a, alpha))
    print(f"{fam:16s} a={a} alpha={alpha}: valid={cert.valid}  "
          f"C+={cert.c_plus:.4f}  y*={cert.y_star:.4g}  "
          f"margins={tuple(round(m, 4) for m in cert.margins)}")

linear = custom_phi(lambda x: x, lambda x: np.ones_like(x), 1.0, "phi(x)=x")
cert = certify_conditions(linear)
print(f"{'phi(x) = x':16s}              : valid={cert.valid}  "
      f"failing condition {cert.failing_condition} "
      "(varphi = y/2 outgrows any C+ log y)")
