"""Search for the minimal-order operator of a perturbed functional.

Multiply the q-Meixner functional by the single factor (x + bc/q) and ask:
what is the smallest even order of a q-difference operator having the new
orthogonal polynomials as eigenfunctions?  The search solves one exact
nullspace problem per candidate order and re-verifies any hit, so a
"found" answer is a proof at the scanned degrees and a "not found" answer
is recorded honestly rather than silently skipped.
"""
from __future__ import annotations

import time
from fractions import Fraction

from qkrall import MeixnerParams, check_conjecture_a, rational_str

F = Fraction
params = MeixnerParams(F(2, 5), F(1, 3), F(3, 2))

started = time.monotonic()
report = check_conjecture_a(params, f1=[1])
elapsed = time.monotonic() - started

print("perturbing factor exponents:", report["inputs"]["f1"])
print("order suggested by the counting formula:",
      report["conjectured_order"])
print()
for attempt in report["attempts"]:
    verdict = "FOUND" if attempt["found"] else "nothing"
    print(f"  order {attempt['order']}: {verdict} "
          f"(nullspace dimension {attempt['nullspace_dim']})")
print()
print(f"status: {report['status']}; minimal order found = "
      f"{report['found_order']} in {elapsed:.1f}s")

eigenvalues = report["eigenvalues"][:6]
print("first eigenvalues of the discovered operator:",
      ", ".join(eigenvalues))

shifts = sorted(term["shift"] for term in report["operator"]["terms"])
print(f"operator window: shifts {shifts}")
