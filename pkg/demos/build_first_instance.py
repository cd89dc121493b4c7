"""Build the simplest transformed family and check it end to end.

Starting from the q-Meixner polynomials at q = 2/5, b = 1/3, c = 3/2, we
perturb them with a degree-1 ladder polynomial, obtain new polynomials
q_n = p_n + beta_n p_{n-1}, and confirm with exact arithmetic that they are
eigenfunctions of a fourth-order q-difference operator and orthogonal for
the transformed moment functional.
"""
from __future__ import annotations

from fractions import Fraction

from qkrall import (MEIXNER_I, MeixnerParams, build, gram_matrix,
                    rational_str, theorem_catalog, verify_eigen)

Q, B, C = Fraction(2, 5), Fraction(1, 3), Fraction(3, 2)
K = 1

params = MeixnerParams(Q, B, C)
td = theorem_catalog(MEIXNER_I, params, K)
kc = build(td.family, td.spec, td.p2, n_top=10)

print(f"instance: {td.name}, degree parameter k = {K}")
print(f"ladder polynomial P2 = {td.p2.pretty()}")
print(f"companion P1 = {kc.p1.pretty()}")
print(f"operator order = {kc.operator.order()} (expected {td.expected_order})")
print()

print("first sequence values:")
for n in range(1, 6):
    print(f"  n = {n}:  beta = {rational_str(kc.beta(n)):>18}   "
          f"lambda = {rational_str(kc.lam(n))}")
print()

report = verify_eigen(kc)
print(f"eigen equation D(q_n) = lambda_n q_n, n <= 10: "
      f"{'all exact' if all(e['passed'] for e in report) else 'FAILED'}")

gram = gram_matrix(td.measure, kc.qpolys()[:5])
off_diagonal = [gram[i][j] for i in range(5) for j in range(5) if i != j]
print(f"Gram matrix 5x5: off-diagonal entries all zero: "
      f"{all(v == 0 for v in off_diagonal)}")
print("diagonal:", ", ".join(rational_str(gram[i][i]) for i in range(5)))
