"""The two closed-form families of interaction polynomials.

Single-degree data give P_12 = d q^m0, so the total weight is d and the
Euler weight is (-1)^m0 d.  Two-degree data give a q^m + b q^(m+1).
"""

from mttlab import interaction_polynomial
from mttlab.homcx import evaluate
from mttlab.models import gen_single_degree, gen_two_degree

print("single-degree family")
for d, m0 in [(1, 0), (3, 2), (2, -1)]:
    P = interaction_polynomial(gen_single_degree(d, m0), 1, 2)
    print(f"  d={d} m0={m0}:  P_12 = {P}   w_tot = {evaluate(P, 1)}   w_chi = {evaluate(P, -1)}")

print("two-degree family")
for a, b, m in [(1, 1, 0), (1, 2, -1), (4, 1, 3)]:
    P = interaction_polynomial(gen_two_degree(a, b, m), 1, 2)
    print(f"  a={a} b={b} m={m}:  P_12 = {P}   w_tot = {evaluate(P, 1)}   w_chi = {evaluate(P, -1)}")
