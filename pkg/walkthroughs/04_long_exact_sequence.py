"""A transported triangle gives a long exact sequence of Hom spaces.

Take a random cone triangle in node 1, push it to node 2 through the
channel kernel, apply Hom(-, L_2) and check exactness at every position.
"""

import random

from mttlab.checks import build_and_verify_les
from mttlab.models import DEMOS, random_triangle

D = DEMOS["bridge"]()
T = random_triangle(random.Random(5), max_dim=3, lo=-2, hi=2, sector=D.sector(1))
rec = build_and_verify_les(D, 1, 2, T, D.probe(2))

for (deg, label, dim), good in zip(rec.spaces, rec.exact_at):
    if dim:
        print(f"  H^{deg:>2} {label:<10} dim {dim}   exact: {good}")
print("every position exact:", all(rec.exact_at), "  cone certificate:", rec.certificate.ok)
