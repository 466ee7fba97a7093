"""Two structural facts the engine reports as they are.

Directedness: nothing forces P_12 = P_21.  Obstruction: two data with the
same nodewise information can still disagree on P_12, so local data alone
cannot determine the interaction matrix.
"""

from mttlab import inherited_package, interaction_polynomial
from mttlab.models import DEMOS, gen_obstruction_demo
from mttlab.serialize import diff_data, render_diff_md

D = DEMOS["directedness"]()
print("directedness: P_12 =", interaction_polynomial(D, 1, 2),
      "  P_21 =", interaction_polynomial(D, 2, 1))

A, B = gen_obstruction_demo()
print("\nobstruction diff:")
print(render_diff_md(diff_data(A, B, inherited_package(A), inherited_package(B))))
