"""Triangle visibility: an explicit non-null-homotopic map certifies P != 0.

The right witness is a chain map from the transported probe to L_2 whose
homotopy class is nonzero, together with the triangle it spans.
"""

from mttlab import interaction_polynomial
from mttlab.checks import find_left_visibility, find_right_visibility
from mttlab.models import gen_visibility_left, gen_visibility_right
from mttlab.mtt import transported_probe

D = gen_visibility_right()
X, L = transported_probe(D, 1, 2), D.probe(2)
w = find_right_visibility(X, L)
print("right demo: P_12 =", interaction_polynomial(D, 1, 2))
print("  witness:", w.nonzero_certificate)

D = gen_visibility_left()
X, L = transported_probe(D, 1, 2), D.probe(2)
print("left demo: P_12 =", interaction_polynomial(D, 1, 2))
print("  right witness found:", find_right_visibility(X, L) is not None)
v = find_left_visibility(L, X)
print("  left witness:", v.nonzero_certificate if v else None)
