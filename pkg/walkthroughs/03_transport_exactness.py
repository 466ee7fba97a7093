"""Transport by a kernel commutes with cones, and the comparison is explicit.

For a kernel K and a chain map f, the package builds the isomorphism
cone(K (x) f) -> K (x) cone(f) degree by degree and certifies it.
"""

import random

from mttlab import TransportKernel, apply, certify_exactness, homology_dims
from mttlab.models import random_chain_map, random_complex

rng = random.Random(2024)
K = TransportKernel(random_complex(rng, 2, -1, 1), "Phi", "local", "bulk")
X1 = random_complex(rng, 3, -1, 1, sector="local")
X = random_complex(rng, 3, -1, 1, sector="local")
f = random_chain_map(rng, X1, X)

print("kernel cohomology:", homology_dims(K.kernel))
print("X cohomology:     ", homology_dims(X))
print("K(X) cohomology:  ", homology_dims(apply(K, X)))

cert = certify_exactness(K, f)
print("certificate ok:", cert.ok)
if not cert.ok:
    print("reason:", cert.reason)
