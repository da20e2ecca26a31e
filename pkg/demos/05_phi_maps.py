"""Collapsing levels without losing holomorphy.

For N || M a weight vector on the divisors of M/N turns a quotient on
Gamma_0(M) into one on Gamma_0(N).  Admissible weights keep holomorphic
quotients holomorphic; for weight 1/2 the 3-part always collapses to a
single eta(3^j z).
"""

from etaforge import apply_phi, enumerate_holomorphic, is_holomorphic
from etaforge.phimap import corollary2_weights, ones_weights, project_to_prime_part

corpus = enumerate_holomorphic(72, 1)
w = ones_weights(72, 9)
images = {apply_phi(X, w) for X in corpus}
print(f"{len(corpus)} quotients on Gamma_0(72) -> {len(images)} images on Gamma_0(9)")
print("all holomorphic:", all(is_holomorphic(Y, 9) for Y in images))

w = corollary2_weights(72, 9, 1, 1)
print("weights", dict(w.values), "strict" if w.strict else "boundary")

seen = {}
for X in corpus:
    image, j0 = project_to_prime_part(X, 72, 3)
    seen.setdefault(j0, []).append(str(X))
for j0, xs in sorted(seen.items()):
    print(f"eta(3^{j0} z) receives {len(xs)} quotients, e.g. {xs[0]}")
