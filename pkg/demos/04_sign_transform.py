"""q -> -q permutes the list up to 48th roots of unity.

The substitution multiplies the coefficient of q^(m/24) by zeta_48^m.  For
every member we look for the unique member whose expansion matches after
that twist.
"""

from etaforge import ZAGIER_LIST, involution_pairing

pairing = involution_pairing(600)
for i, (j, k) in pairing.items():
    if i < j:
        print(f"{str(ZAGIER_LIST[i - 1]):36s} <-> {str(ZAGIER_LIST[j - 1]):36s} zeta_48^{k}")
print("fixed points:", [i for i, (j, _) in pairing.items() if i == j] or "none")
