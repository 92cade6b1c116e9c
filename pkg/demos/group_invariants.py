"""
Invariants of the eight diagram groups
======================================

Coset enumeration gives orders of finite groups, the Smith normal form of the
exponent-sum matrix gives first homology, and small permutation quotients
separate groups that homology cannot.
"""

from heegaard_atlas.atlas import load_atlas
from heegaard_atlas.groupcalc import homology_h1, psl_2_7, quotient_search, todd_coxeter

records = {r.name: r for r in load_atlas()}

# first homology for every record
for name, rec in records.items():
    print(f"{name:16s} H1 = {homology_h1(rec.caption)}")

# the Poincare group is finite of order 120 and perfect
poincare = records["poincare"].caption
print("\norder of the Poincare group:", todd_coxeter(poincare), "/", todd_coxeter(poincare, strategy="felsch"))

# Sigma(2,3,7) is also perfect, but it maps onto the simple group of order 168
brieskorn = records["brieskorn-237"].caption
witness = quotient_search(brieskorn, psl_2_7())
print("Sigma(2,3,7) onto PSL(2,7):", {k: v for k, v in witness.images.items()})
