"""
Words, presentations and Tietze certificates
============================================

A relator is only defined up to rotation and inversion, so comparisons go
through a canonical cyclic form.  Isomorphisms between presentations are never
asserted; they are carried by certificates that anyone can replay.
"""

from heegaard_atlas.presentation import Presentation, build_tietze_certificate, verify_tietze_certificate
from heegaard_atlas.words import Alphabet, cyclic_normal_form, format_word, invert, parse_word, rotate

ab = Alphabet.from_names("ab")

# the first relator of the Poincare sphere diagram, in the caption syntax
r = parse_word("a^4ba^-1b=1", ab)
print("relator:", format_word(r), "length", len(r))

# rotations and the inverse all share one canonical form
forms = {cyclic_normal_form(rotate(r, k)) for k in range(len(r))} | {cyclic_normal_form(invert(r))}
print("distinct canonical forms over all rotations and the inverse:", len(forms))

# Fibonacci group F(2,6): a_i a_{i+1} = a_{i+2}, indices mod 6
f26 = Presentation.from_strings("abcdef", ["abc^-1", "bcd^-1", "cde^-1", "def^-1", "efa^-1", "fab^-1"])
hw = Presentation.from_strings("ab", ["ab^2a^-1b^2", "a^-1ba^-2b^-1a^-1"])

# eliminate c, d, e, f, then reconcile the leftovers by consequence search
cert = build_tietze_certificate(f26, hw, ["c", "d", "e", "f"], budget=20_000)
for step in cert.steps:
    print("  ", type(step).__name__, getattr(step, "name", getattr(step, "index", "")))
print("certificate verifies:", bool(verify_tietze_certificate(cert)))
