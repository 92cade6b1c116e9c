"""
Realizing a relator pair as a genus-2 diagram
=============================================

Each letter is a strand through one handle; a choice of strand order around
each handle is a rotation system.  The search inserts strands one at a time and
backtracks as soon as the partial arc graph stops fitting on a sphere.
"""

import json

from heegaard_atlas.atlas import reverify_witness
from heegaard_atlas.diagram import encoding_from_witness, parse_pair, read_relators, realize, whitehead_graph

r1, r2 = parse_pair("ab^2a^-1b^2", "a^-1ba^-2b^-1a^-1")
print("arc graph edges:", whitehead_graph(r1, r2))

result = realize(r1, r2)
print(type(result).__name__, "after", result.nodes, "nodes")
print("strand order around a and b:", result.witness.to_json())

# the witness is checked again from scratch and turned into a drawable encoding
print("re-verified:", reverify_witness(r1, r2, result.witness))
enc = encoding_from_witness(r1, r2, result.witness)
print("curves read back as:", [str(w) for w in read_relators(enc)])
print(json.dumps(enc.to_json())[:200], "...")
