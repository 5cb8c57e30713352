"""
Two-variable types
==================

Uncolored graphs up to two-variable equivalence, and sentences for each type.
"""

from collections import Counter

from efpebble.fo2type import graph_type, rank_decomposition, type_sentence
from efpebble.formula import evaluate, fragment_info
from efpebble.generators import named_graph
from efpebble.verify import small_graphs

##############################################################################
# Peeling
# -------
#
# Isolated or universal vertices are peeled off until a graph without such
# vertices (or an empty or complete one) remains.

w6 = named_graph("wheel", 6)
dec = rank_decomposition(w6)
print("wheel layers:", dec.layers, "kernel:", dec.kernel, "rank:", dec.graph_rank)

for name in ("path", "star"):
    print(name, graph_type(named_graph(name, 5)).to_dict())

##############################################################################
# All graphs up to six vertices
# -----------------------------

corpus = small_graphs(6)
types = Counter(graph_type(g) for g in corpus)
print(f"{len(corpus)} graphs fall into {len(types)} types")

##############################################################################
# Each type has a defining sentence with one alternation.

t, count = types.most_common(1)[0]
s = type_sentence(t)
hits = sum(evaluate(s, g) for g in corpus)
print(f"largest type {t.to_dict()} has {count} graphs; its sentence holds on {hits}")
print("altdepth:", fragment_info(s).altdepth)
