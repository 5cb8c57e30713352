"""
Truncating trees
================

With ``k`` pebbles, more than ``k`` identical branches at a vertex look the
same as exactly ``k``. Truncation cuts the surplus away.
"""

import numpy as np

from efpebble.game import GameMode, distinguishing_depth
from efpebble.generators import named_graph
from efpebble.treekit import branching_index, tree_center, truncate
from efpebble.verify import bushy_tree, random_tree

star = named_graph("star", 8)
print("star:", star.n, "vertices, branching index", branching_index(star))
print("truncated to 2:", truncate(star, 2).n, "vertices")

##############################################################################
# Game values survive truncation.

rng = np.random.default_rng(0)
for k in (2, 3):
    t = bushy_tree(rng, k)
    g = random_tree(rng, 7)
    tk = truncate(t, k)
    a = distinguishing_depth(t, g, GameMode.full(k))
    b = distinguishing_depth(tk, g, GameMode.full(k))
    print(f"k={k}: {t.n} -> {tk.n} vertices; depth {a} vs {b}")

c = tree_center(named_graph("path", 7))
print("P7 center", c.center, "radius", c.radius, "diameter", c.diameter)
