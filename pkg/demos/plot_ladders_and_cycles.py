"""
Ladders and long cycles
=======================

Ladders need more alternations as they grow. Cycles with dandelions need a
number of rounds quadratic in their size when Spoiler may not switch sides.
"""

from efpebble import generators as gen
from efpebble.game import GameMode, alternation_number, distinguishing_depth

##############################################################################
# Ladders
# -------
#
# Two copies of two ladder halves glued at the green rung. Gluing them
# straight or crossed gives non-isomorphic graphs.

for m in (2, 3, 4):
    g, h = gen.ladder_pair(m)
    print(f"m={m}: n={g.n}, alternation number {alternation_number(g, h, 2)}")

##############################################################################
# Cycles
# ------
#
# The existential game is won, but slowly. The bounds are quadratic in ``m``.

for m in (2, 3, 4):
    g, h = gen.cycle_pair(m)
    d = distinguishing_depth(g, h, GameMode.sigma(2, 1))
    lo, hi = 6 * m * m - 15 * m + 8, 6 * m * m - 3 * m + 2
    print(f"m={m}: {g.n}/{h.n} vertices, {d} rounds, bounds [{lo}, {hi}]")

##############################################################################
# Allowing one switch collapses the length to a handful of rounds.

g, h = gen.cycle_pair(3)
print("one switch:", distinguishing_depth(g, h, GameMode.sigma(2, 2)))
