"""
Alternation on lifted trees
===========================

Two colored trees that one quantifier alternation per level tells apart.
"""

from efpebble import generators as gen
from efpebble.formula import evaluate, formula_from_strategy, fragment_info, serialize_formula
from efpebble.game import GameMode, alternation_number, solve

##############################################################################
# Building the pair
# -----------------
#
# Each level hangs copies of the previous pair under a fresh gray root. The
# first graph gets two copies of ``G`` and one of ``H``; the second gets three
# copies of ``G``.

for i in (1, 2, 3):
    g, h = gen.colored_tree_pair(i)
    print(f"level {i}: {g.n} vertices each")

##############################################################################
# One-sided games
# ---------------
#
# Spoiler starting in ``G`` wins within ``i`` rounds. Starting in ``H`` he
# never wins, however many rounds he gets.

g, h = gen.colored_tree_pair(2)
for text in ("sigma:1", "sigma:2", "pi:2", "full"):
    table = solve(g, h, GameMode.parse(text, 2))
    print(f"{text:8s} -> {table.root_value}")

print("alternation number:", alternation_number(g, h, 2))

##############################################################################
# A distinguishing sentence
# -------------------------
#
# The winning strategy translates back into a two-variable sentence whose
# quantifier depth equals the number of rounds.

table = solve(g, h, GameMode.sigma(2, 2))
f = formula_from_strategy(g, h, table)
info = fragment_info(f)
print(serialize_formula(f)[:200], "...")
print(f"qdepth={info.qdepth} sigma_level={info.sigma_level} true on G: {evaluate(f, g)}, on H: {evaluate(f, h)}")
