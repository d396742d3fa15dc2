"""
Breaking ties between shortest paths
====================================

On a unit-cost 4-cycle, two paths of length two join opposite corners.  The
perturbed costs append a unit term, the homology signature and a drainage
value to each dart cost, and compared lexicographically they pick exactly
one of them.
"""

from holiest import holiest_sssp
from holiest.oracles import cycle_graph, enumerate_min_paths, lex_winners, path_cost_vector, standard_costs, unit_costs

g = cycle_graph(4)
c = unit_costs(g)
costs = standard_costs(g, c)

paths = enumerate_min_paths(g, c, 0, 2)
for p in paths:
    print(p, path_cost_vector(costs, p))

###############################################################################
# Exactly one candidate wins, and it is the tree path the label-setting
# search returns.

winner, = lex_winners(costs, paths, path_cost_vector)
tree = holiest_sssp(g, costs, 0)
print("winner:", winner, "tree path:", tree.path_to(2))
assert winner == tree.path_to(2)
