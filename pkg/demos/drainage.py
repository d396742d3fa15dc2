"""
Drainages
=========

A drainage is a dual flow in which every face but one sink loses exactly one
unit.  Routing one unit from each face down a dual spanning tree builds one,
and the flow out of any face set reveals whether it holds the sink.
"""

from itertools import combinations

from holiest import cotree_drainage, tree_cotree
from holiest.oracles import planar_grid
from holiest.perturb import cut_sum, dual_imbalance_of

g = planar_grid(3, 3)
dr = cotree_drainage(g, tree_cotree(g, 0, 0))
print("edge values:", dr.z)
print("imbalance per face:", dual_imbalance_of(g, dr))

###############################################################################
# Sets containing the sink (face 0) have a positive cut sum, all others a
# negative one.

for k in (1, 2):
    for sub in combinations(range(g.num_faces), k):
        print(sub, cut_sum(g, dr, sub))
