"""
Moving the source around a face
===============================

The multiple-source engines slide the root of a holiest shortest-path tree
along the boundary of one face and report every dart that enters or leaves
the tree.  The reference engine recomputes distances at every step; the
staged engine only tracks integer slacks and the cut graph.
"""

import time

from holiest import LinearMSSP, mssp_reference, trace_lines
from holiest.oracles import torus_grid, unit_costs

g = torus_grid(4, 4)
c = unit_costs(g)
ref = mssp_reference(g, c, 0)
eng = LinearMSSP(g, c, 0)
lin = eng.run()
print(trace_lines(ref[:5]), end="")
print("identical traces:", trace_lines(ref) == trace_lines(lin))
print("sweep statistics:", eng.stats)

###############################################################################
# On torus grids the number of regular pivots grows linearly with the side.

for w in (8, 16, 32, 64):
    g = torus_grid(w, w)
    t0 = time.perf_counter()
    ev = LinearMSSP(g, unit_costs(g), 0).run()
    dt = time.perf_counter() - t0
    print(f"{w}x{w}: {sum(e.kind == 'regular' for e in ev)} regular pivots in {dt:.3f}s")
