"""Command-line front end.

Every subcommand reads ``.emg`` graphs and ``.cst`` costs, writes TSV tables
or JSON-lines traces to stdout and diagnostics to stderr.  Exit status is 0
on success, 1 on bad input or usage, 2 when an internal invariant fails.
"""

import argparse
import random
import sys
from concurrent.futures import ProcessPoolExecutor

from .distances import ENGINES, mssp_distances, source_sequence
from .embedding import load_emg, write_emg
from .errors import HoliestError, InputError, InternalInvariantViolation, TieDetected
from .homology import homology_signatures, tree_cotree
from .mssp_linear import mssp_linear
from .mssp_ref import mssp_costs, mssp_reference, trace_lines
from .oracles import dijkstra_distances, fuzz_instance, make_instance
from .perturb import MODIFIED, STANDARD, VARIANTS, cotree_drainage, read_cst, write_cst
from .sssp import holiest_sssp, holiest_tree_small_int

GENERATORS = ("torus_grid", "planar_grid", "bouquet", "random_rotation", "path", "cycle")
COST_MODELS = ("unit", "uniform_random", "positive_random")


class UsageError(InputError):
    pass


class _Parser(argparse.ArgumentParser):
    # usage mistakes are input errors (status 1), not argparse's status 2
    def error(self, message):
        raise UsageError(message)


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _graph(args):
    try:
        return load_emg(args.graph)
    except OSError as exc:
        raise InputError(f"cannot read {args.graph}: {exc.strerror}") from None


def _costs(args, g):
    return read_cst(_read(args.costs), g.num_darts, args.default_cost)


def _face(g, r):
    if not 0 <= r < g.num_faces:
        raise InputError(f"face {r} out of range (graph has {g.num_faces})")
    return r


def _vertex(g, v):
    if not 0 <= v < g.num_vertices:
        raise InputError(f"vertex {v} out of range (graph has {g.num_vertices})")
    return v


def _ints(text, what):
    try:
        return [int(t) for t in text.split()]
    except ValueError:
        raise InputError(f"{what}: non-integer entry") from None


# -- subcommands -------------------------------------------------------------

def cmd_validate(args, out):
    g = _graph(args)
    if args.costs:
        _costs(args, g)
    out.write(f"ok V={g.num_vertices} E={g.num_edges} F={g.num_faces} genus={g.genus}\n")


def cmd_genus(args, out):
    out.write(f"{_graph(args).genus}\n")


def cmd_signatures(args, out):
    g = _graph(args)
    tc = tree_cotree(g, _vertex(g, args.root_vertex), _face(g, args.root_face))
    sigs = homology_signatures(g, tc)
    for e, s in enumerate(sigs.edge_sig):
        out.write("\t".join(str(x) for x in (e,) + tuple(s)) + "\n")


def cmd_drainage(args, out):
    g = _graph(args)
    tc = tree_cotree(g, _vertex(g, args.root_vertex), _face(g, args.sink_face))
    dr = cotree_drainage(g, tc)
    for e, z in enumerate(dr.z):
        out.write(f"{e}\t{z}\n")


def cmd_sssp(args, out):
    g = _graph(args)
    c = _costs(args, g)
    r = _face(g, args.sink_face)
    src = _vertex(g, args.source)
    costs = mssp_costs(g, c, r, args.variant, root_vertex=src)
    if args.variant == STANDARD:
        tree = holiest_sssp(g, costs, src)
    else:
        tree = holiest_tree_small_int(g, c, costs, src)
    for v in range(g.num_vertices):
        out.write(f"{v}\t{tree.pred[v]}\t{tree.dist_c0(v)}\n")


def _trace(args, out, engine):
    g = _graph(args)
    c = _costs(args, g)
    r = _face(g, args.sink_face)
    if engine == "reference":
        events = mssp_reference(g, c, r, variant=args.variant)
    else:
        events = mssp_linear(g, c, r, audit=args.audit)
    out.write(trace_lines(events))


def cmd_mssp_ref(args, out):
    _trace(args, out, "reference")


def cmd_mssp_linear(args, out):
    _trace(args, out, "linear")


def cmd_distances(args, out):
    g = _graph(args)
    c = _costs(args, g)
    r = _face(g, args.sink_face)
    targets = _ints(_read(args.walk), "walk")
    vals = _ints(_read(args.pairs), "pairs")
    if len(vals) % 2:
        raise InputError("pairs: expected rows 'i j'")
    pairs = list(zip(vals[0::2], vals[1::2]))
    for i, j, dist in mssp_distances(g, c, r, targets, pairs, engine=args.engine):
        out.write(f"{i}\t{j}\t{dist}\n")


def cmd_gen(args, out):
    inst = make_instance(args.kind, args.params, args.cost_model, args.max_cost, args.seed)
    emg, cst = args.out + ".emg", args.out + ".cst"
    for path, text in ((emg, write_emg(inst.graph)), (cst, write_cst(inst.c))):
        try:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise InputError(f"cannot write {path}: {exc.strerror}") from None
    out.write(f"{emg}\n{cst}\n")


def fuzz_case(seed, max_n=200, max_genus=3, max_cost=5):
    """One cross-engine check; returns ``(seed, status, detail)``.

    Status is ``ok``, ``tie`` (the reference saw two equal thresholds),
    ``trace`` (engines disagree), ``distance`` (a streamed distance is wrong)
    or ``error``.
    """
    g, c, r = fuzz_instance(seed, max_n, max_genus, max_cost)
    costs = mssp_costs(g, c, r, MODIFIED)
    try:
        ref = trace_lines(mssp_reference(g, c, r, costs=costs))
    except TieDetected as exc:
        return seed, "tie", str(exc)
    try:
        lin = trace_lines(mssp_linear(g, c, r, costs=costs))
    except HoliestError as exc:
        return seed, "error", str(exc)
    if ref != lin:
        a, b = ref.splitlines(), lin.splitlines()
        k = next((k for k, (x, y) in enumerate(zip(a, b)) if x != y), min(len(a), len(b)))
        return seed, "trace", f"first difference at event {k}"
    rng = random.Random(seed)
    v = rng.randrange(g.num_vertices)
    targets = [v]
    for _ in range(rng.randint(0, 2 * g.num_vertices)):
        if not g.rotation[v]:
            break
        v = g.head[rng.choice(g.rotation[v]) ^ 1]
        targets.append(v)
    sources = source_sequence(g, r)
    m = rng.randint(1, 4 * g.num_vertices)
    pairs = list(zip(sorted(rng.randrange(len(sources)) for _ in range(m)),
                     sorted(rng.randrange(len(targets)) for _ in range(m))))
    got = mssp_distances(g, c, r, targets, pairs, costs=costs)
    table = {}
    for i, j, dist in got:
        if i not in table:
            table[i] = dijkstra_distances(g, c, sources[i])
        if table[i][targets[j]] != dist:
            return seed, "distance", f"pair ({i}, {j}): {dist} vs {table[i][targets[j]]}"
    return seed, "ok", f"n={g.num_vertices} genus={g.genus} events={ref.count(chr(10))} pairs={len(pairs)}"


def _fuzz_job(job):
    return fuzz_case(*job)


def cmd_fuzz(args, out):
    if args.count < 0 or args.max_n < 1 or args.max_genus < 0 or args.max_cost < 0:
        raise InputError("fuzz parameters must be non-negative (max-n at least 1)")
    jobs = [(args.seed + k, args.max_n, args.max_genus, args.max_cost) for k in range(args.count)]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_fuzz_job, jobs, chunksize=8))
    else:
        results = [_fuzz_job(j) for j in jobs]
    failures = 0
    for seed, status, detail in results:
        if status != "ok":
            failures += 1
            out.write(f"seed {seed}\t{status}\t{detail}\n")
        elif args.verbose:
            out.write(f"seed {seed}\tok\t{detail}\n")
    out.write(f"fuzz: {len(results)} instances, {failures} failures\n")
    if failures:
        raise InternalInvariantViolation(f"{failures} fuzz instances failed")


# -- parser ------------------------------------------------------------------

def build_parser():
    p = _Parser(prog="holiest", description="Holiest shortest paths on embedded graphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_cmd(name, fn, help_text, costs=False, face=None):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--graph", required=True, help=".emg file")
        if costs:
            sp.add_argument("--costs", required=costs == "required", help=".cst file")
            sp.add_argument("--default-cost", type=int, default=None,
                            help="cost for darts missing from the .cst file")
        if face:
            sp.add_argument(face, type=int, default=0, help="face index")
        sp.set_defaults(fn=fn)
        return sp

    graph_cmd("validate", cmd_validate, "parse and check a graph (and costs)", costs="optional")
    graph_cmd("genus", cmd_genus, "print the genus")
    sp = graph_cmd("signatures", cmd_signatures, "homology signature of every edge", face="--root-face")
    sp.add_argument("--root-vertex", type=int, default=0)
    sp = graph_cmd("drainage", cmd_drainage, "cotree drainage value of every edge", face="--sink-face")
    sp.add_argument("--root-vertex", type=int, default=0)
    sp = graph_cmd("sssp", cmd_sssp, "holiest shortest-path tree", costs="required", face="--sink-face")
    sp.add_argument("--source", type=int, required=True)
    sp.add_argument("--variant", choices=VARIANTS, default=STANDARD)
    sp = graph_cmd("mssp-ref", cmd_mssp_ref, "reference MSSP pivot trace", costs="required",
                   face="--sink-face")
    sp.add_argument("--variant", choices=VARIANTS, default=MODIFIED)
    sp = graph_cmd("mssp-linear", cmd_mssp_linear, "staged MSSP pivot trace", costs="required",
                   face="--sink-face")
    sp.add_argument("--audit", action="store_true", help="check every step against a rebuild")
    sp = graph_cmd("distances", cmd_distances, "distances along a monotone correspondence",
                   costs="required", face="--sink-face")
    sp.add_argument("--walk", required=True, help="file with the target walk's vertices")
    sp.add_argument("--pairs", required=True, help="TSV rows 'i j'")
    sp.add_argument("--engine", choices=ENGINES, default="linear")

    sp = sub.add_parser("gen", help="write an instance as .emg and .cst")
    sp.add_argument("--kind", choices=GENERATORS, required=True)
    sp.add_argument("--params", type=int, nargs="+", required=True)
    sp.add_argument("--cost-model", choices=COST_MODELS, default="unit")
    sp.add_argument("--max-cost", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", required=True, help="output prefix")
    sp.set_defaults(fn=cmd_gen)

    sp = sub.add_parser("fuzz", help="cross-check the MSSP engines on random instances")
    sp.add_argument("--count", type=int, default=100)
    sp.add_argument("--max-n", type=int, default=200)
    sp.add_argument("--max-genus", type=int, default=3)
    sp.add_argument("--max-cost", type=int, default=5)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--verbose", action="store_true")
    sp.set_defaults(fn=cmd_fuzz)
    return p


def main(argv=None, out=None, err=None):
    """Run the CLI; returns the exit status."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        args.fn(args, out)
    except InternalInvariantViolation as exc:
        err.write(f"holiest: {exc}\n")
        return 2
    except HoliestError as exc:
        err.write(f"holiest: {exc}\n")
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())


def main_entry():
    sys.exit(main())
