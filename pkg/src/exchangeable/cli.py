"""Command-line front end: ``exchangeable {sample,distance,converge,regularity}``.

Every output file starts with a ``# config: {...}`` line holding the resolved
arguments, so identical command lines produce identical bytes.  Errors are
reported on stderr as ``error: <code>: <detail>`` with exit status 2
(invalid input), 3 (size guard) or 4 (file system).
"""
from __future__ import annotations

import argparse
import io
import sys
from pathlib import Path

import numpy as np

from . import formats
from .arrays import (sample_graph, sample_joint_2array, sample_joint_darray, sample_pi_darray,
                     sample_separate_2array, sample_separate_darray)
from .errors import ExchangeableError, SizeError, ValidationError
from .features import allocation_from_paintbox, ibp_sample, ibp_stick_breaking
from .graphons import AnalyticGraphon, parse_graphon_literal, require_symmetric
from .limits import (MOTIFS, convergence_experiment, cut_distance, delta_cut_upper,
                     empirical_graphon, hom_density_graphon, regularity_partition, write_csv)
from .limits.cutnorm import REFINEMENT_LIMIT, as_step
from .models import (EigenParams, IrmParams, LfrmParams, beta_psi, bjr_sample, eigenmodel_sample,
                     irm_sample, lfrm_sample, mondrian_relational_sample, mondrian_sample)
from .partitions import PaintboxParam, crp_sample, dp_stick_breaking, paintbox_sample
from .rng import RandomSource

EXIT_OK, EXIT_VALIDATION, EXIT_SIZE, EXIT_IO = 0, 2, 3, 4
SAMPLE_TARGETS = ("graph", "array2", "darray", "partition", "features", "irm", "lfrm",
                  "mondrian", "eigen", "bjr")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_VALIDATION, f"error: usage: {message}\n")


def _ints(text):
    try:
        return [int(t) for t in text.split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _floats(text):
    try:
        return [float(t) for t in text.split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _dim_partition(text):
    """'0,1|2' -> [[0, 1], [2]]."""
    return [_ints(part) for part in text.split("|")]


def _u64(text):
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer, got {text}")
    return v


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k != "func"}


class _Output:
    """Writes named artifacts into ``--out`` or, without it, to stdout."""

    def __init__(self, args):
        self.dir = Path(args.out) if args.out else None
        self.config = _config(args)
        if self.dir is not None:
            self.dir.mkdir(parents=True, exist_ok=True)

    def header(self):
        return formats.config_header(self.config)

    def comment(self):
        return self.header()[2:].rstrip("\n")

    def emit(self, name: str, text: str):
        if self.dir is None:
            sys.stdout.write(text)
        else:
            path = self.dir / name
            formats.write_text(path, text)
            print(f"wrote {path}")


def _graphon(args):
    if args.graphon_file:
        return parse_graphon_literal("file:" + args.graphon_file)
    return parse_graphon_literal(args.graphon)


def _sources(args):
    root = RandomSource(args.seed)
    if args.trials == 1:
        return [root]
    return [root.spawn(t) for t in range(args.trials)]


def _graph_text(g, fmt, out):
    if fmt in (None, "edgelist"):
        return "txt", out.header() + formats.format_edgelist(g)
    if fmt == "csv":
        return "csv", out.header() + formats.format_array_csv(g.adjacency().astype(np.int8))
    if fmt == "grid":
        return "txt", out.header() + formats.format_graphon_grid(empirical_graphon(g))
    return "pgm", formats.format_pgm(empirical_graphon(g), out.comment())


def _array_text(X, fmt, out):
    if fmt == "pgm":
        return "pgm", formats.format_pgm(np.asarray(X, dtype=float), out.comment())
    if fmt not in (None, "csv"):
        raise ValidationError(f"format {fmt!r} is not available for arrays (use csv or pgm)")
    return "csv", out.header() + formats.format_array_csv(X)


def _latents(out, stem, arr):
    out.emit(f"{stem}.latents.csv", out.header() + formats.format_array_csv(np.asarray(arr)))


def cmd_sample(args) -> int:
    out = _Output(args)
    target = args.target
    sources = _sources(args)
    edges = []
    for t, src in enumerate(sources):
        stem = target if args.trials == 1 else f"{target}-{t}"
        if target in ("graph", "bjr"):
            w = _graphon(args)
            if target == "graph":
                g, U = sample_graph(w, args.n, src)
            else:
                g, U = bjr_sample(w, args.n, src, return_latents=True)
            edges.append(g.num_edges)
            ext, text = _graph_text(g, args.format, out)
            out.emit(f"{stem}.{ext}", text)
            if args.emit_latents:
                _latents(out, stem, U)
        elif target == "array2":
            w = _graphon(args)

            def f(ui, uj, uij):
                return (uij < w(ui, uj)).astype(np.int8)

            X = (sample_separate_2array(f, args.n, args.m or args.n, src) if args.mode == "separate"
                 else sample_joint_2array(f, args.n, src))
            ext, text = _array_text(X, args.format, out)
            out.emit(f"{stem}.{ext}", text)
        elif target == "darray":
            shape = args.shape or [args.n] * args.d
            d = len(shape)

            def f(*u):
                # P{X_k = 1} = mean of the first-order latents; the top-level latent decides
                return (u[-1] < sum(u[:d]) / d).astype(np.int8)

            if args.mode == "joint":
                X = sample_joint_darray(f, d, shape, src)
            elif args.mode == "separate":
                X = sample_separate_darray(f, d, shape, src)
            else:
                if args.pi is None:
                    raise ValidationError("--mode pi needs --pi, e.g. '0,1|2'")
                X = sample_pi_darray(f, args.pi, shape, src)
            out.emit(f"{stem}.csv", out.header() + formats.format_array_csv(X))
        elif target == "partition":
            if args.model == "crp":
                p = crp_sample(args.n, args.c, src)
            elif args.model == "paintbox":
                if args.theta is None:
                    raise ValidationError("--model paintbox needs --theta s1,s2,...")
                p = paintbox_sample(PaintboxParam(tuple(args.theta)), args.n, src)
            else:
                sticks = dp_stick_breaking(args.alpha, args.tail_eps, src.spawn(0))
                p = paintbox_sample(PaintboxParam.from_weights(sticks.weights), args.n, src)
            out.emit(f"{stem}.txt", out.header() + formats.format_partition(p))
        elif target == "features":
            if args.model == "ibp":
                fa = ibp_sample(args.n, args.gamma, src)
            else:
                pb = ibp_stick_breaking(args.alpha, args.tail_eps, src.spawn(0))
                fa = allocation_from_paintbox(pb, args.n, src)
            out.emit(f"{stem}.txt", out.header() + formats.format_features(fa))
        elif target == "irm":
            s = irm_sample(args.n, args.m or args.n,
                           IrmParams(args.c, args.c_col, args.beta_a, args.beta_b), src,
                           joint=args.mode == "joint")
            ext, text = _array_text(s.X, args.format, out)
            out.emit(f"{stem}.{ext}", text)
            if args.emit_latents:
                out.emit(f"{stem}.rows.txt", out.header() + formats.format_partition(s.rows))
                out.emit(f"{stem}.cols.txt", out.header() + formats.format_partition(s.cols))
                out.emit(f"{stem}.theta.csv", out.header() + formats.format_array_csv(s.theta))
        elif target == "lfrm":
            s = lfrm_sample(args.n, args.m or args.n,
                            LfrmParams(args.gamma, args.gamma_col, args.weight_sd, args.link), src)
            ext, text = _array_text(s.X, args.format, out)
            out.emit(f"{stem}.{ext}", text)
            if args.emit_latents:
                out.emit(f"{stem}.rows.txt", out.header() + formats.format_features(s.rows))
                out.emit(f"{stem}.cols.txt", out.header() + formats.format_features(s.cols))
                out.emit(f"{stem}.weights.csv", out.header() + formats.format_array_csv(s.weights))
        elif target == "mondrian":
            if args.n:
                s = mondrian_relational_sample(args.budget, beta_psi(args.beta_a, args.beta_b),
                                               args.n, src)
                ext, text = _array_text(s.X, args.format, out)
                out.emit(f"{stem}.{ext}", text)
                if args.emit_latents:
                    out.emit(f"{stem}.floorplan.txt",
                             out.header() + formats.format_floorplan(s.floorplan.rectangles, s.psi))
                    _latents(out, stem, s.U)
            else:
                fp = mondrian_sample(args.budget, (0.0, 1.0, 0.0, 1.0), src)
                out.emit(f"{stem}.txt", out.header() + formats.format_floorplan(fp.rectangles))
        elif target == "eigen":
            s = eigenmodel_sample(args.n, EigenParams(args.d, args.noise_mean, args.noise_var,
                                                      args.link or "probit", args.scale), src)
            ext, text = _array_text(s.X, args.format, out)
            out.emit(f"{stem}.{ext}", text)
            if args.emit_latents:
                out.emit(f"{stem}.embeddings.csv", out.header() + formats.format_array_csv(s.embeddings))
                out.emit(f"{stem}.lambda.csv", out.header() + formats.format_array_csv(s.Lambda))
    if edges and out.dir is not None:
        print(f"mean_edges {formats.real(np.mean(edges))}")
    return EXIT_OK


def _distance_input(text, resolution):
    """Graphon literal, or ``file:`` pointing at either a grid or an edge list."""
    if text.startswith("file:"):
        path = text[len("file:"):]
        body = Path(path).read_text()
        first = next((ln for ln in body.splitlines() if not ln.startswith("#")), "")
        if first.startswith("graph "):
            return empirical_graphon(formats.parse_edgelist(body, path))
        return formats.parse_graphon_grid(body, path)
    w = parse_graphon_literal(text)
    if isinstance(w, AnalyticGraphon) and w.family == "min":
        return w.to_step(resolution)
    return as_step(w)


def cmd_distance(args) -> int:
    a = _distance_input(args.first, args.resolution)
    b = _distance_input(args.second, args.resolution)
    try:
        d = cut_distance(a, b, restarts=args.restarts, rng=RandomSource(args.seed).spawn(0),
                         limit=args.limit)
        delta = delta_cut_upper(a, b, effort=args.effort, rng=RandomSource(args.seed).spawn(1),
                                limit=args.limit)
    except SizeError as exc:
        raise SizeError(f"{exc}; rerun with a larger --limit (the solver turns heuristic above 22 blocks)") from None
    lines = [formats.config_header(_config(args)).rstrip("\n"),
             f"d_cut {formats.real(d.value)} {'exact' if d.exact else 'heuristic'}",
             f"delta_cut_upper {formats.real(delta.value)} "
             f"{'exhaustive' if delta.exhaustive else 'local-search'} "
             f"{'exact' if delta.exact_norm else 'heuristic'}",
             "motif t_first t_second"]
    for name, F in MOTIFS.items():
        lines.append(f"{name} {formats.real(hom_density_graphon(F, a))} "
                     f"{formats.real(hom_density_graphon(F, b))}")
    print("\n".join(lines))
    return EXIT_OK


def cmd_converge(args) -> int:
    w = _graphon(args)
    require_symmetric(w)
    src = RandomSource(args.seed)
    rows = convergence_experiment(w, args.sizes, args.motifs, args.trials, src,
                                  cut_trials=args.cut_trials)
    out = _Output(args)
    buf = io.StringIO()
    buf.write(out.header())
    write_csv(rows, buf)
    out.emit("converge.csv", buf.getvalue())
    if args.frames:
        if out.dir is None:
            raise ValidationError("--frames needs --out")
        for idx, n in enumerate(args.sizes):
            g, U = sample_graph(w, n, src.spawn(idx).spawn(0))
            order = np.argsort(U, kind="stable")
            out.emit(f"frame-{n}.pgm", formats.format_pgm(g.adjacency()[np.ix_(order, order)].astype(float),
                                                  out.comment()))
    return EXIT_OK


def cmd_regularity(args) -> int:
    g = formats.read_edgelist(args.graph)
    res = regularity_partition(g, args.k, effort=args.effort, rng=RandomSource(args.seed))
    out = _Output(args)
    out.emit("partition.txt", out.header() + formats.format_partition(res.partition))
    out.emit("quotient.csv", out.header() + formats.format_array_csv(res.quotient.p))
    print(f"achieved {formats.real(res.achieved)} {'exact' if res.exact else 'heuristic'}")
    print(f"certified_upper {formats.real(res.certified_upper)}")
    print(f"bound {formats.real(res.bound)}")
    print(f"within_bound {'true' if res.within_bound else 'false'}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_u64, default=0)
    common.add_argument("--out", default=None, help="output directory (default: stdout)")
    common.add_argument("--format", choices=("csv", "pgm", "edgelist", "grid"), default=None)

    p = _Parser(prog="exchangeable", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("sample", parents=[common], help="draw exchangeable structures")
    s.add_argument("target", choices=SAMPLE_TARGETS)
    s.add_argument("--trials", type=int, default=1)
    s.add_argument("--emit-latents", action="store_true")
    s.add_argument("--graphon", default="min", help="const:<p>, min or file:<path>")
    s.add_argument("--graphon-file", default=None)
    s.add_argument("--n", type=int, default=10)
    s.add_argument("--m", type=int, default=None, help="columns for rectangular arrays")
    s.add_argument("--d", type=int, default=2, help="array dimension or embedding dimension")
    s.add_argument("--shape", type=_ints, default=None)
    s.add_argument("--mode", choices=("joint", "separate", "pi"), default="joint")
    s.add_argument("--pi", type=_dim_partition, default=None, help="dimension classes, e.g. '0,1|2'")
    s.add_argument("--model", choices=("crp", "paintbox", "dp", "ibp", "stick"), default=None)
    s.add_argument("--c", type=float, default=1.0, help="CRP concentration (rows)")
    s.add_argument("--c-col", type=float, default=1.0)
    s.add_argument("--theta", type=_floats, default=None, help="paint-box lengths")
    s.add_argument("--alpha", type=float, default=1.0)
    s.add_argument("--tail-eps", type=float, default=1e-6)
    s.add_argument("--gamma", type=float, default=1.0)
    s.add_argument("--gamma-col", type=float, default=1.0)
    s.add_argument("--beta-a", type=float, default=1.0)
    s.add_argument("--beta-b", type=float, default=1.0)
    s.add_argument("--weight-sd", type=float, default=1.0)
    s.add_argument("--link", choices=("logistic", "probit"), default=None)
    s.add_argument("--budget", type=float, default=1.0)
    s.add_argument("--noise-mean", type=float, default=0.0)
    s.add_argument("--noise-var", type=float, default=1.0)
    s.add_argument("--scale", type=float, default=1.0)
    s.set_defaults(func=cmd_sample)

    d = sub.add_parser("distance", parents=[common], help="cut distance, delta upper bound, motif fingerprints")
    d.add_argument("first")
    d.add_argument("second")
    d.add_argument("--effort", type=int, default=10_000)
    d.add_argument("--restarts", type=int, default=50)
    d.add_argument("--resolution", type=int, default=64, help="grid for the min family")
    d.add_argument("--limit", type=int, default=REFINEMENT_LIMIT, help="largest common refinement")
    d.set_defaults(func=cmd_distance)

    c = sub.add_parser("converge", parents=[common], help="motif and cut convergence experiment")
    c.add_argument("--graphon", default="min")
    c.add_argument("--graphon-file", default=None)
    c.add_argument("--sizes", type=_ints, default=[25, 50, 100, 200])
    c.add_argument("--motifs", type=lambda t: t.split(","), default=["K2"])
    c.add_argument("--trials", type=int, default=200)
    c.add_argument("--cut-trials", type=int, default=50)
    c.add_argument("--frames", action="store_true", help="write sorted empirical graphons as PGM")
    c.set_defaults(func=cmd_converge)

    r = sub.add_parser("regularity", parents=[common], help="weak-regularity partition of a graph")
    r.add_argument("graph", help="edge-list file")
    r.add_argument("--k", type=int, required=True)
    r.add_argument("--effort", type=int, default=200)
    r.set_defaults(func=cmd_regularity)
    return p


def _defaults(args):
    if args.command == "sample":
        if args.model is None:
            args.model = "ibp" if args.target == "features" else "crp"
        allowed = {"partition": ("crp", "paintbox", "dp"), "features": ("ibp", "stick")}
        if args.target in allowed and args.model not in allowed[args.target]:
            raise ValidationError(f"--model {args.model} does not apply to {args.target}; "
                                  f"choose from {', '.join(allowed[args.target])}")
        if args.target == "lfrm" and args.link is None:
            args.link = "logistic"
        if args.trials < 1:
            raise ValidationError(f"--trials must be positive, got {args.trials}")
    return args


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(_defaults(args))
    except SizeError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except ExchangeableError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: io: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
