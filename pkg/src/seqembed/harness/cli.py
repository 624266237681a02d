"""Command line front end.

Exit codes: 0 success, 1 negative result (absent, obstruction, pipeline
failure, invalid map), 2 invalid input, 3 search timeout.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from ..embed.edits import parity_obstruction
from ..embed.oracle import check_embedding, embed_backtracking
from ..embed.pipeline import PipelineParams, embed_pipeline
from ..errors import (InsufficientGadgets, InvalidInput, PipelineFailed, SearchTimeout, SeqEmbedError,
                      Stuck)
from ..gadgets import build_bounded_realization, verify_bounded_structure
from ..graph import SimpleGraph, format_edge_list, parse_edge_list
from ..sequences import realize_graphic
from ..stars import star_decompose
from ..unbalanced import UnbalancedBipartiteSeq, decompose_unbalanced, union_graph
from .experiment import MODES, ExperimentConfig, run_experiment, summarize

EXIT_OK, EXIT_NEGATIVE, EXIT_INVALID, EXIT_TIMEOUT = 0, 1, 2, 3


def _load_json(arg: str):
    """Inline JSON, or the contents of a file when ``arg`` names one."""
    p = Path(arg)
    text = p.read_text() if p.is_file() else arg
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{arg}: not valid JSON ({exc.msg})") from exc


def _load_graph(path: str) -> SimpleGraph:
    try:
        return parse_edge_list(Path(path).read_text())
    except OSError as exc:
        raise InvalidInput(f"cannot read graph {path}: {exc}") from exc


def _load_seq(arg: str, q: int):
    """A JSON list is a plain sequence; an object with "s" and "t" is an unbalanced one."""
    raw = _load_json(arg)
    if isinstance(raw, list) and all(isinstance(x, int) for x in raw):
        return raw
    if isinstance(raw, dict) and {"s", "t"} <= set(raw):
        return UnbalancedBipartiteSeq(tuple(raw["s"]), tuple(raw["t"]), int(raw.get("q", q)))
    raise InvalidInput("sequence must be a JSON list of integers or an object with 's' and 't'")


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_realize(args) -> int:
    seq = _load_seq(args.seq, args.q)
    if args.mode == "unbalanced":
        if not isinstance(seq, UnbalancedBipartiteSeq):
            raise InvalidInput("unbalanced mode needs an object with 's' and 't'")
        comps = decompose_unbalanced(seq, args.max_degree, merge=args.merge)
        g = union_graph(comps, seq.n)
        report = {
            "components": len(comps),
            "largest": max((c.size for c in comps), default=0),
            "degrees_match": g.degrees() == seq.degrees(),
            "q_unbalanced": all(args.q * len(c.small) <= len(c.large) for c in comps),
        }
        ok = report["degrees_match"]
    else:
        if isinstance(seq, UnbalancedBipartiteSeq):
            raise InvalidInput("gadget mode needs a plain sequence")
        try:
            r = build_bounded_realization(seq, args.max_degree)
        except InsufficientGadgets as exc:
            print(json.dumps({"error": str(exc)}), file=sys.stderr)
            return EXIT_NEGATIVE
        g = r.graph
        cert = verify_bounded_structure(r, seq)
        report = cert.as_dict()
        ok = cert.ok
    _emit(format_edge_list(g), args.out)
    print(json.dumps(report, sort_keys=True), file=sys.stderr if not args.out else sys.stdout)
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_stars(args) -> int:
    g = _load_graph(args.graph)
    try:
        dec = star_decompose(g, args.q)
    except Stuck as exc:
        print(json.dumps({"stuck": exc.vertex}))
        return EXIT_NEGATIVE
    _emit(json.dumps({"q": dec.q, "stars": [{"center": s.center, "leaves": s.leaves} for s in dec.stars]},
                     indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_embed(args) -> int:
    host = _load_graph(args.host)
    seq = _load_seq(args.seq, args.q)
    if args.oracle:
        if isinstance(seq, UnbalancedBipartiteSeq):
            pattern = union_graph(decompose_unbalanced(seq, args.max_degree, merge="minimal"), seq.n)
        else:
            pattern = realize_graphic(seq)
        found = embed_backtracking(pattern, host, args.budget)
        if found is None:
            verdict = {"result": "absent"}
            if not isinstance(seq, UnbalancedBipartiteSeq) and parity_obstruction(seq, host):
                verdict["parity_obstruction"] = True
            print(json.dumps(verdict))
            return EXIT_NEGATIVE
        payload = {"pattern": [list(e) for e in pattern.edges()], "map": found.as_list(pattern.n)}
    else:
        params = PipelineParams(cluster_size=args.cluster_size, density=args.density, eta=args.eta,
                                seed=args.seed, slack=args.slack, node_budget=args.budget,
                                max_degree=args.max_degree)
        try:
            res = embed_pipeline(host, seq, args.q, params)
        except PipelineFailed as exc:
            print(json.dumps({"result": "failed", "stage": exc.stage, "reason": str(exc.cause)}))
            return EXIT_NEGATIVE
        payload = {"pattern": [list(e) for e in res.pattern.edges()],
                   "map": res.embedding.as_list(res.pattern.n), "stages": res.stages}
    _emit(json.dumps(payload) + "\n", args.out)
    return EXIT_OK


def cmd_check(args) -> int:
    host = _load_graph(args.host)
    pattern = _load_graph(args.pattern)
    raw = _load_json(args.map)
    if isinstance(raw, dict) and "map" in raw:
        raw = raw["map"]
    if isinstance(raw, list):
        mapping = dict(enumerate(raw))
    elif isinstance(raw, dict):
        mapping = {int(k): v for k, v in raw.items()}
    else:
        raise InvalidInput("map must be a JSON list or object")
    ok = check_embedding(pattern, host, mapping)
    print("valid" if ok else "invalid")
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_experiment(args) -> int:
    if args.config:
        cfg = ExperimentConfig.from_json(args.config)
        if args.out:
            cfg.out = args.out
    else:
        if args.mode is None or args.n is None:
            raise InvalidInput("experiment needs --config or both --mode and --n")
        cfg = ExperimentConfig(mode=args.mode, n=args.n, trials=args.trials, seed=args.seed, q=args.q,
                               D=args.max_degree or 3, eta=args.eta, d=args.density, m=args.cluster_size,
                               min_frac=args.min_frac, slack=args.slack, oracle_cap=args.oracle_cap,
                               node_budget=args.budget, edits=args.edits, timing=args.timing, out=args.out)
    records = run_experiment(cfg)
    print(json.dumps(summarize(records), indent=2, sort_keys=True))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="seqembed", description="Embed bounded-degree sequences into dense graphs.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--q", type=int, default=1)
        p.add_argument("--max-degree", type=int, default=None)
        p.add_argument("--out", default=None)

    p = sub.add_parser("realize", help="realize a sequence with small components")
    p.add_argument("seq", help="JSON list, or object with 's' and 't' (file path or inline)")
    p.add_argument("--mode", choices=("gadget", "unbalanced"), default="gadget")
    p.add_argument("--merge", choices=("threshold", "minimal"), default="threshold")
    common(p)
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("stars", help="star decomposition of a graph")
    p.add_argument("graph", help="edge-list file")
    common(p)
    p.set_defaults(func=cmd_stars)

    def embed_flags(p):
        p.add_argument("--eta", type=float, default=0.1)
        p.add_argument("--density", type=float, default=0.3)
        p.add_argument("--cluster-size", type=int, default=None)
        p.add_argument("--slack", type=int, default=0)
        p.add_argument("--budget", type=int, default=10 ** 6)

    p = sub.add_parser("embed", help="embed a sequence into a host")
    p.add_argument("seq")
    p.add_argument("host", help="edge-list file")
    p.add_argument("--oracle", action="store_true", help="exact search instead of the pipeline")
    common(p)
    embed_flags(p)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("experiment", help="run a seeded campaign and write a CSV")
    p.add_argument("--config", default=None, help="JSON config file")
    p.add_argument("--mode", choices=MODES, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--min-frac", type=float, default=None)
    p.add_argument("--oracle-cap", type=int, default=40)
    p.add_argument("--edits", type=int, default=1)
    p.add_argument("--timing", action="store_true")
    common(p)
    embed_flags(p)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("check", help="verify an embedding map")
    p.add_argument("pattern", help="edge-list file")
    p.add_argument("host", help="edge-list file")
    p.add_argument("map", help="JSON list or object (file path or inline)")
    p.set_defaults(func=cmd_check)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except SearchTimeout as exc:
        print(f"timeout: {exc}", file=sys.stderr)
        return EXIT_TIMEOUT
    except InvalidInput as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except SeqEmbedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE


if __name__ == "__main__":
    sys.exit(main())
