"""Seeded experiment campaigns with a fixed-column CSV report.

CSV columns, in order (empty cell = not applicable):

    trial, seed, mode, host_n, host_min_degree, host_density,
    seq_length, seq_max_degree, stages, failed_stage, pipeline_ok,
    map_valid, oracle, obstruction, edits_used, wall_time

``stages`` lists the completed pipeline stages joined by ``|``; ``oracle`` is
one of ``embedded``, ``absent``, ``timeout``; ``wall_time`` is only filled
when timing is switched on, so that default runs are byte-identical.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import logging
import random
import time
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Optional

from ..embed.edits import embed_with_edits, parity_obstruction
from ..embed.oracle import check_embedding, embed_backtracking
from ..embed.pipeline import STAGES, PipelineParams, embed_pipeline
from ..errors import Infeasible, InvalidInput, PipelineFailed, SearchTimeout
from ..graph import SimpleGraph
from ..sequences import is_graphic, realize_graphic
from ..unbalanced import UnbalancedBipartiteSeq, decompose_unbalanced, union_graph
from .generators import (gen_bounded_graphic_seq, gen_host_min_degree, gen_host_with_odd_component,
                         gen_sharpness_host, gen_unbalanced_seq)

log = logging.getLogger(__name__)

MODES = ("thm13", "thm15", "sharpness", "parity", "edits")


@dataclass
class ExperimentConfig:
    mode: str
    n: int
    trials: int = 10
    seed: int = 0
    q: int = 1
    D: int = 3
    eta: float = 0.1
    d: float = 0.3
    m: Optional[int] = None
    min_frac: Optional[float] = None
    slack: int = 0
    oracle_cap: int = 40
    node_budget: int = 10 ** 6
    edits: int = 1
    timing: bool = False
    out: Optional[str] = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise InvalidInput(f"unknown mode {self.mode!r}; expected one of {', '.join(MODES)}")
        for name in ("n", "q", "D", "node_budget"):
            if getattr(self, name) < 1:
                raise InvalidInput(f"{name} must be positive")
        for name in ("trials", "slack", "oracle_cap", "edits"):
            if getattr(self, name) < 0:
                raise InvalidInput(f"{name} must be non-negative")
        if self.m is not None and self.m < 1:
            raise InvalidInput("m must be positive")
        for name in ("eta", "d"):
            if not 0 < getattr(self, name) < 1:
                raise InvalidInput(f"{name} must lie in (0, 1)")
        if self.min_frac is not None and not 0 < self.min_frac < 1:
            raise InvalidInput("min_frac must lie in (0, 1)")

    @property
    def host_min_frac(self) -> float:
        if self.min_frac is not None:
            return self.min_frac
        if self.mode == "thm15":
            return 1 / (self.q + 1) + self.eta
        return 0.5 + self.eta

    @classmethod
    def from_dict(cls, raw: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(raw) - known
        if unknown:
            raise InvalidInput(f"unknown config keys: {', '.join(sorted(unknown))}")
        return cls(**raw)

    @classmethod
    def from_json(cls, path) -> "ExperimentConfig":
        try:
            raw = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"{path}: {exc}") from exc
        if not isinstance(raw, dict):
            raise InvalidInput(f"{path}: config must be a JSON object")
        return cls.from_dict(raw)


@dataclass
class TrialRecord:
    trial: int
    seed: int
    mode: str
    host_n: int
    host_min_degree: int
    host_density: float
    seq_length: int
    seq_max_degree: int
    stages: list[str] = field(default_factory=list)
    failed_stage: Optional[str] = None
    pipeline_ok: bool = False
    map_valid: Optional[bool] = None
    oracle: Optional[str] = None
    obstruction: Optional[bool] = None
    edits_used: Optional[int] = None
    wall_time: Optional[float] = None


COLUMNS = [f.name for f in fields(TrialRecord)]


def trial_seed(base: int, trial: int) -> int:
    return base * 1_000_003 + trial


def _host_stats(host: SimpleGraph):
    return host.n, host.min_degree(), round(host.density(), 6)


def _oracle_verdict(pattern, host, budget) -> tuple[str, Optional[bool]]:
    try:
        found = embed_backtracking(pattern, host, budget)
    except SearchTimeout:
        return "timeout", None
    if found is None:
        return "absent", None
    return "embedded", check_embedding(pattern, host, found.mapping)


def _odd_sequence(n: int, max_degree: int, seed: int, attempts: int = 200) -> list[int]:
    """Graphic sequence with every entry odd and at most max_degree.

    Uniform odd entries are redrawn until graphic; all-ones is the fallback.
    """
    top = max_degree if max_degree % 2 else max_degree - 1
    if n % 2 or top < 1:
        raise Infeasible(f"no all-odd graphic sequence of length {n} with max degree {max_degree}")
    rng = random.Random(seed)
    odd = list(range(1, top + 1, 2))
    for _ in range(attempts):
        seq = [rng.choice(odd) for _ in range(n)]
        if is_graphic(seq):
            return seq
    return [1] * n


def run_trial(cfg: ExperimentConfig, trial: int) -> TrialRecord:
    seed = trial_seed(cfg.seed, trial)
    started = time.perf_counter()
    params = PipelineParams(cluster_size=cfg.m, density=cfg.d, eta=cfg.eta, seed=seed,
                            slack=cfg.slack, node_budget=cfg.node_budget, max_degree=cfg.D)
    mode = cfg.mode
    if mode == "sharpness":
        host = gen_sharpness_host(cfg.n)
        seq = [1] * cfg.n
    elif mode == "thm13":
        host = gen_host_min_degree(cfg.n, cfg.host_min_frac, seed)
        seq = gen_bounded_graphic_seq(cfg.n - cfg.slack, cfg.D, seed + 1)
    elif mode == "thm15":
        host = gen_host_min_degree(cfg.n, cfg.host_min_frac, seed)
        total = cfg.n - cfg.slack
        s = max(1, total // (cfg.q + 1))
        seq = gen_unbalanced_seq(s, total - s, cfg.q, cfg.D, seed + 1)
    elif mode == "parity":
        host = gen_host_with_odd_component(cfg.n, seed)
        seq = _odd_sequence(cfg.n, cfg.D, seed + 1)
    else:
        host = gen_host_min_degree(cfg.n, cfg.host_min_frac, seed)
        seq = gen_bounded_graphic_seq(cfg.n, cfg.D, seed + 1)

    if isinstance(seq, UnbalancedBipartiteSeq):
        seq_len, seq_max = seq.n, seq.max_degree
    else:
        seq_len, seq_max = len(seq), max(seq, default=0)
    hn, hmin, hdens = _host_stats(host)
    rec = TrialRecord(trial, seed, mode, hn, hmin, hdens, seq_len, seq_max)

    if mode == "edits":
        try:
            found = embed_with_edits(host, seq, cfg.q, cfg.edits, cfg.node_budget)
        except SearchTimeout:
            rec.oracle = "timeout"
        else:
            if found is None:
                rec.oracle = "absent"
            else:
                edited, emb = found
                rec.oracle = "embedded"
                rec.edits_used = edited.num_edges() - host.num_edges()
                rec.map_valid = check_embedding(realize_graphic(seq), edited, emb.mapping)
        if cfg.timing:
            rec.wall_time = round(time.perf_counter() - started, 4)
        return rec

    if mode == "parity":
        rec.obstruction = parity_obstruction(seq, host)

    try:
        res = embed_pipeline(host, seq, cfg.q, params)
    except PipelineFailed as exc:
        rec.stages = list(getattr(exc, "stages", []))
        rec.failed_stage = exc.stage
        if host.n <= cfg.oracle_cap:
            rec.oracle, valid = _oracle_verdict(_pattern_for(seq, cfg), host, cfg.node_budget)
            if valid is not None:
                rec.map_valid = valid
    else:
        rec.stages = list(res.stages)
        rec.pipeline_ok = True
        rec.map_valid = check_embedding(res.pattern, host, res.embedding.mapping)
        if mode == "parity" and host.n <= cfg.oracle_cap:
            rec.oracle = "embedded"
    if mode == "parity" and rec.obstruction and rec.oracle is None and host.n <= cfg.oracle_cap:
        rec.oracle, _ = _oracle_verdict(_pattern_for(seq, cfg), host, cfg.node_budget)
    if cfg.timing:
        rec.wall_time = round(time.perf_counter() - started, 4)
    return rec


def _pattern_for(seq, cfg: ExperimentConfig) -> SimpleGraph:
    if isinstance(seq, UnbalancedBipartiteSeq):
        return union_graph(decompose_unbalanced(seq, cfg.D, merge="minimal"), seq.n)
    return realize_graphic(seq)


def run_experiment(cfg: ExperimentConfig) -> list[TrialRecord]:
    """Run every trial in index order; write CSV and summary when ``cfg.out`` is set."""
    records = []
    for t in range(cfg.trials):
        rec = run_trial(cfg, t)
        log.info("trial %d: ok=%s failed=%s oracle=%s", t, rec.pipeline_ok, rec.failed_stage, rec.oracle)
        records.append(rec)
    if cfg.out:
        out = Path(cfg.out)
        try:
            out.parent.mkdir(parents=True, exist_ok=True)
            out.write_text(records_to_csv(records), newline="")
            summary_path(out).write_text(json.dumps(summarize(records), indent=2, sort_keys=True) + "\n")
        except OSError as exc:
            raise OSError(f"cannot write experiment output to {out}: {exc}") from exc
    return records


def summary_path(out: Path) -> Path:
    return out.with_name(out.stem + ".summary.json")


def summarize(records: list[TrialRecord]) -> dict:
    n = len(records)
    ok = sum(r.pipeline_ok for r in records)
    checked = [r for r in records if r.map_valid is not None]
    oracle: dict[str, int] = {}
    failed: dict[str, int] = {}
    for r in records:
        if r.oracle:
            oracle[r.oracle] = oracle.get(r.oracle, 0) + 1
        if r.failed_stage:
            failed[r.failed_stage] = failed.get(r.failed_stage, 0) + 1
    return {
        "trials": n,
        "pipeline_success": ok,
        "pipeline_success_rate": round(ok / n, 4) if n else None,
        "maps_checked": len(checked),
        "maps_valid": sum(bool(r.map_valid) for r in checked),
        "failed_stage": failed,
        "oracle": oracle,
        "obstructions": sum(bool(r.obstruction) for r in records),
    }


# CSV -----------------------------------------------------------------------

def _cell(name, value) -> str:
    if value is None:
        return ""
    if name == "stages":
        return "|".join(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _parse_bool(s: str) -> bool:
    if s not in ("true", "false"):
        raise InvalidInput(f"bad boolean cell {s!r}")
    return s == "true"


_PARSERS = {
    "trial": int, "seed": int, "mode": str, "host_n": int, "host_min_degree": int,
    "host_density": float, "seq_length": int, "seq_max_degree": int,
    "failed_stage": str, "pipeline_ok": _parse_bool, "map_valid": _parse_bool,
    "oracle": str, "obstruction": _parse_bool, "edits_used": int, "wall_time": float,
}


def records_to_csv(records: list[TrialRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in records:
        w.writerow([_cell(name, getattr(r, name)) for name in COLUMNS])
    return buf.getvalue()


def records_from_csv(text: str) -> list[TrialRecord]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != COLUMNS:
        raise InvalidInput("CSV header does not match the trial record columns")
    out = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(COLUMNS):
            raise InvalidInput(f"line {lineno}: expected {len(COLUMNS)} cells, got {len(row)}")
        kw = {}
        for name, cell in zip(COLUMNS, row):
            if name == "stages":
                kw[name] = cell.split("|") if cell else []
                if any(s not in STAGES for s in kw[name]):
                    raise InvalidInput(f"line {lineno}: unknown stage in {cell!r}")
            elif cell == "":
                if name == "pipeline_ok":
                    raise InvalidInput(f"line {lineno}: pipeline_ok is required")
                kw[name] = None
            else:
                try:
                    kw[name] = _PARSERS[name](cell)
                except ValueError as exc:
                    raise InvalidInput(f"line {lineno}: bad {name} cell {cell!r}") from exc
        out.append(TrialRecord(**kw))
    return out


def config_as_dict(cfg: ExperimentConfig) -> dict:
    return dataclasses.asdict(cfg)
