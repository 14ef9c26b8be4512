"""Batch verification over all small connected graphs.

Each record is computed by a pure function of the graph, so records can be
produced by a process pool and merged back in enumeration order.  Output is
byte-identical across runs unless timings are requested.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .classifier import CONTRACTIBLE, classify
from .errors import SchemeMinorError
from .graph import is_bipartite
from .graphio import from_graph6, to_graph6
from .minors import check_minor_model
from .mprime import bipartite_witness, build_induced_model, check_inducing_witness, decide_mprime_contractible, verify_certificate
from .smallgraphs import enumerate_connected_graphs

# graphs up to this size must all be M'-contractible
MPRIME_CLAIM_MAX_N = 6


@dataclass
class AtlasReport:
    n_range: tuple
    records: list
    summary: dict
    failures: list = field(default_factory=list)

    def jsonl(self) -> str:
        return "".join(json.dumps(r, sort_keys=True) + "\n" for r in self.records)

    def summary_json(self) -> str:
        body = dict(self.summary)
        body["n_range"] = list(self.n_range)
        body["failures"] = self.failures
        return json.dumps(body, sort_keys=True, indent=2) + "\n"

    def write(self, path: str) -> str:
        """Write records to ``path`` and the summary next to it; returns the summary path."""
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.jsonl())
        summary_path = path + ".summary.json"
        with open(summary_path, "w", encoding="utf-8") as fh:
            fh.write(self.summary_json())
        return summary_path


def worker_count() -> int:
    env = os.environ.get("SCHEME_MINOR_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def atlas_record(encoding: str, effort: str = "deep", timings: bool = False) -> dict:
    """Decide, verify and classify one graph given in graph6."""
    g = from_graph6(encoding)
    rec: dict = {"graph6": encoding, "n": g.n, "m": g.m, "bipartite": is_bipartite(g) is not None}
    problems = []
    start = time.perf_counter()
    try:
        dec = decide_mprime_contractible(g)
        cert = dec.certificate
        rec["mprime_contractible"] = dec.contractible
        rec["certificate_kind"] = cert.kind
        rec["certificate"] = cert.to_dict()
        bad = verify_certificate(g, cert)
        rec["certificate_verified"] = not bad
        problems += [f"certificate: {p}" for p in bad]
        if g.n <= MPRIME_CLAIM_MAX_N and not dec.contractible:
            problems.append("graph is not M'-contractible")
    except SchemeMinorError as exc:
        problems.append(f"decision failed: {exc}")
        dec = None
    if rec["bipartite"]:
        wit = bipartite_witness(g)
        bad = check_inducing_witness(g, wit)
        if not bad:
            bad = [v.message for v in check_minor_model(build_induced_model(g, wit)).violations]
        rec["bipartite_witness"] = wit.to_dict()
        problems += [f"bipartite witness: {p}" for p in bad]
    mid = time.perf_counter()
    try:
        verdict = classify(g, effort)
        rec["classifier"] = {"status": verdict.status, "rule": verdict.rule, "partial": verdict.partial}
        if verdict.status == CONTRACTIBLE and dec is not None and not dec.contractible:
            problems.append(f"{verdict.rule} says contractible but M'(H) has no rooted model")
    except SchemeMinorError as exc:
        problems.append(f"classifier failed: {exc}")
    except AssertionError as exc:
        problems.append(f"classifier invariant: {exc}")
    if timings:
        rec["timings"] = {"mprime_s": round(mid - start, 6), "classify_s": round(time.perf_counter() - mid, 6)}
    rec["failures"] = problems
    return rec


def verify_atlas_claims(
    n_max: int,
    n_min: int = 1,
    bipartite_only: bool = False,
    effort: str = "deep",
    workers: Optional[int] = None,
    timings: bool = False,
) -> AtlasReport:
    graphs = []
    for n in range(n_min, n_max + 1):
        for g in enumerate_connected_graphs(n):
            if bipartite_only and is_bipartite(g) is None:
                continue
            graphs.append(to_graph6(g))
    workers = worker_count() if workers is None else max(1, workers)
    args = [(e, effort, timings) for e in graphs]
    if workers == 1 or len(graphs) < 2:
        records = [atlas_record(*a) for a in args]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            # map preserves input order, so the merge is deterministic
            records = list(pool.map(_record_star, args, chunksize=4))

    failures = [{"graph6": r["graph6"], "problems": r["failures"]} for r in records if r["failures"]]
    per_n: dict = {}
    kinds: dict = {}
    statuses: dict = {}
    for r in records:
        per_n[str(r["n"])] = per_n.get(str(r["n"]), 0) + 1
        k = r.get("certificate_kind", "error")
        kinds[k] = kinds.get(k, 0) + 1
        s = r.get("classifier", {}).get("status", "error")
        statuses[s] = statuses.get(s, 0) + 1
    summary = {
        "graphs": len(records),
        "graphs_per_n": per_n,
        "mprime_contractible": sum(1 for r in records if r.get("mprime_contractible")),
        "certificate_kinds": kinds,
        "classifier_status": statuses,
        "bipartite_only": bipartite_only,
        "effort": effort,
    }
    return AtlasReport((n_min, n_max), records, summary, failures)


def _record_star(args: tuple) -> dict:
    return atlas_record(*args)


__all__ = ["AtlasReport", "atlas_record", "verify_atlas_claims", "enumerate_connected_graphs", "worker_count"]
