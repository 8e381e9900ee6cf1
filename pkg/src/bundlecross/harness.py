"""End-to-end runs: bundle a drawing, and batch verification over generated suites."""

from __future__ import annotations

import json
import logging
import math
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

from .arrangement import (
    Arrangement,
    InstanceError,
    build_planarization,
    split_components,
    validate_pseudosegments,
)
from .bipartite import bipartite_pipeline
from .generators import GeneratorSpec, bilaminar_cells, generate
from .net import DualNet, detect_toothed_holes, net_from_arrangement
from .oracle import (
    OracleTooLarge,
    OrthoPolygon,
    brute_force_min_rectangulation,
    oracle_cap,
    ortho_exact,
    verify_inequalities,
)
from .rectangulation import (
    Rectangulation,
    build_gamma,
    extract_rectangulation,
    gamma_checks,
    greedy_rectangulate,
    random_order,
    to_bundling,
)

log = logging.getLogger(__name__)

METHODS = ("greedy", "bipartite", "exact")
NEGATIVE = {"ring", "loop", "lense"}


class InvalidDrawing(InstanceError):
    pass


@dataclass
class ComponentRun:
    net: DualNet
    rect: Rectangulation
    t: int
    bundles: tuple[tuple[int, ...], ...]


@dataclass
class BundlingResult:
    components: list[ComponentRun]

    @property
    def bundles(self) -> list[list[int]]:
        return sorted(list(b) for c in self.components for b in c.bundles)

    @property
    def R(self) -> int:
        return sum(c.rect.R for c in self.components)

    @property
    def S(self) -> int:
        return sum(c.rect.S for c in self.components)

    @property
    def H(self) -> int:
        return sum(c.rect.H for c in self.components)

    @property
    def t(self) -> int:
        return sum(c.t for c in self.components)

    def to_dict(self) -> dict:
        return {"bundles": self.bundles, "R": self.R, "S": self.S, "H": self.H, "t": self.t}


def check_drawing(arr: Arrangement) -> list[str]:
    """Validation messages over all components; empty for pseudosegments."""
    out = []
    for comp in split_components(arr):
        out += validate_pseudosegments(build_planarization(comp)).messages()
    return out


def rectangulate(
    n: DualNet,
    method: str = "greedy",
    order: str = "id",
    seed: int = 0,
    cap: Optional[int] = None,
) -> Rectangulation:
    vorder = random_order(n, seed) if order == "random" else None
    if method == "greedy":
        return extract_rectangulation(n, greedy_rectangulate(n, (), vorder))
    if method == "bipartite":
        return bipartite_pipeline(n, vorder).rect
    if method == "exact":
        opt = brute_force_min_rectangulation(n, cap)
        return opt.witness
    raise ValueError(f"unknown method {method!r}")


def run_bundling(
    arr: Arrangement,
    method: str = "greedy",
    order: str = "id",
    seed: int = 0,
    cap: Optional[int] = None,
    validate: bool = True,
) -> BundlingResult:
    """Bundle every connected component and merge the results.

    Uncrossed strings are dropped; a drawing that is not a family of
    pseudosegments raises :class:`InvalidDrawing` unless ``validate`` is off.
    """
    if validate:
        msgs = check_drawing(arr)
        if msgs:
            raise InvalidDrawing("; ".join(msgs))
    runs = []
    for comp in split_components(arr):
        n = net_from_arrangement(comp)
        if n.n_squares == 0:
            continue
        rect = rectangulate(n, method, order, seed, cap)
        b = to_bundling(comp, n, rect)
        runs.append(ComponentRun(n, rect, detect_toothed_holes(n), b.bundles))
    return BundlingResult(runs)


# ---------------------------------------------------------------------------
# Batch harness
# ---------------------------------------------------------------------------

DEFAULT_CONFIG = {
    "suites": [{"family": "circular", "sizes": [[n] for n in range(2, 9)], "seeds": 143}],
    "oracle_cap": None,
    "workers": 1,
    "order": "id",
}


@dataclass
class InstanceRecord:
    name: str
    family: str
    status: str  # ok | rejected | fail | error
    expected_reject: bool = False
    squares: int = 0
    R: int = 0
    S: int = 0
    H: int = 0
    t: int = 0
    bundles: int = 0
    R_opt: Optional[int] = None
    S_opt: Optional[int] = None
    R_bip: Optional[int] = None
    S_bip: Optional[int] = None
    ortho_R: Optional[int] = None
    failures: list[str] = field(default_factory=list)

    TSV_FIELDS = ("name", "family", "status", "squares", "R", "S", "H", "t", "bundles",
                  "R_opt", "S_opt", "R_bip", "S_bip", "ortho_R", "failures")

    def tsv(self) -> str:
        d = asdict(self)
        d["failures"] = ",".join(self.failures)
        return "\t".join("" if d[k] is None else str(d[k]) for k in self.TSV_FIELDS)


def _seeds(x) -> list[int]:
    return list(range(x)) if isinstance(x, int) else list(x)


def expand_config(config: dict) -> list[GeneratorSpec]:
    specs = []
    for suite in config.get("suites", []):
        sizes = suite.get("sizes", [[]])
        for size in sizes:
            for seed in _seeds(suite.get("seeds", [0])):
                specs.append(GeneratorSpec(suite["family"], tuple(size), seed, dict(suite.get("options", {}))))
    return specs


def spec_name(spec: GeneratorSpec) -> str:
    size = "x".join(map(str, spec.size))
    opts = "".join(f"+{k}" for k, v in sorted(spec.options.items()) if v)
    return f"{spec.family}{opts}({size})#{spec.seed}"


def run_instance(spec: GeneratorSpec, cap: Optional[int] = None, order: str = "id") -> InstanceRecord:
    rec = InstanceRecord(spec_name(spec), spec.family, "ok", spec.family in NEGATIVE)
    try:
        _run_instance(spec, cap, order, rec)
    except Exception as exc:  # keep going, report per instance
        rec.status = "error"
        rec.failures.append(f"{type(exc).__name__}: {exc}")
        log.debug("%s\n%s", rec.name, traceback.format_exc())
    if rec.failures and rec.status == "ok":
        rec.status = "fail"
    return rec


def _run_instance(spec: GeneratorSpec, cap: Optional[int], order: str, rec: InstanceRecord) -> None:
    arr = generate(spec)
    msgs = check_drawing(arr)
    if rec.expected_reject:
        rec.status = "rejected" if msgs else "fail"
        if not msgs:
            rec.failures.append("forbidden drawing accepted")
        return
    if msgs:
        rec.failures.append("valid drawing rejected: " + "; ".join(msgs))
        return
    comps = split_components(arr)
    colored = arr.is_colored and arr.is_bipartite()
    for comp in comps:
        n = net_from_arrangement(comp)
        rec.squares += n.n_squares
        if n.n_squares == 0:
            continue
        t = detect_toothed_holes(n)
        rec.t += t
        if spec.family == "circular" and t:
            rec.failures.append("toothed hole in circular drawing")
        g = rectangulate(n, "greedy", order, spec.seed)
        rec.R += g.R
        rec.S += g.S
        rec.H += g.H
        if g.R - g.S + g.H != 2:
            rec.failures.append("euler")
        gam = gamma_checks(build_gamma(n, g), g)
        if not gam.ok:
            rec.failures.append("gamma")
        nb = to_bundling(comp, n, g).count
        rec.bundles += nb
        bip = None
        if colored:
            bip = rectangulate(n, "bipartite", order, spec.seed)
            rec.R_bip = (rec.R_bip or 0) + bip.R
            rec.S_bip = (rec.S_bip or 0) + bip.S
        try:
            opt = brute_force_min_rectangulation(n, cap)
        except OracleTooLarge:
            continue
        rec.R_opt = (rec.R_opt or 0) + opt.R_opt
        rec.S_opt = (rec.S_opt or 0) + opt.S_opt
        rep = verify_inequalities(n, opt, g, nb, bip)
        rec.failures += [c.name for c in rep.failures()]
    if spec.family == "bilaminar" and len(comps) == 1 and rec.R_opt is not None:
        rec.ortho_R = ortho_exact(OrthoPolygon(bilaminar_cells(spec.size[0], spec.seed))).R
        if rec.ortho_R != rec.R_opt:
            rec.failures.append("ortho_exact!=R_opt")


@dataclass
class HarnessReport:
    records: list[InstanceRecord]

    @property
    def failures(self) -> list[InstanceRecord]:
        return [r for r in self.records if r.status in ("fail", "error")]

    @property
    def ok(self) -> bool:
        return not self.failures

    def worst(self) -> dict[str, Optional[float]]:
        def mx(pairs):
            vals = [a / b for a, b in pairs if a is not None and b]
            return max(vals) if vals else None

        rs = [r for r in self.records if r.status == "ok"]
        return {
            "R_greed/R_opt": mx((r.R, r.R_opt) for r in rs),
            "S_greed/S_opt": mx((r.S, r.S_opt) for r in rs),
            "bundles/(8R_opt+t)": mx((r.bundles, 8 * r.R_opt + r.t if r.R_opt else None) for r in rs),
            "S_bip/S_opt": mx((r.S_bip, r.S_opt) for r in rs),
            "R_bip/R_opt": mx((r.R_bip, r.R_opt) for r in rs),
        }

    def summary(self) -> str:
        counts: dict[str, int] = {}
        for r in self.records:
            counts[r.status] = counts.get(r.status, 0) + 1
        solved = sum(1 for r in self.records if r.R_opt is not None)
        lines = [
            f"instances: {len(self.records)}  " + "  ".join(f"{k}: {v}" for k, v in sorted(counts.items())),
            f"oracle-solved: {solved}",
        ]
        for k, v in self.worst().items():
            lines.append(f"worst {k}: {'n/a' if v is None else f'{v:.3f}'}")
        for r in self.failures[:20]:
            lines.append(f"FAIL {r.name}: {', '.join(r.failures)}")
        return "\n".join(lines)

    def tsv(self) -> str:
        return "\n".join(["\t".join(InstanceRecord.TSV_FIELDS)] + [r.tsv() for r in self.records])

    def to_dict(self) -> dict:
        w = self.worst()
        return {
            "ok": self.ok,
            "n_instances": len(self.records),
            "n_failures": len(self.failures),
            "worst": {k: (None if v is None or math.isnan(v) else v) for k, v in w.items()},
            "records": [asdict(r) for r in self.records],
        }


def _run_one(args) -> InstanceRecord:
    return run_instance(*args)


def run_harness(config: Optional[dict] = None) -> HarnessReport:
    config = {**DEFAULT_CONFIG, **(config or {})}
    cap = oracle_cap(config.get("oracle_cap"))
    order = config.get("order", "id")
    jobs = [(s, cap, order) for s in expand_config(config)]
    workers = int(config.get("workers") or 1)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            records = list(ex.map(_run_one, jobs, chunksize=8))
    else:
        records = [_run_one(j) for j in jobs]
    return HarnessReport(records)


def load_config(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
