"""Batch experiment runner.

Subcommands: sweep (mechanism grid to CSV plus figure), ratio-convergence
(global-error ratio against its asymptote), check (cross-module invariant
verification), perturb (stdin-to-stdout release stream), plot-script
(standalone matplotlib script for an existing CSV).

Exit codes: 0 success, 1 usage error, 2 input/IO error, 3 invariant
violation. All output is a deterministic function of flags, config file,
seed, and input files.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import os
import sys
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .core import (
    LOSS,
    UTILITY,
    DiscreteDomain,
    PrivacyBudget,
    RandomSource,
    UtilityTable,
    load_utility_csv,
    validate_mechanism,
)
from .adapters import (
    IntervalSpec,
    equidistant_m,
    euclidean_loss_table,
    jaccard_utility_table,
    nearest_point,
)
from .closed_form import closed_form_m, global_ratio_limit
from .mechanisms import brr, brr_params, exponential, grr
from .metrics import (
    equidistant_q_global,
    global_expected_error,
    monte_carlo_q,
    per_priori_errors,
)
from .search import global_search

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_INVARIANT = 3

MECHANISM_CHOICES = ("grr", "brr", "exp")

SWEEP_COLUMNS = ["mechanism", "N", "epsilon", "m", "q_global", "q_loss", "ratio_to_grr"]
RATIO_COLUMNS = ["N", "epsilon", "ratio", "asymptote", "gap"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags; 2 is reserved for IO here
    def error(self, message):
        raise UsageError(message)


def _fmt(value) -> str:
    if value is None or value == "":
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".12g")


def parse_int_grid(text: str) -> List[int]:
    """Comma list of integers; items may be ranges START..END[:STEP]."""
    out: List[int] = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if ".." in item:
            span, _, step_text = item.partition(":")
            start_text, _, end_text = span.partition("..")
            try:
                start, end = int(start_text), int(end_text)
                step = int(step_text) if step_text else 1
            except ValueError:
                raise UsageError(f"bad integer range {item!r}")
            if step <= 0 or end < start:
                raise UsageError(f"bad integer range {item!r}")
            out.extend(range(start, end + 1, step))
        else:
            try:
                out.append(int(item))
            except ValueError:
                raise UsageError(f"bad integer {item!r}")
    if not out:
        raise UsageError(f"empty grid {text!r}")
    return out


def parse_float_grid(text: str) -> List[float]:
    """Comma list of decimals; items may be ranges START..END:STEP."""
    out: List[float] = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if ".." in item:
            span, _, step_text = item.partition(":")
            start_text, _, end_text = span.partition("..")
            try:
                start, end = float(start_text), float(end_text)
                step = float(step_text) if step_text else 0.0
            except ValueError:
                raise UsageError(f"bad decimal range {item!r}")
            if step <= 0 or end < start:
                raise UsageError(f"bad decimal range {item!r} (ranges need :STEP)")
            count = int(np.floor((end - start) / step + 1e-9)) + 1
            out.extend(start + i * step for i in range(count))
        else:
            try:
                out.append(float(item))
            except ValueError:
                raise UsageError(f"bad decimal {item!r}")
    if not out:
        raise UsageError(f"empty grid {text!r}")
    return out


def load_config(path: str) -> Dict[str, str]:
    """key=value lines; blank lines and # comments ignored."""
    values: Dict[str, str] = {}
    with open(path) as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            values[key.strip().replace("-", "_")] = value.strip()
    return values


def _resolve(args, config: Dict[str, str], key: str, default=None):
    """Flag value if given, else config file value, else default."""
    value = getattr(args, key, None)
    if value is not None:
        return value
    if key in config:
        return config[key]
    return default


@dataclasses.dataclass(frozen=True)
class SweepConfig:
    mechanisms: Tuple[str, ...]
    n_grid: Tuple[int, ...]
    eps_grid: Tuple[float, ...]
    utility: str
    orientation: Optional[str]
    samples: int
    seed: int
    out: str
    plot: bool

    def __post_init__(self):
        if not self.mechanisms or not self.n_grid or not self.eps_grid:
            raise UsageError("mechanism set and grids must be non-empty")
        for name in self.mechanisms:
            if name not in MECHANISM_CHOICES:
                raise UsageError(f"unknown mechanism {name!r}, choose from {MECHANISM_CHOICES}")
        if any(n < 2 for n in self.n_grid):
            raise UsageError("all domain sizes must be >= 2")
        if any(e < 0 for e in self.eps_grid):
            raise UsageError("all budgets must be >= 0")
        if self.samples < 0:
            raise UsageError("samples must be >= 0")


def _table_factory(utility: str, orientation: Optional[str]):
    """Returns (make_table(n), fixed_n or None). File tables fix n."""
    if utility == "euclidean":
        if orientation not in (None, LOSS):
            raise UsageError("euclidean utility is loss-oriented")
        return euclidean_loss_table, None
    if utility == "jaccard":
        if orientation not in (None, UTILITY):
            raise UsageError("jaccard utility is utility-oriented")
        return jaccard_utility_table, None
    if utility.startswith("file:"):
        path = utility[len("file:"):]
        if orientation is None:
            raise UsageError("file utility tables need --orientation")
        table = load_utility_csv(path, orientation)
        return (lambda n: table), table.n
    raise UsageError(f"unknown utility {utility!r} (euclidean, jaccard, or file:PATH)")


def _open_out(path: str):
    if path == "-":
        return sys.stdout, False
    return open(path, "w", newline=""), True


def cmd_sweep(config: SweepConfig) -> int:
    make_table, fixed_n = _table_factory(config.utility, config.orientation)
    n_grid = (fixed_n,) if fixed_n is not None else config.n_grid

    columns = list(SWEEP_COLUMNS)
    if config.samples > 0:
        columns += ["mc_q", "mc_se"]

    master = RandomSource(config.seed)
    rows: List[Dict] = []
    row_index = 0
    for n in n_grid:
        table = make_table(n)
        for eps_value in config.eps_grid:
            eps = PrivacyBudget(eps_value)
            baseline = grr(DiscreteDomain(n), eps)
            baseline_q = float(per_priori_errors(table, baseline).mean())
            for name in config.mechanisms:
                m_value: Optional[int] = None
                if name == "grr":
                    mech = baseline
                elif name == "brr":
                    trace = global_search(table, eps)
                    m_value = trace.global_m
                    mech = brr(table, eps, m_value)
                else:
                    mech = exponential(table, eps)
                report = global_expected_error(table, mech)
                ratio = report.q_global / baseline_q if baseline_q != 0.0 else None
                row = {
                    "mechanism": name,
                    "N": n,
                    "epsilon": eps_value,
                    "m": m_value,
                    "q_global": report.q_global,
                    "q_loss": report.q_loss,
                    "ratio_to_grr": ratio,
                }
                if config.samples > 0:
                    est, se = monte_carlo_q(table, mech, config.samples,
                                            master.child(row_index))
                    row["mc_q"] = est
                    row["mc_se"] = se
                rows.append(row)
                row_index += 1

    handle, close = _open_out(config.out)
    try:
        writer = csv.writer(handle)
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(row.get(col)) for col in columns])
    finally:
        if close:
            handle.close()

    if close and config.plot:
        from . import plotting

        fig = plotting.sweep_figure(rows)
        plotting.save_figure(fig, os.path.splitext(config.out)[0] + ".png")
    return EXIT_OK


def cmd_ratio_convergence(eps_grid: Sequence[float], n_grid: Sequence[int],
                          out: str, plot: bool) -> int:
    if not eps_grid or not n_grid:
        raise UsageError("grids must be non-empty")
    if any(n < 2 for n in n_grid):
        raise UsageError("all domain sizes must be >= 2")
    rows: List[Dict] = []
    for eps_value in eps_grid:
        eps = PrivacyBudget(eps_value)
        for n in n_grid:
            if eps.epsilon == 0.0:
                ratio = 1.0  # all splits yield the uniform distribution
            else:
                m = closed_form_m(n, eps).m
                ratio = equidistant_q_global(n, eps, m) / equidistant_q_global(n, eps, 1)
            asymptote = global_ratio_limit(eps)
            rows.append({
                "N": n,
                "epsilon": eps_value,
                "ratio": ratio,
                "asymptote": asymptote,
                "gap": abs(ratio - asymptote),
            })

    handle, close = _open_out(out)
    try:
        writer = csv.writer(handle)
        writer.writerow(RATIO_COLUMNS)
        for row in rows:
            writer.writerow([_fmt(row[col]) for col in RATIO_COLUMNS])
    finally:
        if close:
            handle.close()

    if close and plot:
        from . import plotting

        fig = plotting.ratio_figure(rows)
        plotting.save_figure(fig, os.path.splitext(out)[0] + ".png")
    return EXIT_OK


def _fuzz_loss_table(n: int, rng: RandomSource) -> UtilityTable:
    upper = rng.uniforms(n * n).reshape(n, n)
    sym = (upper + upper.T) / 2.0
    np.fill_diagonal(sym, 0.0)
    return UtilityTable(values=sym, orientation=LOSS)


def cmd_check(n_range: Tuple[int, int], eps_grid: Sequence[float],
              fuzz_tables: int, seed: int, out: Optional[str]) -> int:
    lo, hi = n_range
    if lo > hi or not eps_grid:
        raise UsageError("empty grid")
    if lo < 2:
        raise UsageError("domain sizes start at 2")

    mismatches: List[Dict] = []
    exact_root_hits = 0
    ldp_failures: List[Dict] = []
    dominance_failures: List[Dict] = []
    symmetry_failures: List[Dict] = []
    points = 0

    for n in range(lo, hi + 1):
        table = euclidean_loss_table(n)
        for eps_value in eps_grid:
            eps = PrivacyBudget(eps_value)
            trace = global_search(table, eps)
            points += 1

            if eps.epsilon > 0.0:
                formula = closed_form_m(n, eps)
                if formula.exact_root_hit:
                    exact_root_hits += 1
                if formula.m != trace.global_m:
                    mismatches.append({"N": n, "epsilon": eps_value,
                                       "formula_m": formula.m,
                                       "search_m": trace.global_m,
                                       "exact_root_hit": formula.exact_root_hit})

            per_m = trace.per_priori_m
            if not np.array_equal(per_m, per_m[::-1]):
                symmetry_failures.append({"N": n, "epsilon": eps_value})

            baseline = grr(DiscreteDomain(n), eps)
            candidates = {
                "grr": baseline,
                "brr": brr(table, eps, trace.global_m),
                "exp": exponential(table, eps),
            }
            for name, mech in candidates.items():
                report = validate_mechanism(mech)
                if not report.passed:
                    ldp_failures.append({"N": n, "epsilon": eps_value, "mechanism": name,
                                         "max_row_dev": report.max_row_dev,
                                         "max_ldp_ratio": report.max_ldp_ratio})

            q_brr = per_priori_errors(table, candidates["brr"])
            q_grr = per_priori_errors(table, baseline)
            if np.any(q_brr > q_grr + 1e-12):
                dominance_failures.append({"N": n, "epsilon": eps_value, "kind": "per_priori"})
            if trace.global_m > 1 and not q_brr.mean() < q_grr.mean():
                dominance_failures.append({"N": n, "epsilon": eps_value, "kind": "strict_global"})

    fuzz_rng = RandomSource(seed)
    fuzz_failures: List[Dict] = []
    for index in range(fuzz_tables):
        child = fuzz_rng.child(index)
        n = int(child.uniforms() * 48) + 3  # 3..50
        eps = PrivacyBudget(0.1 + float(child.uniforms()) * 4.9)
        table = _fuzz_loss_table(n, child)
        trace = global_search(table, eps)
        mech = brr(table, eps, trace.global_m)
        report = validate_mechanism(mech)
        if not report.passed:
            fuzz_failures.append({"index": index, "N": n, "epsilon": eps.epsilon,
                                  "max_ldp_ratio": report.max_ldp_ratio})
        baseline = grr(DiscreteDomain(n), eps)
        if np.any(per_priori_errors(table, mech) > per_priori_errors(table, baseline) + 1e-12):
            fuzz_failures.append({"index": index, "N": n, "epsilon": eps.epsilon,
                                  "kind": "dominance"})

    passed = not (mismatches or ldp_failures or dominance_failures
                  or symmetry_failures or fuzz_failures)
    report = {
        "n_range": [lo, hi],
        "eps_grid": list(eps_grid),
        "grid_points": points,
        "formula_search_agreement": {
            "mismatches": mismatches,
            "mismatch_count": len(mismatches),
            "exact_root_hits": exact_root_hits,
        },
        "ldp_validation_failures": ldp_failures,
        "dominance_failures": dominance_failures,
        "symmetry_failures": symmetry_failures,
        "fuzz": {"tables": fuzz_tables, "failures": fuzz_failures},
        "passed": passed,
    }
    text = json.dumps(report, indent=2)
    if out:
        with open(out, "w") as handle:
            handle.write(text + "\n")
    else:
        print(text)
    return EXIT_OK if passed else EXIT_INVARIANT


def cmd_perturb(spec: IntervalSpec, eps: PrivacyBudget, seed: int,
                in_stream, out_stream, integer_labels: bool) -> int:
    rng = RandomSource(seed)
    m = equidistant_m(spec.n, eps)
    params = brr_params(spec.n, eps, m)
    cdf_cache: Dict[int, np.ndarray] = {}
    ids = np.arange(1, spec.n + 1)

    for lineno, raw in enumerate(in_stream, 1):
        text = raw.strip()
        if not text:
            continue
        try:
            x = float(text)
        except ValueError:
            print(f"line {lineno}: cannot parse {text!r} as a decimal", file=sys.stderr)
            return EXIT_IO
        near = nearest_point(spec, x)
        cdf = cdf_cache.get(near.index)
        if cdf is None:
            order = np.argsort(np.abs(ids - near.index), kind="stable")
            row = np.full(spec.n, params.q_star)
            row[order[:m]] = params.p_star
            cdf = np.cumsum(row)
            cdf_cache[near.index] = cdf
        j = int(np.searchsorted(cdf, float(rng.uniforms()), side="right"))
        value = spec.point(min(j, spec.n - 1) + 1)
        out_stream.write(f"{int(round(value))}\n" if integer_labels else f"{_fmt(value)}\n")
    return EXIT_OK


_PLOT_SCRIPT_SWEEP = '''#!/usr/bin/env python3
"""Render quality-loss curves from a sweep CSV (auto-generated)."""
import csv
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

CSV_PATH = {csv_path!r}

rows = []
with open(CSV_PATH) as handle:
    for row in csv.DictReader(handle):
        rows.append({{
            "mechanism": row["mechanism"],
            "N": int(row["N"]),
            "epsilon": float(row["epsilon"]),
            "q": float(row["q_loss"] or row["q_global"]),
        }})

sizes = sorted({{r["N"] for r in rows}})
mechanisms = sorted({{r["mechanism"] for r in rows}})
fig, axes = plt.subplots(1, len(sizes), figsize=(4 * len(sizes), 3.2),
                         sharey=True, squeeze=False)
for ax, n in zip(axes[0], sizes):
    for mech in mechanisms:
        pts = sorted((r["epsilon"], r["q"]) for r in rows
                     if r["N"] == n and r["mechanism"] == mech)
        if pts:
            ax.plot([p[0] for p in pts], [p[1] for p in pts],
                    marker="o", markersize=3, label=mech)
    ax.set_title(f"N = {{n}}")
    ax.set_xlabel("epsilon")
    ax.grid(True, alpha=0.3)
axes[0][0].set_ylabel("quality loss")
axes[0][0].legend()
fig.tight_layout()
out = os.path.splitext(CSV_PATH)[0] + ".png"
fig.savefig(out, dpi=150)
print(out)
'''

_PLOT_SCRIPT_RATIO = '''#!/usr/bin/env python3
"""Overlay computed global-error ratios with their asymptotes
(auto-generated)."""
import csv
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

CSV_PATH = {csv_path!r}

rows = []
with open(CSV_PATH) as handle:
    for row in csv.DictReader(handle):
        rows.append({{
            "N": int(row["N"]),
            "epsilon": float(row["epsilon"]),
            "ratio": float(row["ratio"]),
            "asymptote": float(row["asymptote"]),
        }})

fig, ax = plt.subplots(figsize=(5.5, 3.8))
for eps in sorted({{r["epsilon"] for r in rows}}):
    pts = sorted((r["N"], r["ratio"], r["asymptote"]) for r in rows
                 if r["epsilon"] == eps)
    ns = [p[0] for p in pts]
    line, = ax.plot(ns, [p[1] for p in pts], marker="o", markersize=3,
                    label=f"eps = {{eps:g}}")
    ax.plot(ns, [p[2] for p in pts], linestyle="--",
            color=line.get_color(), alpha=0.7)
ax.set_xlabel("N")
ax.set_ylabel("Q_g ratio to GRR")
ax.grid(True, alpha=0.3)
ax.legend()
fig.tight_layout()
out = os.path.splitext(CSV_PATH)[0] + ".png"
fig.savefig(out, dpi=150)
print(out)
'''


def cmd_plot_script(csv_path: str, out: Optional[str]) -> int:
    try:
        with open(csv_path, newline="") as handle:
            header = next(csv.reader(handle), None)
    except OSError as exc:
        print(f"cannot read {csv_path}: {exc}", file=sys.stderr)
        return EXIT_IO
    if header is None:
        print(f"{csv_path}: empty file", file=sys.stderr)
        return EXIT_IO

    columns = set(header)
    if set(SWEEP_COLUMNS) <= columns:
        template = _PLOT_SCRIPT_SWEEP
    elif set(RATIO_COLUMNS) <= columns:
        template = _PLOT_SCRIPT_RATIO
    else:
        print(f"{csv_path}: header {header} matches neither the sweep nor the "
              f"ratio schema", file=sys.stderr)
        return EXIT_IO

    script = template.format(csv_path=os.path.abspath(csv_path))
    out_path = out or os.path.splitext(csv_path)[0] + "_plot.py"
    with open(out_path, "w") as handle:
        handle.write(script)
    print(out_path)
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="brr", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--config", help="key=value file; flags override its entries")
    shared.add_argument("--seed", type=int, default=None, help="master seed (default 0)")
    shared.add_argument("--out", default=None, help="output path, '-' for stdout")

    p = sub.add_parser("sweep", parents=[shared],
                       help="mechanism grid sweep to CSV (plus PNG for file output)")
    p.add_argument("--mechanisms", default=None,
                   help="comma list from {grr,brr,exp} (default all)")
    p.add_argument("--n-grid", dest="n_grid", default=None,
                   help="domain sizes, e.g. 20..100:20 or 10,50,250")
    p.add_argument("--eps-grid", dest="eps_grid", default=None,
                   help="budgets, e.g. 0.5,1,2,3,5 or 1..3:0.5")
    p.add_argument("--utility", default=None,
                   help="euclidean | jaccard | file:PATH (default euclidean)")
    p.add_argument("--orientation", choices=(LOSS, UTILITY), default=None,
                   help="required for file: tables")
    p.add_argument("--samples", type=int, default=None,
                   help="Monte-Carlo draws per row; adds mc_q,mc_se columns")
    p.add_argument("--no-plot", action="store_true", help="skip the PNG")
    p.set_defaults(func=_run_sweep)

    p = sub.add_parser("ratio-convergence", parents=[shared],
                       help="Q_g(BRR)/Q_g(GRR) vs its large-N asymptote")
    p.add_argument("--eps-grid", dest="eps_grid", default=None)
    p.add_argument("--n-grid", dest="n_grid", default=None)
    p.add_argument("--no-plot", action="store_true")
    p.set_defaults(func=_run_ratio)

    p = sub.add_parser("check", parents=[shared],
                       help="closed-form/search agreement, privacy bound, "
                            "dominance, and symmetry invariants")
    p.add_argument("--n-range", dest="n_range", default=None, help="e.g. 3..300")
    p.add_argument("--eps-grid", dest="eps_grid", default=None)
    p.add_argument("--fuzz-tables", dest="fuzz_tables", type=int, default=None)
    p.set_defaults(func=_run_check)

    p = sub.add_parser("perturb", parents=[shared],
                       help="privatize one decimal per stdin line")
    p.add_argument("--eps", type=float, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--domain", type=int,
                       help="integer labels 1..N")
    group.add_argument("--interval", nargs=2, type=float, metavar=("A", "B"),
                       help="continuous range discretized to --n-points")
    p.add_argument("--n-points", dest="n_points", type=int, default=None,
                   help="grid size for --interval")
    p.set_defaults(func=_run_perturb)

    p = sub.add_parser("plot-script", parents=[shared],
                       help="emit a standalone matplotlib script for a CSV")
    p.add_argument("csv_path")
    p.set_defaults(func=_run_plot_script)

    return parser


def _load_shared_config(args) -> Dict[str, str]:
    return load_config(args.config) if getattr(args, "config", None) else {}


def _run_sweep(args) -> int:
    config_file = _load_shared_config(args)
    cfg = SweepConfig(
        mechanisms=tuple(str(_resolve(args, config_file, "mechanisms", "grr,brr,exp"))
                         .replace(" ", "").split(",")),
        n_grid=tuple(parse_int_grid(str(_resolve(args, config_file, "n_grid", "20..100:20")))),
        eps_grid=tuple(parse_float_grid(str(_resolve(args, config_file, "eps_grid", "0.5,1,2,3,5")))),
        utility=str(_resolve(args, config_file, "utility", "euclidean")),
        orientation=_resolve(args, config_file, "orientation"),
        samples=int(_resolve(args, config_file, "samples", 0)),
        seed=int(_resolve(args, config_file, "seed", 0)),
        out=str(_resolve(args, config_file, "out", "sweep.csv")),
        plot=not args.no_plot,
    )
    return cmd_sweep(cfg)


def _run_ratio(args) -> int:
    config_file = _load_shared_config(args)
    eps_grid = parse_float_grid(str(_resolve(args, config_file, "eps_grid", "0.5,1,2,3")))
    n_grid = parse_int_grid(str(_resolve(args, config_file, "n_grid", "101,501,1001,5001")))
    out = str(_resolve(args, config_file, "out", "ratio.csv"))
    return cmd_ratio_convergence(eps_grid, n_grid, out, plot=not args.no_plot)


def _run_check(args) -> int:
    config_file = _load_shared_config(args)
    range_text = str(_resolve(args, config_file, "n_range", "3..300"))
    start_text, sep, end_text = range_text.partition("..")
    if not sep:
        raise UsageError(f"--n-range needs START..END, got {range_text!r}")
    try:
        n_range = (int(start_text), int(end_text))
    except ValueError:
        raise UsageError(f"--n-range needs START..END, got {range_text!r}")
    eps_grid = parse_float_grid(str(_resolve(args, config_file, "eps_grid", "0.5,1,2,3,5")))
    fuzz = int(_resolve(args, config_file, "fuzz_tables", 50))
    seed = int(_resolve(args, config_file, "seed", 0))
    out = _resolve(args, config_file, "out")
    return cmd_check(n_range, eps_grid, fuzz, seed, out)


def _run_perturb(args) -> int:
    config_file = _load_shared_config(args)
    eps = PrivacyBudget(args.eps)
    seed = int(_resolve(args, config_file, "seed", 0))
    if args.domain is not None:
        if args.domain < 2:
            raise UsageError("--domain must be >= 2")
        spec = IntervalSpec(1.0, float(args.domain), args.domain)
        integer_labels = True
    else:
        a, b = args.interval
        n_points = _resolve(args, config_file, "n_points")
        if n_points is None:
            raise UsageError("--interval needs --n-points")
        spec = IntervalSpec(a, b, int(n_points))
        integer_labels = False
    return cmd_perturb(spec, eps, seed, sys.stdin, sys.stdout, integer_labels)


def _run_plot_script(args) -> int:
    config_file = _load_shared_config(args)
    out = _resolve(args, config_file, "out")
    return cmd_plot_script(args.csv_path, out)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
