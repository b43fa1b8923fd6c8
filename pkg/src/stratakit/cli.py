"""Command-line driver: run verification suites, emit reports.

Subcommands mirror the library layout::

    stratakit strata verify --case z --q 3 --k 2 --t 4 --h 0
    stratakit strata count  --case zy --q 3 --k 2 --t1 6 --h 2 --t2 0
    stratakit strata classify --case z --t 4 --h 0 --input subspace.json
    stratakit weyl audit --tmax 6
    stratakit charts reconcile --max-entries 10
    stratakit charts rzdim --n 5 --h 0
    stratakit latcalc dichotomy --n 3 --trials 1000 --seed 0
    stratakit latcalc inclusions --n 2 --h 2

Exit codes: 0 all checks passed, 1 some check failed, 2 usage or
parameter error, 3 no failures but at least one inconclusive result.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import charts, latcalc, report, strata, weyl
from .space import subspace_from_json


def _strata_config(args) -> strata.StrataConfig:
    case = args.case.upper()
    kwargs = dict(case=case, p=args.q, e=args.e, k=args.k)
    if case == "Z":
        kwargs.update(t=args.t, h=args.h)
    elif case == "Y":
        kwargs.update(n=args.n, h=args.h, t=args.t, eps=args.eps)
    elif case == "ZY":
        kwargs.update(t1=args.t1, h=args.h, t2=args.t2)
    else:
        raise strata.ConfigError(f"unknown case {args.case!r}")
    return strata.StrataConfig(**kwargs)


def _finish(args, rep: dict) -> int:
    text = report.emit(rep, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text + ("\n" if not text.endswith("\n") else ""))
    return report.exit_code(rep)


def cmd_strata_verify(args) -> int:
    cfg = _strata_config(args)
    with report.Stopwatch() as sw:
        part = strata.verify_decomposition(cfg, budget=args.budget)
    rep = report.make_report(part["config"], part["counts"], part["checks"],
                             seed=args.seed)
    rep["wall_time_s"] = sw.seconds
    return _finish(args, rep)


def cmd_strata_count(args) -> int:
    cfg = _strata_config(args)
    with report.Stopwatch() as sw:
        try:
            counts, total = strata.stratum_counts(cfg, budget=args.budget)
            checks = [{"name": "enumeration", "status": "pass",
                       "data": {"members": total}}]
            rows = [{"label": l.key(), "count": c}
                    for l, c in sorted(counts.items(), key=lambda x: x[0].key())]
        except strata.BudgetExceeded as exc:
            checks = [{"name": "enumeration", "status": "inconclusive",
                       "witness": str(exc)}]
            rows = []
    rep = report.make_report(cfg.describe(), rows, checks, seed=args.seed)
    rep["wall_time_s"] = sw.seconds
    return _finish(args, rep)


def cmd_strata_classify(args) -> int:
    cfg = _strata_config(args)
    with open(args.input) as fh:
        data = json.load(fh)
    U = subspace_from_json(data)
    with report.Stopwatch() as sw:
        if not strata.member(cfg, U):
            rep = report.make_report(cfg.describe(), [], [
                {"name": "membership", "status": "fail",
                 "witness": "subspace is not a member of the configured stratum space"},
            ])
            rep["wall_time_s"] = sw.seconds
            return _finish(args, rep)
        label, chain = strata.classify_flag(cfg, U)
        kr = strata.kr_class(cfg, U)
    rep = report.make_report(
        cfg.describe(),
        [{"label": label.key(), "count": 1}],
        [{"name": "membership", "status": "pass",
          "data": {"label": label.key(), "kr_class": kr,
                   "chain_dims": [f.dim for f in chain]}}],
    )
    rep["wall_time_s"] = sw.seconds
    return _finish(args, rep)


def cmd_weyl_audit(args) -> int:
    with report.Stopwatch() as sw:
        part = weyl.symplectic_audit(args.tmax)
    rep = report.make_report(part["config"], part["counts"], part["checks"],
                             seed=args.seed)
    rep["wall_time_s"] = sw.seconds
    return _finish(args, rep)


def cmd_charts_reconcile(args) -> int:
    with report.Stopwatch() as sw:
        if args.family:
            specs = [charts.ChartSpec(args.family, args.q, n=args.n, h=args.h,
                                      t1=args.t1, t2=args.t2)]
        else:
            specs = charts.all_chart_specs(args.max_entries, qs=(3, 5))
        parts = [charts.reconcile(spec, budget=args.budget) for spec in specs]
    rep = report.merge_reports(parts, {"command": "charts reconcile",
                                       "max_entries": args.max_entries},
                               seed=args.seed)
    rep["wall_time_s"] = sw.seconds
    return _finish(args, rep)


def cmd_charts_rzdim(args) -> int:
    with report.Stopwatch() as sw:
        value = charts.rz_dim(args.n, args.h, args.eps)
        oracle = charts.rz_dim_oracle(args.n, args.h, args.eps)
    rep = report.make_report(
        {"command": "charts rzdim", "n": args.n, "h": args.h, "eps": args.eps},
        [{"label": "rz_dim", "count": value}],
        [{"name": "formula_matches_type_table_oracle",
          "status": "pass" if value == oracle else "fail",
          "data": {"formula": value, "oracle": oracle}}],
    )
    rep["wall_time_s"] = sw.seconds
    code = _finish(args, rep)
    return code


def cmd_latcalc_dichotomy(args) -> int:
    with report.Stopwatch() as sw:
        if args.exhaustive:
            stats = latcalc.exhaustive_dichotomy(args.q, args.e, args.s, n=args.n,
                                                 seed=args.seed, N=args.bign)
            audited = stats["case_Y"] + stats["case_Z"] + stats["case_Both"]
        else:
            stats = latcalc.dichotomy_trials(args.q, args.e, args.s, args.n,
                                             args.trials, seed=args.seed, N=args.bign)
            audited = stats["case_Y"] + stats["case_Z"] + stats["case_Both"]
    checks = [
        {"name": "no_counterexamples",
         "status": "pass" if not stats["counterexamples"] else "fail",
         **({"witness": stats["counterexamples"][:3]} if stats["counterexamples"] else {})},
        {"name": "no_anomalous_cases",
         "status": "pass" if stats["anomalous"] == 0 else "fail"},
        {"name": "same_index_lemma",
         "status": "pass" if stats["same_index_failures"] == 0 else "fail"},
    ]
    denom = max(1, audited + stats["inconclusive"])
    if stats["inconclusive"] / denom >= 0.05:
        checks.append({"name": "inconclusive_rate_below_5_percent", "status": "fail",
                       "data": {"inconclusive": stats["inconclusive"], "audited": audited}})
    else:
        checks.append({"name": "inconclusive_rate_below_5_percent", "status": "pass"})
    counts = [{"label": k, "count": v} for k, v in sorted(stats.items())
              if isinstance(v, int)]
    rep = report.make_report(
        {"command": "latcalc dichotomy", "p": args.q, "e": args.e, "s": args.s,
         "n": args.n, "N": args.bign, "trials": args.trials,
         "exhaustive": bool(args.exhaustive)},
        counts, checks, seed=args.seed)
    rep["wall_time_s"] = sw.seconds
    return _finish(args, rep)


def cmd_latcalc_inclusions(args) -> int:
    with report.Stopwatch() as sw:
        part = latcalc.inclusion_report(args.q, args.e, args.s, n=args.n, h=args.h,
                                        seed=args.seed, N=args.bign)
    rep = report.make_report(part["config"], part["counts"], part["checks"],
                             seed=args.seed)
    rep["wall_time_s"] = sw.seconds
    return _finish(args, rep)


def _add_common(p) -> None:
    p.add_argument("--q", type=int, default=3, help="base field characteristic p")
    p.add_argument("--e", type=int, default=1, help="base field degree (q = p^e)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--format", choices=("json", "csv", "md"), default="json")
    p.add_argument("--out", default=None)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="stratakit",
                                 description="finite-field stratification verifier")
    sub = ap.add_subparsers(dest="module", required=True)

    st = sub.add_parser("strata", help="stratum membership and decomposition checks")
    st_sub = st.add_subparsers(dest="command", required=True)
    for name, fn in (("verify", cmd_strata_verify), ("count", cmd_strata_count),
                     ("classify", cmd_strata_classify)):
        p = st_sub.add_parser(name)
        _add_common(p)
        p.add_argument("--case", required=True, choices=("z", "y", "zy", "Z", "Y", "ZY"))
        p.add_argument("--k", type=int, default=1)
        p.add_argument("--n", type=int, default=0)
        p.add_argument("--h", type=int, default=0)
        p.add_argument("--t", type=int, default=0)
        p.add_argument("--t1", type=int, default=0)
        p.add_argument("--t2", type=int, default=0)
        p.add_argument("--eps", type=int, default=-1, choices=(-1, 1))
        if name == "classify":
            p.add_argument("--input", required=True)
        p.set_defaults(func=fn)

    wy = sub.add_parser("weyl", help="signed permutation calculus audits")
    wy_sub = wy.add_subparsers(dest="command", required=True)
    p = wy_sub.add_parser("audit")
    _add_common(p)
    p.add_argument("--tmax", type=int, default=6)
    p.set_defaults(func=cmd_weyl_audit)

    ch = sub.add_parser("charts", help="local chart counting and dimensions")
    ch_sub = ch.add_subparsers(dest="command", required=True)
    p = ch_sub.add_parser("reconcile")
    _add_common(p)
    p.add_argument("--family", choices=("Z", "Y", "ZY", "pi-modular"), default=None)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--h", type=int, default=0)
    p.add_argument("--t1", type=int, default=0)
    p.add_argument("--t2", type=int, default=0)
    p.add_argument("--max-entries", type=int, default=10)
    p.set_defaults(func=cmd_charts_reconcile)
    p = ch_sub.add_parser("rzdim")
    _add_common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--eps", type=int, default=1, choices=(-1, 1))
    p.set_defaults(func=cmd_charts_rzdim)

    lc = sub.add_parser("latcalc", help="truncated lattice calculus")
    lc_sub = lc.add_subparsers(dest="command", required=True)
    p = lc_sub.add_parser("dichotomy")
    _add_common(p)
    p.add_argument("--s", type=int, default=2, help="coefficient field degree over GF(q)")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--bign", type=int, default=8, help="truncation guard N")
    p.add_argument("--exhaustive", action="store_true")
    p.set_defaults(func=cmd_latcalc_dichotomy)
    p = lc_sub.add_parser("inclusions")
    _add_common(p)
    p.add_argument("--s", type=int, default=2)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--h", type=int, default=0)
    p.add_argument("--bign", type=int, default=8)
    p.set_defaults(func=cmd_latcalc_inclusions)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (strata.ConfigError, charts.ChartError, latcalc.LatticeError,
            weyl.WeylError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
