"""Command-line front end: symquandle <command> ...

Exit status is 0 on success, 2 on a usage error and 1 when a verification
fails (for ``iso``: 1 when the quandles are not isomorphic).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from dataclasses import dataclass

from .alexander import classify_cyclic, nelson_modulus, units
from .autgroup import aut_class_label, aut_order, aut_s6_conjugacy_classes, eta, fix_subgroup, parse_automorphism, xi
from .classify import classify, invariant_table, verify_theorem
from .invariants import DEFAULT_BUDGET, dc_alt_invariant, dc_full_diagnostic
from .iso import DEFAULT_ISO_CAP, SLOW_ISO_CAP, are_isomorphic
from .perm import CycleType, parse_cycles
from .quandle import DEFAULT_TABLE_CAP, general_alexander, load, to_json, to_text
from .s6 import build, conjugate_sd, eta_action_on_A6_classes, eta_spectrum_separation
from .symgroup import BudgetExceeded

FORMATS = ("text", "json", "csv")

# which option raises each kind of cap, by prefix of BudgetExceeded.what
_CAP_OPTION = (
    ("quandle table", "--table-cap"),
    ("dense tables", "--table-cap"),
    ("isomorphism search", "--slow"),
)


def _cap_option(what: str) -> str:
    for prefix, option in _CAP_OPTION:
        if what.startswith(prefix):
            return option
    return "--budget"


class UsageError(ValueError):
    pass


@dataclass
class Config:
    budget: int = DEFAULT_BUDGET
    table_cap: int = DEFAULT_TABLE_CAP
    slow: bool = False
    format: str = "text"
    seed: int = 0
    jobs: int | None = None

    def __post_init__(self):
        if self.budget < 1 or self.table_cap < 1:
            raise UsageError("caps must be positive")
        if self.format not in FORMATS:
            raise UsageError(f"format must be one of {FORMATS}")


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {raw!r}") from None


def _num(value, fmt: str) -> str:
    """Digit grouping in text output only."""
    if isinstance(value, int) and not isinstance(value, bool) and fmt == "text":
        return f"{value:,}"
    return str(value)


def _emit_json(data) -> None:
    print(json.dumps(data, indent=2, sort_keys=False))


def _parse_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        try:
            lo_i, hi_i = int(lo), int(hi)
        except ValueError:
            raise UsageError(f"bad range {text!r}") from None
        if lo_i > hi_i:
            raise UsageError(f"empty range {text!r}")
        return list(range(lo_i, hi_i + 1))
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"bad range {text!r}") from None


def _parse_partition(text: str, n: int) -> CycleType:
    try:
        t = CycleType.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if t.n != n:
        raise UsageError(f"{text} is a partition of {t.n}, not {n}")
    return t


# -- commands ---------------------------------------------------------------


def cmd_table(args, cfg: Config) -> int:
    blocks = invariant_table(args.n)
    if cfg.format == "json":
        _emit_json(
            {
                "n": args.n,
                "blocks": [
                    [{"label": c.label, "ord": c.ord, "fix": c.fix, "parity": c.parity} for c in block]
                    for block in blocks
                ],
            }
        )
        return 0
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n") if cfg.format == "csv" else None
    for k, block in enumerate(blocks):
        header = "class" if args.n == 6 else "shape"
        rows = [
            [header] + [c.label for c in block],
            ["ord"] + [str(c.ord) for c in block],
            ["fix"] + [_num(c.fix, cfg.format) for c in block],
        ]
        if any(c.parity for c in block):
            rows.append(["parity"] + [c.parity or "" for c in block])
        if writer:
            writer.writerows(rows)
        else:
            if k:
                out.write("\n")
            widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
            for r in rows:
                out.write("  ".join(cell.rjust(w) for cell, w in zip(r, widths)).rstrip() + "\n")
    sys.stdout.write(out.getvalue())
    return 0


def cmd_classify(args, cfg: Config) -> int:
    report = classify(args.n, budget=cfg.budget, enable_iv=not args.no_iv, dc_method=args.dc_method)
    if cfg.format == "json":
        _emit_json(report.to_json())
        return 0
    if cfg.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["a", "b", "status", "stage"])
        for p in report.pairs:
            writer.writerow([p.a, p.b, p.status, p.stage or ""])
        return 0
    print(f"n = {args.n}: {len(report.profiles)} classes, {_num(report.total_pairs, 'text')} pairs")
    for stage, count in report.stage_counts.items():
        print(f"  {stage:<22} {_num(count, 'text')}")
    shown = [p for p in report.pairs if p.stage != "i"]
    if shown:
        print("pairs beyond stage i:")
        for p in shown:
            evidence = json.dumps(p.evidence) if p.evidence else ""
            print(f"  {p.a:<14} {p.b:<14} {p.status:<22} {p.stage or '-':<12} {evidence}")
    print(f"bijective with Aut-classes: {report.bijective_with_aut_classes}")
    for a, b in report.unresolved_pairs:
        print(f"unresolved: {a} / {b}")
    return 0


def cmd_verify(args, cfg: Config) -> int:
    ns = _parse_range(args.range)
    if min(ns) < 3:
        raise UsageError("verify needs n >= 3")
    summary = verify_theorem(ns, budget=cfg.budget, dc_method=args.dc_method, jobs=cfg.jobs)
    if cfg.format == "json":
        _emit_json(summary.to_json())
    elif cfg.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["n", "classes", "pairs", "last_stage", "bijective", "unresolved", "ok"])
        for r in summary.rows:
            unresolved = ";".join(f"{a}/{b}" for a, b in r.unresolved)
            writer.writerow([r.n, r.classes, r.pairs, r.last_stage, r.bijective, unresolved, r.ok])
    else:
        print(f"{'n':>3} {'classes':>8} {'pairs':>12} {'last stage':>12}  bijective  unresolved")
        for r in summary.rows:
            unresolved = ", ".join(f"{{{a}}} / {{{b}}}" for a, b in r.unresolved) or "-"
            print(f"{r.n:>3} {r.classes:>8,} {r.pairs:>12,} {r.last_stage or '-':>12}  {str(r.bijective):<9}  {unresolved}")
            if not r.ok:
                print(f"    FAILED: {r.message}")
        print("theorem reproduced" if summary.ok else "verification FAILED")
    return 0 if summary.ok else 1


def cmd_doublecosets(args, cfg: Config) -> int:
    t = _parse_partition(args.partition, args.n)
    alt = dc_alt_invariant(args.n, t, cfg.budget, method=args.method)
    full = dc_full_diagnostic(args.n, t, cfg.budget, method=args.method)
    if cfg.format == "json":
        _emit_json({"n": args.n, "shape": str(t), "dc_alt": alt, "dc_full": full, "dc_full_flag": "diagnostic"})
    elif cfg.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["n", "shape", "dc_alt", "dc_full"])
        writer.writerow([args.n, str(t), alt, full])
    else:
        print(_num(alt, "text"))
        print(f"|K \\ S_{args.n} / K| = {_num(full, 'text')} (diagnostic, not proven invariant)")
    return 0


def cmd_iso(args, cfg: Config) -> int:
    q = load(args.first)
    r = load(args.second)
    cap = SLOW_ISO_CAP if cfg.slow else DEFAULT_ISO_CAP
    result = are_isomorphic(q, r, cap=cap)
    if cfg.format == "json":
        _emit_json({"isomorphic": result.isomorphic, "witness": result.witness, "reason": result.reason})
    else:
        print("isomorphic" if result.isomorphic else "not isomorphic", f"({result.reason})")
        if result.isomorphic and args.witness:
            print("[" + " ".join(str(v) for v in result.witness) + "]")
    return 0 if result.isomorphic else 1


def cmd_alexander(args, cfg: Config) -> int:
    n = args.n if args.n is not None else args.n_opt
    if n is None:
        raise UsageError("alexander needs n")
    classes = classify_cyclic(n)
    if cfg.format == "json":
        _emit_json(
            {
                "n": n,
                "classes": classes,
                "nelson_modulus": {str(a): nelson_modulus(n, a) for a in units(n)},
            }
        )
        return 0
    if cfg.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["class", "units", "N"])
        for k, cls in enumerate(classes):
            writer.writerow([k, " ".join(map(str, cls)), nelson_modulus(n, cls[0])])
        return 0
    print(f"Alexander quandles Q(C_{n}, a): {len(units(n))} units, {len(classes)} isomorphism classes")
    for cls in classes:
        print(f"  N = {nelson_modulus(n, cls[0]):>3}: {{{', '.join(map(str, cls))}}}")
    merged = [cls for cls in classes if len(cls) > 1]
    if merged:
        print("Aut(C_n) is abelian, so these merges show quandle classes coarser than Aut-conjugacy.")
    return 0


def _s6_data(cfg: Config) -> dict:
    classes = [
        {
            "label": str(c.label),
            "size": c.size,
            "representative": str(c.representative),
            "ord": aut_order(c.representative),
            "fix": len(fix_subgroup(c.representative)),
        }
        for c in aut_s6_conjugacy_classes()
    ]
    etas = []
    for k in (0, 1):
        e = eta(k)
        etas.append(
            {
                "name": f"eta{k}",
                "automorphism": str(e),
                "label": str(aut_class_label(e)),
                "ord": aut_order(e),
                "fix": [p.cycle_string() for p in sorted(fix_subgroup(e))],
                "square": str(e * e),
                "a6_action": eta_action_on_A6_classes(k),
            }
        )
    sep = eta_spectrum_separation()
    rng = random.Random(cfg.seed)
    group = build(6, eta(0))
    table = group.mult_table
    samples = 2000
    for _ in range(samples):
        a, b = rng.randrange(group.size), rng.randrange(group.size)
        if conjugate_sd(a, b, group) != table[table[b, a], group.inverse(b)]:
            raise AssertionError("closed-form conjugation disagrees with direct multiplication")
    return {
        "aut_order": sum(c["size"] for c in classes),
        "class_count": len(classes),
        "classes": classes,
        "xi": {"ord": aut_order(xi()), "image_of_123456": xi()(parse_cycles("(1 2 3 4 5 6)", 6)).cycle_string()},
        "eta": etas,
        "separation": sep.to_json(),
        "conjugation_samples_checked": samples,
        "verdict": "O(4,2)E and O(4,2)O separated" if sep.separated else "not separated",
    }


def cmd_s6_report(args, cfg: Config) -> int:
    data = _s6_data(cfg)
    if cfg.format == "json":
        _emit_json(data)
        return 0
    if cfg.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["label", "size", "ord", "fix", "representative"])
        for c in data["classes"]:
            writer.writerow([c["label"], c["size"], c["ord"], c["fix"], c["representative"]])
        return 0
    print(f"|Aut(S_6)| = {data['aut_order']:,}, {data['class_count']} conjugacy classes")
    print(f"  {'class':<12} {'size':>5} {'ord':>4} {'fix':>4}  representative")
    for c in data["classes"]:
        print(f"  {c['label']:<12} {c['size']:>5} {c['ord']:>4} {c['fix']:>4}  {c['representative']}")
    x = data["xi"]
    print(f"xi: order {x['ord']}, xi((1 2 3 4 5 6)) = {x['image_of_123456']}")
    for e in data["eta"]:
        print(f"{e['name']} = {e['automorphism']}: class {e['label']}, order {e['ord']}, square {e['square']}")
        print(f"  Fix = {{{', '.join(e['fix'])}}}")
        moved = {k: v for k, v in e["a6_action"].items() if k != v}
        print("  on A_6 classes: " + ", ".join(f"{k} -> {v}" for k, v in moved.items()))
    s = data["separation"]
    for key, name in (("spectrum_eta0", "phi_0"), ("spectrum_eta1", "phi_1")):
        spectrum = ", ".join(f"{size}x{count}" for size, count in s[key].items())
        print(f"centralizer sizes in A_6 x|_{name} C_8: {spectrum}")
    print(f"witness {s['witness']} has centralizer of size {s['witness_centralizer_size']}")
    print(data["verdict"])
    return 0 if s["separated"] else 1


def cmd_quandle(args, cfg: Config) -> int:
    try:
        psi = parse_automorphism(args.aut, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    q = general_alexander(args.n, psi, cap=cfg.table_cap)
    text = to_json(q) if cfg.format == "json" else to_text(q)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
        print(f"wrote {q.size}-element quandle to {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return 0


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None)
    common.add_argument("--budget", type=int, default=None, help="centralizer enumeration cap (QF_BUDGET)")
    common.add_argument("--table-cap", type=int, default=None, help="largest quandle table (QF_TABLE_CAP)")
    common.add_argument("--slow", action="store_true", default=None, help="allow S_6-sized searches (QF_SLOW=1)")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--jobs", type=int, default=None, help="worker processes (default: all cores)")

    ap = argparse.ArgumentParser(
        prog="symquandle", description="Generalized Alexander quandles of symmetric groups."
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common], help="ord / fix / parity table for S_n")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("classify", parents=[common], help="separate all Aut(S_n)-classes")
    p.add_argument("n", type=int)
    p.add_argument("--no-iv", action="store_true", help="skip the double-coset stage")
    p.add_argument("--dc-method", choices=("symbolic", "enumerate"), default="symbolic")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", parents=[common], help="classify a range, e.g. 3..30")
    p.add_argument("range")
    p.add_argument("--dc-method", choices=("symbolic", "enumerate"), default="symbolic")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("doublecosets", parents=[common], help="|K_alt \\ S_n / K| for a shape")
    p.add_argument("n", type=int)
    p.add_argument("partition", help="e.g. 4,2^3")
    p.add_argument("--method", choices=("symbolic", "enumerate"), default="enumerate")
    p.set_defaults(func=cmd_doublecosets)

    p = sub.add_parser("iso", parents=[common], help="brute-force isomorphism of two quandle files")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--witness", action="store_true", help="print the isomorphism")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("alexander", parents=[common], help="isomorphism classes of Q(C_n, a)")
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("--n", dest="n_opt", type=int)
    p.set_defaults(func=cmd_alexander)

    p = sub.add_parser("s6-report", parents=[common], help="Aut(S_6) classes and the O(4,2) separator")
    p.set_defaults(func=cmd_s6_report)

    p = sub.add_parser("quandle", parents=[common], help="write the table of Q(S_n, psi)")
    p.add_argument("n", type=int)
    p.add_argument("aut", help="inner:(1 2 3), outer:(2 5 6 4 3), xi, eta0 or eta1")
    p.add_argument("--out")
    p.set_defaults(func=cmd_quandle)
    return ap


def make_config(args) -> Config:
    return Config(
        budget=args.budget if args.budget is not None else _env_int("QF_BUDGET", DEFAULT_BUDGET),
        table_cap=args.table_cap if args.table_cap is not None else _env_int("QF_TABLE_CAP", DEFAULT_TABLE_CAP),
        slow=bool(args.slow) or os.environ.get("QF_SLOW") == "1",
        format=args.format or "text",
        seed=args.seed if args.seed is not None else 0,
        jobs=args.jobs,
    )


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = make_config(args)
        return args.func(args, cfg)
    except UsageError as exc:
        print(f"symquandle: error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"symquandle: error: {exc} (cap set by {_cap_option(exc.what)})", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"symquandle: error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"symquandle: verification failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
