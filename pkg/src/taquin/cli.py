"""Command line entry point: ``taquin <subcommand> ...``.

Exit status is 0 on success or a true verdict, 1 on a false verdict and 2 on
usage errors.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from dataclasses import dataclass, field

from . import __version__
from .dcomplete import dcomplete_report, is_d3_complete, is_nonoverlapping
from .enumeration import (SurveyRecord, conjecture_scan, enumerate_all, summarize, survey,
                          write_enumeration)
from .errors import PosetError
from .families import (delta, minuscule, rooted_tree, shape, shape_boxes, shifted_boxes,
                       shifted_shape, delta_labels)
from .jdt import find_unsolved_crucial, is_jdt_challenges, is_jdt_definition, simulate_departure
from .poset import is_connected, load
from .simultaneous import find_unsimultaneous, solve_crucial
from .sliding import BiNumbering, Snapshot, TEST_A, TEST_B

EXIT_OK, EXIT_FALSE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    fmt: str = "text"
    seed: int = 0
    threads: int = 1
    options: dict = field(default_factory=dict)

    def header(self) -> dict:
        return {"tool": "taquin", "version": __version__, "seed": self.seed,
                "config": {"subcommand": self.subcommand, "format": self.fmt,
                           "threads": self.threads, **self.options}}


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma separated integers, got {text!r}") from None


def _emit(cfg: RunConfig, payload: dict, text_lines: list[str], out=None) -> None:
    out = out or sys.stdout
    if cfg.fmt == "json":
        json.dump({**cfg.header(), **payload}, out, sort_keys=True)
        out.write("\n")
    elif cfg.fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["key", "value"])
        for k, v in sorted(payload.items()):
            w.writerow([k, json.dumps(v, sort_keys=True)])
    else:
        out.write(f"# taquin {__version__} seed={cfg.seed} config={json.dumps(cfg.header()['config'], sort_keys=True)}\n")
        for line in text_lines:
            out.write(line + "\n")


# --- subcommands ---------------------------------------------------------------

def cmd_gen(args, cfg: RunConfig) -> int:
    labels = None
    if args.shape:
        parts = _ints(args.shape)
        P = shape(parts)
        labels = [f"({i},{j})" for i, j in shape_boxes(parts)]
    elif args.shifted:
        parts = _ints(args.shifted)
        P = shifted_shape(parts)
        labels = [f"({i},{j})" for i, j in shifted_boxes(parts)]
    elif args.tree:
        P = rooted_tree(_ints(args.tree))
    elif args.delta:
        b, n = _ints(args.delta)
        P = delta(b, n)
        labels = delta_labels(b, n)
    elif args.minuscule:
        P = minuscule(args.minuscule)
    else:
        raise UsageError("gen needs one of --shape/--shifted/--tree/--delta/--minuscule")
    data = P.to_dict()
    if labels:
        data["labels"] = labels
    text = json.dumps(data)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    return EXIT_OK


def cmd_empty(args, cfg: RunConfig) -> int:
    P = load(args.poset)
    with open(args.binumbering) as fh:
        bn = BiNumbering.from_json(json.load(fh))
    bn.validate(P)
    s = Snapshot.from_binumbering(P, bn)
    if bn.is_test:
        first, second = (TEST_A, TEST_B) if args.order == "BA" else (TEST_B, TEST_A)
        s.slide(first)
        s.slide(second)
    for b in bn.indexed():
        s.slide(b)
    red = s.red()
    lines = [f"swap bubble={h.bubble} from={h.src} to={h.dst} label={h.label}" for h in s.history]
    lines.append(json.dumps({"red": {str(k): v for k, v in sorted(red.items())}}, sort_keys=True))
    _emit(cfg, {"swaps": [list(h) for h in s.history],
                "red": {str(k): v for k, v in sorted(red.items())}}, lines)
    return EXIT_OK


def cmd_check(args, cfg: RunConfig) -> int:
    P = load(args.poset)
    payload: dict = {}
    lines: list[str] = []
    verdict = True
    if not (args.jdt or args.dcomplete or args.simultaneous):
        raise UsageError("check needs --jdt, --dcomplete or --simultaneous")
    if args.jdt:
        if args.tier == "def":
            ok = is_jdt_definition(P)
            payload["jdt"] = ok
            lines.append(f"jdt[def]={ok}")
        elif args.tier == "challenge":
            ok = is_jdt_challenges(P)
            payload["jdt"] = ok
            lines.append(f"jdt[challenge]={ok}")
        else:
            bad = find_unsolved_crucial(P)
            ok = bad is None
            payload["jdt"] = ok
            lines.append(f"jdt[crucial]={ok}")
            if bad is not None:
                payload["failing_challenge"] = bad.describe()
                lines.append("failing crucial challenge: " + json.dumps(bad.describe(), sort_keys=True))
        verdict &= ok
    if args.dcomplete:
        rep = dcomplete_report(P)
        ok = all(rep.values())
        payload["dcomplete"] = ok
        payload["d3complete"] = is_d3_complete(P)
        payload["nonoverlapping"] = is_nonoverlapping(P)
        payload["axioms"] = {ax: [repr(w) for w in v.witnesses] for ax, v in rep.items()}
        lines.append(f"dcomplete={ok}")
        for ax, v in rep.items():
            lines.append(f"  {ax}: {'pass' if v else 'FAIL'}")
            for wit in v.witnesses:
                lines.append(f"    witness {wit!r}")
        verdict &= ok
    if args.simultaneous:
        bad = find_unsimultaneous(P, strong=args.strong)
        ok = bad is None
        key = "strongly_simultaneous" if args.strong else "simultaneous"
        payload[key] = ok
        lines.append(f"{key}={ok}")
        if bad is not None:
            pair, rho, out = bad
            payload["failing"] = {"pair": list(pair), "rho": list(rho), "outcome": out.to_dict()}
            lines.append(f"failing pair={list(pair)} rho={list(rho)} condition={out.condition} at collision {out.m}")
        if args.trace:
            from .jdt import crucial_pairs, upper_set
            from .poset import linear_extensions
            from .simultaneous import acyclic_elements
            acyc = acyclic_elements(P) if args.strong else None
            traces = []
            for pair in crucial_pairs(P):
                ideal = P.full & ~upper_set(P, *pair)
                for rho in linear_extensions(P, ideal):
                    out = solve_crucial(P, pair, rho, strong=args.strong, acyclic=acyc)
                    traces.append({"pair": list(pair), "rho": list(rho), "outcome": out.to_dict()})
                    lines.append(f"pair={list(pair)} rho={list(rho)} solved={out.solved} m={out.m}")
                    for rec in out.trace:
                        lines.append(f"  collision {rec.m}: w={rec.site} x={rec.x} y={rec.y} "
                                     f"z={rec.repair_site} sigma={rec.sigma} "
                                     f"leader={rec.leader_path} fixer={rec.repair_path}")
            payload["traces"] = traces
        verdict &= ok
    _emit(cfg, payload, lines)
    return EXIT_OK if verdict else EXIT_FALSE


def cmd_fairchart(args, cfg: RunConfig) -> int:
    P = load(args.poset)
    with open(args.ext) as fh:
        ext = {int(k): int(v) for k, v in json.load(fh).items()}
    F = _ints(args.filter) if args.filter else []
    final = simulate_departure(P, ext, F)
    before = {str(k): v for k, v in sorted(ext.items())}
    after = {str(k): v for k, v in sorted(final.items())}
    _emit(cfg, {"before": before, "filter": sorted(F), "after": after},
          [f"before {json.dumps(before)}", f"filter {sorted(F)}", f"after {json.dumps(after)}"])
    return EXIT_OK


def cmd_enumerate(args, cfg: RunConfig) -> int:
    posets = enumerate_all(args.n)
    if not args.all:
        posets = [P for P in posets if is_connected(P)]
    index = write_enumeration(posets, args.out) if args.out else None
    _emit(cfg, {"n": args.n, "count": len(posets), "index": index},
          [f"n={args.n} count={len(posets)}" + (f" index={index}" if index else "")])
    return EXIT_OK


def _survey_records(n_min: int, n_max: int, threads: int) -> list[SurveyRecord]:
    records = []
    for n in range(n_min, n_max + 1):
        posets = [P for P in enumerate_all(n) if is_connected(P)]
        records.extend(survey(posets, workers=threads))
    return records


def cmd_survey(args, cfg: RunConfig) -> int:
    n_min = args.min_n or args.n
    records = _survey_records(n_min, args.n, cfg.threads)
    summary = summarize(records)
    if args.report:
        with open(args.report, "w", newline="") as fh:
            fh.write(f"# taquin {__version__} seed={cfg.seed}\n")
            w = csv.DictWriter(fh, fieldnames=SurveyRecord.columns(), lineterminator="\n")
            w.writeheader()
            for r in records:
                w.writerow(r.row())
    if args.summary:
        with open(args.summary, "w") as fh:
            json.dump({**cfg.header(), "summary": summary}, fh, sort_keys=True, indent=1)
            fh.write("\n")
    line = f"jdt={summary['jdt']} dcomplete_jdt={summary['dcomplete_jdt']} total={summary['total']}"
    _emit(cfg, {"summary": summary}, [line] + [f"{k}={v}" for k, v in summary.items()])
    return EXIT_OK


def cmd_conjecture(args, cfg: RunConfig) -> int:
    records = _survey_records(1, args.n, cfg.threads)
    rep = conjecture_scan(records, args.n)
    lines = [f"doubly_jdt={rep['doubly_jdt']} outliers={len(rep['outliers'])}"]
    lines += [f"  {cid} ~ {name}" for cid, name in rep["matched"]]
    lines += [f"  outlier {cid}" for cid in rep["outliers"]]
    _emit(cfg, rep, lines)
    return EXIT_OK if not rep["outliers"] else EXIT_FALSE


# --- argument parsing ------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="taquin", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"taquin {__version__}")
    sub = p.add_subparsers(dest="cmd", parser_class=_Parser)

    g = sub.add_parser("gen", parents=[common], help="emit a family poset as JSON")
    g.add_argument("--shape")
    g.add_argument("--shifted")
    g.add_argument("--tree", help="comma separated parent list, -1 for the root")
    g.add_argument("--delta", help="b,n")
    g.add_argument("--minuscule")
    g.add_argument("--out")

    e = sub.add_parser("empty", parents=[common], help="run an emptying and print the swap trace")
    e.add_argument("poset")
    e.add_argument("binumbering")
    e.add_argument("--order", choices=("BA", "AB"), default="BA")

    c = sub.add_parser("check", parents=[common], help="property checks")
    c.add_argument("poset")
    c.add_argument("--jdt", action="store_true")
    c.add_argument("--tier", choices=("def", "challenge", "crucial"), default="crucial")
    c.add_argument("--dcomplete", action="store_true")
    c.add_argument("--simultaneous", action="store_true")
    c.add_argument("--strong", action="store_true")
    c.add_argument("--trace", action="store_true")

    f = sub.add_parser("fairchart", parents=[common], help="simulate departures from a filter")
    f.add_argument("poset")
    f.add_argument("--ext", required=True)
    f.add_argument("--filter", default="")

    en = sub.add_parser("enumerate", parents=[common], help="connected posets up to isomorphism")
    en.add_argument("--n", type=int, required=True)
    en.add_argument("--out")
    en.add_argument("--all", action="store_true", help="include disconnected posets")

    s = sub.add_parser("survey", parents=[common], help="classify every connected poset")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--min-n", type=int)
    s.add_argument("--report")
    s.add_argument("--summary")

    cj = sub.add_parser("conjecture", parents=[common], help="doubly-jdt scan against minuscule posets")
    cj.add_argument("--n", type=int, required=True)
    return p


COMMANDS = {"gen": cmd_gen, "empty": cmd_empty, "check": cmd_check, "fairchart": cmd_fairchart,
            "enumerate": cmd_enumerate, "survey": cmd_survey, "conjecture": cmd_conjecture}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.cmd:
            raise UsageError("missing subcommand")
        if args.threads < 1:
            raise UsageError("--threads must be positive")
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
        opts = {k: v for k, v in sorted(vars(args).items())
                if k not in ("cmd", "format", "seed", "threads", "verbose")}
        cfg = RunConfig(args.cmd, args.format, args.seed, args.threads, opts)
        return COMMANDS[args.cmd](args, cfg)
    except UsageError as exc:
        sys.stderr.write(f"taquin: error: {exc}\n")
        return EXIT_USAGE
    except (PosetError, OSError, ValueError, KeyError) as exc:
        sys.stderr.write(f"taquin: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
