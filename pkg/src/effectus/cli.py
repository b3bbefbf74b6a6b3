"""Command-line front end.

``effectus run-experiment FILE`` prints the joint outcome table of an
experiment file (plus any requested marginals and conditionals);
``effectus check-laws --suite NAME`` runs law suites and prints a report.

Exit codes: 0 success, 1 law failures, 2 parse errors, 3 type mismatches,
4 tolerance violations.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import measurement as ms
from .errors import (EffectusError, InvalidAlgebra, NotInstrument, ToleranceViolation,
                     TypeMismatch)
from .instances import M, Pfn, Prob, Quantum
from .instances import pfn as pfn_mod
from .instances import prob as prob_mod
from .report import Report
from .suites import INSTANCES, SUITES, RunConfig, run

EXIT_FAIL, EXIT_PARSE, EXIT_TYPE, EXIT_TOL = 1, 2, 3, 4


class ParseError(EffectusError):
    pass


# -- experiment files -----------------------------------------------------------

def make_instance(name: str, cfg: RunConfig):
    if name == "pfn":
        return Pfn(cfg.max_size)
    if name == "prob":
        return Prob()
    if name == "quantum":
        return Quantum(cfg.eps)
    raise ParseError(f"unknown instance {name!r}")


def _number(v):
    if isinstance(v, list) and len(v) == 2:
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, str):
        return float(Fraction(v))
    return float(v)


def _matrix(rows) -> np.ndarray:
    return np.array([[_number(v) for v in r] for r in rows], dtype=complex)


class ExperimentParser:
    """Turns the JSON description into tests over one instance."""

    def __init__(self, E, doc: dict):
        self.E = E
        self.doc = doc
        self.obj = self.parse_object(doc["object"])

    def parse_object(self, item):
        if self.E.name == "quantum":
            blocks = item if isinstance(item, list) else [item]
            return M(*[int(b) for b in blocks])
        if isinstance(item, list):
            raise TypeMismatch("finite-set objects are sizes, not block lists")
        return self.E.obj(int(item))

    def predicate(self, item):
        E, A = self.E, self.obj
        if E.name == "pfn":
            if not all(isinstance(v, int) for v in item):
                raise TypeMismatch("deterministic predicates are lists of points")
            return pfn_mod.predicate(A.size, set(item))
        if E.name == "prob":
            if len(item) != A.size or any(isinstance(v, list) for v in item):
                raise TypeMismatch(f"predicate does not fit {A}")
            return prob_mod.predicate(item)
        mats = [_matrix(m) for m in item]
        if [m.shape[0] for m in mats] != list(A.blocks):
            raise TypeMismatch(f"effect blocks do not fit {A}")
        return E.predicate(A, mats)

    def state(self, item):
        E, A = self.E, self.obj
        if E.name == "pfn":
            if not isinstance(item, int):
                raise TypeMismatch("deterministic states are points")
            return pfn_mod.morphism(1, A.size, [item])
        if E.name == "prob":
            if len(item) != A.size or any(isinstance(v, list) for v in item):
                raise TypeMismatch(f"state does not fit {A}")
            return prob_mod.state(item)
        if isinstance(item, dict) and "vector" in item:
            v = np.array([_number(x) for x in item["vector"]], dtype=complex)
            v = v / np.linalg.norm(v)
            mats = [np.outer(v, v.conj())] + [np.zeros((n, n)) for n in A.blocks[1:]]
        else:
            mats = [_matrix(m) for m in item]
        if [m.shape[0] for m in mats] != list(A.blocks):
            raise TypeMismatch(f"density blocks do not fit {A}")
        return E.state(A, mats)

    def prep(self, item):
        E = self.E
        if "state" in item:
            return ms.state_test(E, self.state(item["state"]))
        labels = [str(x) for x in item["labels"]]
        weights = [Fraction(w) for w in item["weights"]]
        states = [E.scale(w if E.exact else float(w), self.state(s))
                  for w, s in zip(weights, item["states"])]
        return ms.make_test(E, labels, states)

    def step(self, item):
        E = self.E
        kind = item["kind"]
        if item.get("instance", E.name) != E.name:
            raise TypeMismatch(f"{item['instance']} step inside a {E.name} experiment")
        labels = [str(x) for x in item.get("labels", [])]
        if kind in ("luders", "generalized_luders", "observable"):
            preds = [self.predicate(p) for p in item["predicates"]]
            build = {"luders": ms.luders_instrument,
                     "generalized_luders": ms.generalized_luders,
                     "observable": ms.observable}[kind]
            return build(E, labels, preds)
        if kind == "channel":
            return ms.make_test(E, [item.get("label", "*")], [self.channel(item)])
        raise ParseError(f"unknown step kind {kind!r}")

    def channel(self, item):
        E, A = self.E, self.obj
        if E.name == "quantum":
            if "kraus" not in item:
                raise TypeMismatch("quantum channels are given by Kraus operators")
            ks = [[_matrix(k) for k in block] for block in item["kraus"]]
            return E.channel(A, ks)
        if E.name == "pfn":
            if "table" not in item:
                raise TypeMismatch("deterministic channels are given by tables")
            return pfn_mod.morphism(A.size, A.size, item["table"])
        if "kernel" not in item:
            raise TypeMismatch("probabilistic channels are given by kernels")
        return prob_mod.morphism(A.size, A.size, item["kernel"])


def load_experiment(doc: dict, cfg: RunConfig, instance: str | None = None):
    try:
        name = doc["instance"]
        if instance and instance != "all" and instance != name:
            raise TypeMismatch(f"file is a {name} experiment but --instance is {instance}")
        E = make_instance(name, cfg)
        parser = ExperimentParser(E, doc)
        prep = parser.prep(doc["prep"])
        steps = [parser.step(s) for s in doc["steps"]]
    except (KeyError, IndexError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"malformed experiment: {exc!r}") from exc
    return E, prep, steps, list(doc.get("queries", ["joint"]))


def _parse_query(q: str, table: ms.ProbTable):
    if q == "joint":
        return "joint", table
    kind, _, arg = q.partition(":")
    if kind == "marginal":
        axes = [int(a) for a in arg.split(",") if a]
        return q, table.marginal(axes)
    if kind == "conditional":
        target, _, given = arg.partition("|")
        cond = {}
        for part in given.split(","):
            axis, _, label = part.partition("=")
            cond[int(axis)] = _coerce_label(table, int(axis), label)
        return q, table.conditional([int(a) for a in target.split(",")], cond)
    raise ParseError(f"unknown query {q!r}")


def _coerce_label(table, axis, label):
    for lab in table.axes[axis]:
        if str(lab) == label:
            return lab
    raise ParseError(f"label {label!r} not on axis {axis}")


def cmd_run_experiment(args) -> int:
    cfg = RunConfig(seed=args.seed, eps=args.eps, max_size=args.max_size, output=args.format)
    try:
        with open(args.file) as fh:
            doc = json.load(fh)
        E, prep, steps, queries = load_experiment(doc, cfg, args.instance)
        table = ms.run_experiment(E, prep, steps)
        results = [_parse_query(q, table) for q in queries]
    except (OSError, json.JSONDecodeError, ParseError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NotInstrument as exc:
        # quantum components only miss truth numerically
        if doc.get("instance") == "quantum":
            print(f"tolerance violation: {exc}", file=sys.stderr)
            return EXIT_TOL
        print(f"type error: {exc}", file=sys.stderr)
        return EXIT_TYPE
    except TypeMismatch as exc:
        print(f"type error: {exc}", file=sys.stderr)
        return EXIT_TYPE
    except ToleranceViolation as exc:
        print(f"tolerance violation: {exc}", file=sys.stderr)
        return EXIT_TOL
    if args.format == "json":
        out = {"seed": args.seed, "instance": E.name, "results": [
            {"query": q, "table": None if t is None else t.to_json()} for q, t in results]}
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        print(f"# seed\t{args.seed}")
        print(f"# instance\t{E.name}")
        for q, t in results:
            print(f"# {q}")
            sys.stdout.write("undefined\n" if t is None else t.to_tsv())
    return 0


# -- law checks ------------------------------------------------------------------

def cmd_check_laws(args) -> int:
    cfg = RunConfig(instance=args.instance, seed=args.seed, eps=args.eps,
                    max_size=args.max_size, output=args.format)
    reports: list[Report] = []
    if args.algebra_file:
        from .algebra import finite
        try:
            with open(args.algebra_file) as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            print(f"parse error: {exc}", file=sys.stderr)
            return EXIT_PARSE
        try:
            finite.load(doc)
            r = Report(f"algebra-file/{args.algebra_file}")
            r.law("loads", "table satisfies the effect algebra laws", "exhaustive").check(True)
            reports.append(r)
        except InvalidAlgebra as exc:
            reports.append(exc.report or _failed_report(str(exc)))
    if not args.algebra_file or args.suite != "algebra":
        reports += run(args.suite, cfg)
    ok = all(r.passed for r in reports)
    if args.format == "json":
        print(json.dumps({"seed": args.seed, "suite": args.suite, "instance": args.instance,
                          "passed": ok, "reports": [r.to_dict() for r in reports]},
                         indent=2, sort_keys=True, default=str))
    else:
        print(f"# seed\t{args.seed}")
        for r in reports:
            print(r.summary())
        print(f"# {'PASS' if ok else 'FAIL'}")
    return 0 if ok else EXIT_FAIL


def _failed_report(message):
    r = Report("algebra-file")
    r.law("loads", "table parses", "exhaustive").check(False, message)
    return r


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="effectus", description=__doc__.split("\n")[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--instance", default="all", choices=("all",) + INSTANCES)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--eps", type=_positive, default=1e-9)
    common.add_argument("--max-size", type=int, default=3)
    common.add_argument("--format", choices=("tsv", "json"), default="tsv")
    sub = p.add_subparsers(dest="command", required=True)
    ex = sub.add_parser("run-experiment", parents=[common], help="run an experiment file")
    ex.add_argument("file")
    ex.set_defaults(func=cmd_run_experiment)
    cl = sub.add_parser("check-laws", parents=[common], help="run law suites")
    cl.add_argument("--suite", default="all", choices=("all",) + SUITES)
    cl.add_argument("--algebra-file", help="effect algebra table to validate")
    cl.set_defaults(func=cmd_check_laws)
    return p


def _positive(s: str) -> float:
    v = float(s)
    if not v > 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return v


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
