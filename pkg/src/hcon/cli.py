"""Command-line entry point.

Exit codes: ``prove`` returns 0 (proved), 1 (evaluation found) or 2 (budget
exhausted).  Other outcomes: 64 usage error, 65 malformed input, 66 missing or
unreadable file, 70 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .coding import (
    check_power_code_bound, check_universe_code_bound, code_evaluation, code_formula,
    code_set, code_term, evaluation_bound,
)
from .evaluation import Evaluation, check_certificate, check_evaluation, find_evaluation
from .hierarchy import (
    DEFAULT_BIT_BUDGET, BitBudgetExceeded, DomainError, PreconditionViolated, check_lemma1,
    find_lemma2_witness, lemma2_verify, omega_iter,
)
from .normalize import to_rnnf
from .skolem import SkolemRegistry, skolemize
from .solver import ResourceLimit
from .syntax import (
    ArityError, Not, SyntaxErrorWithPos, parse_formula, parse_ground_term, print_formula,
    print_term,
)
from .theories import TheoryPreset, empty_theory, preset_idelta0, preset_q, preset_qb
from .universe import (
    BudgetExceeded, UniverseConfig, closure_levels, herbrand_model, herbrand_prove,
)

EX_USAGE, EX_DATAERR, EX_NOINPUT, EX_SOFTWARE = 64, 65, 66, 70


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EX_USAGE)


# ---------------------------------------------------------------------------
# Input files


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _content_lines(text: str) -> tuple[list[str], dict[str, str]]:
    """Non-comment lines plus ``#pin NAME: FORMULA`` directives."""
    lines, pins = [], {}
    for raw in text.splitlines():
        s = raw.strip()
        if not s:
            continue
        if s.startswith("#"):
            body = s[1:].strip()
            if body.startswith("pin "):
                name, _, formula = body[4:].partition(":")
                if not formula:
                    raise UsageError(f"bad pin directive: {raw!r}")
                pins[name.strip()] = formula.strip()
            continue
        lines.append(s)
    return lines, pins


def load_formula(path: str) -> tuple:
    lines, pins = _content_lines(_read(path))
    if not lines:
        raise UsageError(f"{path}: no formula")
    return parse_formula(" ".join(lines)), pins


def load_lambda(path: str) -> list:
    lines, _ = _content_lines(_read(path))
    return [parse_ground_term(s) for s in lines]


def load_theory(spec: str) -> TheoryPreset:
    """``q``, ``qb``, ``empty``, ``idelta0:<file>``, a file of axioms (one per
    line), or a comma-separated combination of these."""
    result: TheoryPreset | None = None
    for part in (p.strip() for p in spec.split(",") if p.strip()):
        if part == "q":
            t = preset_q()
        elif part == "qb":
            t = preset_qb()
        elif part == "empty":
            t = empty_theory()
        elif part.startswith("idelta0:"):
            theta, pins = load_formula(part[len("idelta0:"):])
            from .syntax import free_vars
            fv = free_vars(theta)
            if len(fv) != 1:
                raise UsageError("induction formula must have exactly one free variable")
            t = preset_idelta0(theta, fv[0])
            t.pins.update({k: parse_formula(v) for k, v in pins.items()})
        else:
            lines, pins = _content_lines(_read(part))
            stem = Path(part).stem
            try:
                t = TheoryPreset(stem, [(f"{stem}{i + 1}", parse_formula(s))
                                        for i, s in enumerate(lines)],
                                 {k: parse_formula(v) for k, v in pins.items()})
            except (SyntaxErrorWithPos, ArityError):
                raise
            except ValueError as e:
                raise DataError(f"{part}: {e}") from None
        if result is None:
            result = t
        else:
            # avoid duplicate axioms when presets overlap (e.g. q,idelta0:...)
            have = {ax for _, ax in result.axioms}
            extra = [(l, f) for l, f in t.axioms if f not in have]
            result = result.extend(f"{result.name}+{t.name}", extra, t.pins)
    if result is None:
        raise UsageError("empty theory specification")
    return result


def _registry(theory: TheoryPreset, pins: dict[str, str], extra_pins: list[str]) -> SkolemRegistry:
    reg = theory.registry()
    for name, text in pins.items():
        reg.pin(name, to_rnnf(parse_formula(text)))
    for item in extra_pins:
        name, sep, text = item.partition("=")
        if not sep:
            raise UsageError(f"--pin expects NAME=FORMULA, got {item!r}")
        reg.pin(name.strip(), to_rnnf(parse_formula(text)))
    return reg


def _emit(doc, as_json: bool, human: list[str]) -> None:
    if as_json:
        sys.stdout.write(json.dumps(doc, ensure_ascii=False, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write("\n".join(human) + "\n")


def _terms(ts) -> list[str]:
    return [print_term(t, unicode=True) for t in ts]


# ---------------------------------------------------------------------------
# Subcommands


def cmd_skolemize(args) -> int:
    if args.formula:
        theory = TheoryPreset("input", [("input", parse_formula(args.formula))])
        pins = {}
    elif args.file:
        f, pins = load_formula(args.file)
        theory = TheoryPreset("input", [("input", f)])
    else:
        theory, pins = load_theory(args.theory), {}
    reg = _registry(theory, pins, args.pin)
    rows = [(label, print_formula(skolemize(f, reg), unicode=True)) for label, f in theory.axioms]
    table = reg.table()
    doc = {"skolemized": [{"label": l, "formula": s} for l, s in rows],
           "symbols": [{"name": n, "arity": a, "source": src} for n, a, src in table]}
    human = [f"{l}: {s}" for l, s in rows] + [""] + [f"{n}/{a}  {src}" for n, a, src in table]
    _emit(doc, args.json, human)
    return 0


def _config(args) -> UniverseConfig:
    for name in ("max_depth", "max_terms", "max_clauses", "max_decisions"):
        v = getattr(args, name, None)
        if v is not None and v < (0 if name == "max_depth" else 1):
            raise UsageError(f"--{name.replace('_', '-')} must be positive")
    return UniverseConfig(max_depth=args.max_depth, max_terms=args.max_terms,
                          max_clauses=args.max_clauses, max_decisions=args.max_decisions,
                          seed=args.seed)


def cmd_prove(args) -> int:
    theory = load_theory(args.theory)
    goal, pins = load_formula(args.goal)
    reg = _registry(theory, pins, args.pin)
    lam = load_lambda(args.lambda_file) if args.lambda_file else None
    res = herbrand_prove(theory, goal, _config(args), reg, lam)
    doc = {"status": res.status, "stage": res.stage, "sizes": res.sizes,
           "lambda_size": len(res.lam), "reason": res.reason}
    human = [f"status: {res.status} (stage {res.stage}, |Λ| per stage {res.sizes})"]
    if res.reason:
        human.append(f"reason: {res.reason}")
    if res.certificate is not None:
        cert = res.certificate
        if not check_certificate(cert, reg):
            raise AssertionError("certificate failed its own replay")
        doc["certificate"] = cert.to_json()
        human.append("instances: " + "; ".join(cert.instance_labels()))
        human.append("derivation:")
        human.extend("  " + line for line in cert.chain_lines())
    if res.evaluation is not None and res.status == "evaluation-found":
        doc["evaluation"] = res.evaluation.to_json()
        human.append(f"classes: {len(res.evaluation.classes())}")
    _emit(doc, args.json, human)
    return res.exit_code


def cmd_eval(args) -> int:
    theory = load_theory(args.theory)
    pins: dict[str, str] = {}
    axioms = list(theory.axioms)
    if args.goal:
        goal, pins = load_formula(args.goal)
        axioms.append(("neg-goal", Not(goal)))
    reg = _registry(theory, pins, args.pin)
    lam = load_lambda(args.lambda_file)
    r = find_evaluation(axioms, lam, reg, seed=args.seed, max_decisions=args.max_decisions,
                        max_clauses=args.max_clauses)
    if isinstance(r, Evaluation):
        bad = check_evaluation(r, axioms, reg)
        if bad:
            raise AssertionError("solver returned an invalid evaluation: " + bad[0])
        doc = {"status": "sat", **r.to_json()}
        if args.model:
            doc["model"] = herbrand_model(lam, r).to_json()
        human = ["status: sat"] + [" ~ ".join(c) for c in doc["classes"]]
        human += [a for a in r.true_atoms() if " ≤ " in a]
    else:
        if not check_certificate(r, reg):
            raise AssertionError("certificate failed its own replay")
        doc = {"status": "unsat", "certificate": r.to_json()}
        human = ["status: unsat", "instances: " + "; ".join(r.instance_labels()), "derivation:"]
        human += ["  " + line for line in r.chain_lines()]
    _emit(doc, args.json, human)
    return 0


def cmd_close(args) -> int:
    lam = load_lambda(args.lambda_file)
    reg = load_theory(args.theory).registry() if args.theory else None
    if reg is not None:
        # register the theory's Skolem symbols so the closure can apply them
        for _, f in load_theory(args.theory).axioms:
            skolemize(f, reg)
    cfg = UniverseConfig(max_terms=args.max_terms)
    sizes: list[int] = []
    last = None
    partial = False
    try:
        for level in closure_levels(lam, args.k, reg, cfg):
            sizes.append(len(level))
            last = level
    except BudgetExceeded as e:
        partial = True
        last = e.partial
    doc = {"k": args.k, "sizes": sizes, "partial": partial, "terms": _terms(last)}
    human = [f"level sizes: {sizes}" + (" (budget exceeded; partial)" if partial else "")]
    human += _terms(last)
    _emit(doc, args.json, human)
    return 0


def cmd_omega(args) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    try:
        v = omega_iter(args.m, args.N, args.x, args.budget)
    except BitBudgetExceeded as e:
        print(f"omega: {e}", file=sys.stderr)
        return 2
    _emit({"m": args.m, "N": args.N, "x": str(args.x), "value": str(v)}, args.json, [str(v)])
    return 0


def cmd_lemma1(args) -> int:
    rep = check_lemma1(args.m, args.N, args.samples, args.seed, args.budget)
    doc = rep.to_json()
    human = [f"lemma1 m={args.m} N={args.N}: {len(rep.samples)} samples, "
             f"{len(rep.violations)} violations"]
    human += [f"  x of {s['x_bits']} bits: {'holds' if s['holds'] else 'FAILS'}" for s in rep.samples]
    human += [f"  skipped: {s['reason']}" for s in rep.skipped]
    _emit(doc, args.json, human)
    return 0 if rep.ok else 1


def cmd_lemma2(args) -> int:
    y = find_lemma2_witness(args.m, args.N, args.x, args.budget)
    ok = lemma2_verify(args.m, args.N, args.x, y)
    _emit({"m": args.m, "N": args.N, "x": str(args.x), "y": str(y), "verified": ok},
          args.json, [str(y)])
    return 0 if ok else 1


def cmd_code(args) -> int:
    doc: dict = {}
    human: list[str] = []
    if args.term:
        c = code_term(parse_ground_term(args.term))
        doc["term"] = str(c)
        human.append(f"term: {c}")
    if args.formula:
        c = code_formula(parse_formula(args.formula))
        doc["formula"] = str(c)
        human.append(f"formula: {c}")
    if args.lambda_file:
        lam = load_lambda(args.lambda_file)
        c = code_set(lam)
        doc["set"] = {"code_bits": c.bit_length(), "size": len(set(lam))}
        human.append(f"set: {len(set(lam))} terms, code of {c.bit_length()} bits")
        if args.bounds:
            from .evaluation import standard_evaluation
            reports = []
            for n in range(0, args.bounds + 1):
                try:
                    reports.append(check_universe_code_bound(lam, n).to_json())
                except BudgetExceeded as e:
                    reports.append({"label": f"universe n={n}", "partial": True, "reason": str(e)})
            for m in (1, 2, 3):
                reports.append(check_power_code_bound(lam, m).to_json())
            try:
                p = standard_evaluation(lam)
                reports.append(evaluation_bound(p).to_json())
                doc["evaluation_code_bits"] = code_evaluation(p).bit_length()
            except KeyError:
                pass
            doc["bounds"] = reports
            human += [json.dumps(r, ensure_ascii=False, sort_keys=True) for r in reports]
    if not doc:
        raise UsageError("code needs --term, --formula or --lambda")
    _emit(doc, args.json, human)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hcon", description="Herbrand-consistency toolkit for arithmetic.")
    p.add_argument("--version", action="version", version=f"hcon {__version__}")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def common(sp, budgets: bool = False):
        sp.add_argument("--json", action="store_true", help="emit one JSON document")
        if budgets:
            sp.add_argument("--seed", type=int, default=None)
            sp.add_argument("--max-clauses", type=int, default=2_000_000)
            sp.add_argument("--max-decisions", type=int, default=1_000_000)

    sp = sub.add_parser("skolemize", help="print Skolemized forms and the symbol table")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--theory")
    g.add_argument("--formula", help="formula text")
    g.add_argument("--file", help="formula file")
    sp.add_argument("--pin", action="append", default=[], metavar="NAME=FORMULA")
    common(sp)
    sp.set_defaults(func=cmd_skolemize)

    sp = sub.add_parser("prove", help="Herbrand prover loop")
    sp.add_argument("--theory", required=True)
    sp.add_argument("--goal", required=True)
    sp.add_argument("--max-depth", type=int, default=2)
    sp.add_argument("--max-terms", type=int, default=200)
    sp.add_argument("--lambda", dest="lambda_file")
    sp.add_argument("--pin", action="append", default=[], metavar="NAME=FORMULA")
    common(sp, budgets=True)
    sp.set_defaults(func=cmd_prove)

    sp = sub.add_parser("eval", help="search for an evaluation on a term set")
    sp.add_argument("--theory", required=True)
    sp.add_argument("--lambda", dest="lambda_file", required=True)
    sp.add_argument("--goal", help="add the negation of this goal")
    sp.add_argument("--model", action="store_true", help="include the quotient structure")
    sp.add_argument("--pin", action="append", default=[], metavar="NAME=FORMULA")
    common(sp, budgets=True)
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("close", help="closure of a term set")
    sp.add_argument("--lambda", dest="lambda_file", required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--theory", help="include this theory's Skolem symbols")
    sp.add_argument("--max-terms", type=int, default=100_000)
    common(sp)
    sp.set_defaults(func=cmd_close)

    sp = sub.add_parser("omega", help="omega_m^N(x)")
    sp.add_argument("m", type=int)
    sp.add_argument("x", type=int)
    sp.add_argument("--N", type=int, default=1)
    sp.add_argument("--budget", type=int, default=DEFAULT_BIT_BUDGET)
    common(sp)
    sp.set_defaults(func=cmd_omega)

    sp = sub.add_parser("check-lemma1", help="sample the first omega lemma")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--samples", type=int, default=4)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--budget", type=int, default=DEFAULT_BIT_BUDGET)
    common(sp)
    sp.set_defaults(func=cmd_lemma1)

    sp = sub.add_parser("lemma2-witness", help="constructive witness for the second omega lemma")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--x", type=int, required=True)
    sp.add_argument("--budget", type=int, default=DEFAULT_BIT_BUDGET)
    common(sp)
    sp.set_defaults(func=cmd_lemma2)

    sp = sub.add_parser("code", help="Gödel codes and bound measurements")
    sp.add_argument("--term")
    sp.add_argument("--formula")
    sp.add_argument("--lambda", dest="lambda_file")
    sp.add_argument("--bounds", type=int, default=None, metavar="N",
                    help="measure closure code bounds up to level N (<= 3)")
    common(sp)
    sp.set_defaults(func=cmd_code)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"hcon: {e}", file=sys.stderr)
        return EX_USAGE
    except (PreconditionViolated, DomainError) as e:
        print(f"hcon: {e}", file=sys.stderr)
        return EX_USAGE
    except (SyntaxErrorWithPos, ArityError, DataError) as e:
        print(f"hcon: malformed input: {e}", file=sys.stderr)
        return EX_DATAERR
    except (FileNotFoundError, IsADirectoryError, PermissionError) as e:
        print(f"hcon: {e}", file=sys.stderr)
        return EX_NOINPUT
    except ResourceLimit as e:
        print(f"hcon: {e}", file=sys.stderr)
        return 2
    except Exception as e:  # invariant violations and bugs
        print(f"hcon: internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EX_SOFTWARE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
