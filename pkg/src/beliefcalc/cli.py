"""Command-line interface: ``beliefcalc <command> ...``.

Exit codes: 0 on success, 1 when a check finds a violation or mismatch (or a
model is invalid), 2 on usage errors such as unreadable input or unknown
labels.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .betting import B2STAR, P2, BetFamily, Verdict, check_family, find_violation
from .combination import dempster_combine
from .conditioning import condition_mass, conditional_belief
from .credal import compatible_conditional_lower, fh_conditional_lower, lower_probability, upper_probability
from .errors import BeliefError, ParseError, UnknownLabel, UnknownScenario
from .expectation import lower_expectation, simulate_lln
from .frame import Frame, SubsetMask
from .io import Model, is_price_document, load_model, load_prices, save_model
from .mass import MassFunction, belief, belief_table, plausibility
from .numeric import FLOAT, RATIONAL, format_scalar, parse_scalar, to_scalar
from .products import LEFT, RIGHT, independent_product, marginal
from .scenarios import REGISTRY, run_scenario

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def split_labels(text: str) -> list[str]:
    """Split ``a,b`` on top-level commas so pair labels like ``(h,t)`` survive."""
    text = text.strip()
    if text.startswith("{") and text.endswith("}"):
        text = text[1:-1]
    out, depth, current = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(current).strip())
            current = []
        else:
            current.append(ch)
    tail = "".join(current).strip()
    if tail or out:
        out.append(tail)
    return out


def subset_arg(frame: Frame, text: str) -> SubsetMask:
    return frame.mask(split_labels(text))


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _model(path: str, numeric: str) -> Model:
    try:
        return load_model(_read(path), numeric)
    except BeliefError as exc:
        if exc.locus and not exc.locus.startswith(path):
            exc.locus = f"{path}: {exc.locus}"
        elif not exc.locus:
            exc.locus = path
        raise


def _show(value) -> str:
    return format_scalar(value)


def _table(mass: MassFunction) -> list[tuple[str, str]]:
    return [(mass.frame.format(c), _show(v)) for c, v in mass.raw().items()]


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))


def _mass_lines(mass: MassFunction) -> list[str]:
    rows = _table(mass)
    width = max((len(s) for s, _ in rows), default=3)
    return [f"{s:<{width}}  {v}" for s, v in rows]


def _mass_payload(mass: MassFunction) -> list[dict]:
    return [{"set": mass.frame.labels(c), "mass": _show(v)} for c, v in mass.raw().items()]


# commands
def cmd_validate(args) -> int:
    model = _model(args.model, args.numeric)
    m = model.mass
    _emit(args, {"valid": True, "frame": list(m.frame.names), "masses": _mass_payload(m)},
          [f"valid: {len(m)} focal sets on {m.frame.size} outcomes", *_mass_lines(m)])
    return EXIT_OK


def cmd_belief(args) -> int:
    m = _model(args.model, args.numeric).mass
    a = subset_arg(m.frame, args.set)
    b, pl = belief(m, a), plausibility(m, a)
    _emit(args, {"set": m.frame.labels(a), "belief": _show(b), "plausibility": _show(pl)},
          [f"B({m.frame.format(a)}) = {_show(b)}", f"Pl({m.frame.format(a)}) = {_show(pl)}"])
    return EXIT_OK


def cmd_condition(args) -> int:
    m = _model(args.model, args.numeric).mass
    h = subset_arg(m.frame, args.on)
    m_h = condition_mass(m, h)
    payload = {"on": m.frame.labels(h), "masses": _mass_payload(m_h)}
    lines = [f"conditioned on {m.frame.format(h)}:", *_mass_lines(m_h)]
    if args.query is not None:
        a = subset_arg(m.frame, args.query)
        value = conditional_belief(m, h, a)
        payload["query"] = {"set": m.frame.labels(a), "belief": _show(value)}
        lines.append(f"B_{m.frame.format(h)}({m.frame.format(a)}) = {_show(value)}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_marginal(args) -> int:
    m = _model(args.model, args.numeric).mass
    out = marginal(m, args.axis)
    if args.json:
        print(json.dumps({"axis": args.axis, "frame": list(out.frame.names), "masses": _mass_payload(out)}, indent=2))
    else:
        print(save_model(out), end="")
    return EXIT_OK


def _two_models(args) -> tuple[MassFunction, MassFunction]:
    return _model(args.first, args.numeric).mass, _model(args.second, args.numeric).mass


def cmd_product(args) -> int:
    m1, m2 = _two_models(args)
    print(save_model(independent_product(m1, m2)), end="")
    return EXIT_OK


def cmd_dempster(args) -> int:
    m1, m2 = _two_models(args)
    print(save_model(dempster_combine(m1, m2)), end="")
    return EXIT_OK


def cmd_credal(args) -> int:
    m = _model(args.model, args.numeric).mass
    a = subset_arg(m.frame, args.lower)
    if args.given is None:
        low, high = lower_probability(m, a), upper_probability(m, a)
        _emit(args, {"set": m.frame.labels(a), "lower": _show(low), "upper": _show(high)},
              [f"lower P({m.frame.format(a)}) = {_show(low)}", f"upper P({m.frame.format(a)}) = {_show(high)}"])
        return EXIT_OK
    h = subset_arg(m.frame, args.given)
    value = fh_conditional_lower(m, a, h) if args.mode == "fh" else compatible_conditional_lower(m, a, h)
    _emit(args, {"set": m.frame.labels(a), "given": m.frame.labels(h), "mode": args.mode, "lower": _show(value)},
          [f"lower P({m.frame.format(a)} | {m.frame.format(h)}) [{args.mode}] = {_show(value)}"])
    return EXIT_OK


def _rv(model: Model, name: str):
    if name not in model.random_variables:
        known = ", ".join(model.random_variables) or "none"
        raise UsageError(f"no random variable named {name!r} (known: {known})")
    return model.random_variables[name]


def cmd_expect(args) -> int:
    model = _model(args.model, args.numeric)
    value = lower_expectation(model.mass, _rv(model, args.rv))
    _emit(args, {"rv": args.rv, "expectation": _show(value)}, [f"E({args.rv}) = {_show(value)}"])
    return EXIT_OK


def cmd_lln(args) -> int:
    model = _model(args.model, args.numeric)
    try:
        eps = to_scalar(parse_scalar(args.eps), args.numeric)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = simulate_lln(model.mass, _rv(model, args.rv), args.n, args.trials, eps, args.seed, exact=args.exact)
    payload = {
        "n": report.n,
        "trials": report.trials,
        "epsilon": _show(eps),
        "expectation": _show(report.expectation),
        "empirical_lower": report.empirical_lower,
        "empirical_upper": report.empirical_upper,
        "seed": report.seed,
        "generator": report.generator,
    }
    lines = [
        f"E = {_show(report.expectation)}, n = {report.n}, trials = {report.trials}, eps = {_show(eps)}",
        f"fraction with mean >= E - eps: {report.empirical_lower}",
        f"fraction with mean >= E + eps: {report.empirical_upper}",
    ]
    if args.exact:
        payload["exact_lower"] = float(report.exact_lower)
        payload["exact_upper"] = float(report.exact_upper)
        lines.append(f"exact beliefs: {float(report.exact_lower):.6g}, {float(report.exact_upper):.6g}")
    lines.append(f"seed {report.seed} ({report.generator})")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_bets(args) -> int:
    text = _read(args.model)
    if is_price_document(text):
        prices = load_prices(text, args.numeric).prices
    else:
        prices = belief_table(load_model(text, args.numeric).mass)
    frame = prices.frame
    if args.find:
        found = find_violation(prices, args.max_bets, args.mode)
        if found is None:
            _emit(args, {"mode": args.mode, "violation": None},
                  [f"no {args.mode} violation with at most {args.max_bets} bets per side"])
            return EXIT_OK
        buys, sells = found.bits(frame)
        _emit(args, {"mode": args.mode, "violation": {"buys": [frame.labels(b) for b in buys],
                                                       "sells": [frame.labels(s) for s in sells]}},
              [f"{args.mode} violation: {found.describe(frame)}"])
        return EXIT_FAIL
    if not args.buy and not args.sell:
        raise UsageError("give --find or a family via --buy/--sell")
    family = BetFamily(tuple(subset_arg(frame, b) for b in args.buy), tuple(subset_arg(frame, s) for s in args.sell))
    verdict = check_family(prices, family, args.mode)
    _emit(args, {"mode": args.mode, "verdict": verdict.value}, [f"{args.mode}: {verdict.value}"])
    return EXIT_FAIL if verdict is Verdict.VIOLATION else EXIT_OK


def cmd_scenario(args) -> int:
    names = list(REGISTRY) if args.name == "all" else [args.name]
    p = None
    if args.p is not None:
        try:
            p = parse_scalar(args.p)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    reports = [run_scenario(n, p) for n in names]
    if args.json:
        print(json.dumps([r.to_dict() for r in reports], indent=2))
    else:
        for r in reports:
            print(f"{'PASS' if r.passed else 'FAIL'}  {r.name} ({r.tolerance}, parameter {_fmt(r.parameter)})")
            for c in r.checks:
                mark = "ok " if c.passed else "BAD"
                print(f"   {mark} {c.name}: expected {_fmt(c.expected)}, got {_fmt(c.actual)}")
                if not c.passed:
                    print(f"       {c.note}")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _fmt(value) -> str:
    if isinstance(value, (Fraction, float)):
        return format_scalar(value)
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_fmt(v) for v in value) + "]"
    if isinstance(value, SubsetMask):
        return f"mask {value.bits:#b}"
    return str(value)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--numeric", choices=[RATIONAL, FLOAT], default=argparse.SUPPRESS,
                        help="exact fractions (default) or floats")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")

    parser = argparse.ArgumentParser(prog="beliefcalc", description="Belief-function calculator.", parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        p.set_defaults(func=func)
        return p

    p = add("validate", cmd_validate, "check that a model document is a valid mass function")
    p.add_argument("model")
    p = add("belief", cmd_belief, "belief and plausibility of a set")
    p.add_argument("model")
    p.add_argument("--set", required=True, help="comma-separated labels")
    p = add("condition", cmd_condition, "condition a model on an event")
    p.add_argument("model")
    p.add_argument("--on", required=True)
    p.add_argument("--query")
    p = add("marginal", cmd_marginal, "marginal of a model on a product frame")
    p.add_argument("model")
    p.add_argument("--axis", choices=[LEFT, RIGHT], required=True)
    p = add("product", cmd_product, "independent product of two models")
    p.add_argument("first")
    p.add_argument("second")
    p = add("dempster", cmd_dempster,
            "Dempster's rule of combination (reference/critique only; not used for inference)")
    p.add_argument("first")
    p.add_argument("second")
    p = add("credal", cmd_credal, "lower probabilities over the compatible distributions")
    p.add_argument("model")
    p.add_argument("--lower", required=True, help="event A")
    p.add_argument("--given", help="conditioning event H")
    p.add_argument("--mode", choices=["fh", "compatible"], default="fh",
                   help="fh: all compatible distributions; compatible: those with P(H^c) = B(H^c)")
    p = add("expect", cmd_expect, "lower expectation of a random variable")
    p.add_argument("model")
    p.add_argument("--rv", required=True)
    p = add("lln", cmd_lln, "Monte Carlo check of the weak law of large numbers")
    p.add_argument("model")
    p.add_argument("--rv", required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--eps", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--exact", action="store_true", help="also compute the exact beliefs")
    p = add("bets", cmd_bets, "betting coherence of prices (a price document or a model's belief table)")
    p.add_argument("model")
    p.add_argument("--mode", choices=[P2, B2STAR], required=True)
    p.add_argument("--find", action="store_true", help="search for a violating family")
    p.add_argument("--max-bets", type=int, default=2)
    p.add_argument("--buy", action="append", default=[], help="a set to buy (repeatable)")
    p.add_argument("--sell", action="append", default=[], help="a set to sell (repeatable)")
    p = add("scenario", cmd_scenario, "run a registered worked example, or all of them")
    p.add_argument("name", help="scenario name or 'all'")
    p.add_argument("--p", help="override the scenario parameter")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.numeric = getattr(args, "numeric", RATIONAL)
    args.json = getattr(args, "json", False)
    try:
        return args.func(args)
    except (UsageError, ParseError, UnknownLabel, UnknownScenario) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BeliefError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
