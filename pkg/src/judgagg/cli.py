"""``ja``: command-line front end.

Every command prints one JSON report (or a +/- table with ``--format
table``). Exit codes: 0 success, 2 bad input, 3 cap exceeded,
4 precondition violated.
"""

import argparse
import os
import sys
import time
from contextlib import contextmanager

from . import __version__
from .agenda import agenda_report, majoritarian_set
from .binary import from_binary, to_binary
from .config import current_caps, default_seed, default_threads
from .domains import restricted_domain_report
from .errors import CapExceededError, InputError, JAError, PreconditionError
from .io import dumps, load_input, profile_to_json, render_table, sha256_file
from .logic import format_formula, parse_formula
from .metrics import DISTANCES, NORMS
from .preferences import GAMMA_MODES, borda, condorcet_winner, majority_graph, vote_via_ja
from .properties import PROPERTIES, compare_rules, search_counterexample
from .rules import RULE_NAMES, make_rule, tie_break

EXIT_OK, EXIT_INPUT, EXIT_CAP, EXIT_PRECONDITION = 0, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _add_rule_flags(sp, multiple=False):
    if multiple:
        sp.add_argument("--rule", action="append", required=True, choices=RULE_NAMES,
                        help="rule name; give it twice to compare two rules")
    else:
        sp.add_argument("--rule", required=True, choices=RULE_NAMES)
    sp.add_argument("--k", type=int, help="quota threshold (quota rule)")
    sp.add_argument("--premises", help="premise issues: indices or formulas, comma separated")
    sp.add_argument("--conclusions", help="conclusion issues (cbp, ecbp)")
    sp.add_argument("--distance", choices=DISTANCES)
    sp.add_argument("--norm", choices=NORMS)
    sp.add_argument("--scoring", choices=("simple", "reversal"))


def build_parser():
    p = _Parser(prog="ja", description="Judgment aggregation toolkit.")
    p.add_argument("--version", action="version", version=f"ja {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, many_inputs=False):
        if many_inputs:
            sp.add_argument("--input", nargs="*", default=[], metavar="FILE")
        else:
            sp.add_argument("--input", required=True, metavar="FILE")
        sp.add_argument("--format", choices=("json", "table"), default="json")
        sp.add_argument("--threads", type=int, default=None)
        sp.add_argument("--timing", action="store_true", help="add wall-clock time to the report")
        sp.add_argument("--max-atoms", type=int)
        sp.add_argument("--max-issues", type=int)
        sp.add_argument("--max-agents", type=int)

    sp = sub.add_parser("aggregate", help="run a rule on a profile")
    _add_rule_flags(sp)
    sp.add_argument("--tie-break", action="store_true",
                    help="keep only the first winner in canonical order")
    common(sp)

    sp = sub.add_parser("codomain", help="list the rational judgment sets of an agenda")
    common(sp)

    sp = sub.add_parser("agenda-props", help="structural properties of an agenda")
    sp.add_argument("--domains", action="store_true",
                    help="also test the profile against the restricted domains")
    common(sp)

    sp = sub.add_parser("check", help="check or search for a property violation")
    _add_rule_flags(sp)
    sp.add_argument("--property", required=True, choices=sorted(PROPERTIES))
    sp.add_argument("--bounds", help="search bounds, e.g. a=3,m=4,n=3,r=200")
    sp.add_argument("--seed", type=int)
    common(sp, many_inputs=True)

    sp = sub.add_parser("compare", help="compare two rules over bounded profiles")
    _add_rule_flags(sp, multiple=True)
    sp.add_argument("--bounds")
    sp.add_argument("--seed", type=int)
    common(sp, many_inputs=True)

    sp = sub.add_parser("vote", help="voting methods and voting through aggregation")
    sp.add_argument("--method", required=True,
                    help="condorcet, borda or via-ja:<rule>")
    sp.add_argument("--gamma", choices=GAMMA_MODES, default="tr")
    sp.add_argument("--scoring", choices=("simple", "reversal"))
    sp.add_argument("--distance", choices=DISTANCES)
    sp.add_argument("--norm", choices=NORMS)
    common(sp)

    sp = sub.add_parser("convert", help="convert between formula and binary views")
    sp.add_argument("--output", help="also write the converted document here")
    common(sp)
    return p


# -- helpers --------------------------------------------------------------------

def _issue_refs(text, agenda, flag):
    if text is None:
        return None
    out = []
    for token in filter(None, (t.strip() for t in text.split(","))):
        if token.lstrip("-").isdigit():
            i = int(token)
            if not 0 <= i < agenda.m:
                raise InputError(f"{flag}: issue index {i} out of range")
        else:
            f = parse_formula(token)
            matches = [k for k, g in enumerate(agenda.pre_agenda) if g == f]
            if not matches:
                raise InputError(f"{flag}: {token!r} is not a pre-agenda formula")
            i = matches[0]
        out.append(i)
    if not out:
        raise InputError(f"{flag} is empty")
    return sorted(set(out))


def _rule_from_args(args, agenda, name=None):
    name = name or args.rule
    premises = _issue_refs(getattr(args, "premises", None), agenda, "--premises")
    conclusions = _issue_refs(getattr(args, "conclusions", None), agenda, "--conclusions")
    rest = lambda part: [i for i in range(agenda.m) if i not in part]  # noqa: E731
    if name == "pbp" and premises is None and conclusions is not None:
        premises = rest(conclusions)
    if name in ("cbp", "ecbp") and conclusions is None and premises is not None:
        conclusions = rest(premises)
    params = {"k": getattr(args, "k", None), "d": args.distance, "norm": args.norm,
              "s": args.scoring}
    if name == "pbp":
        params["premises"] = premises
    if name in ("cbp", "ecbp"):
        params["conclusions"] = conclusions
    return make_rule(name, **params)


def _literals(agenda, j):
    return [agenda.literal_text(i, s) for i, s in j.literals()]


def _set_json(agenda, j):
    return {"signs": j.signs(), "judgments": _literals(agenda, j)}


def _outcome_json(agenda, out):
    if hasattr(out, "sets"):
        res = {"rule": out.rule_name, "kind": "irresolute", "count": len(out.sets),
               "sets": [_set_json(agenda, j) for j in out.sets]}
        if out.note:
            res["note"] = out.note
        return res
    return {"rule": out.rule_name, "kind": "partial", "consistent": out.consistent,
            "judgment": _set_json(agenda, out.judgment)}


def _single_profile(args, kind_wanted=("profile",)):
    kind, obj = load_input(args.input)
    if kind not in kind_wanted:
        raise InputError(f"{args.input}: expected a {' or '.join(kind_wanted)} file, got {kind}")
    return kind, obj


def _profiles(paths):
    out = []
    for path in paths:
        kind, obj = load_input(path)
        if kind != "profile":
            raise InputError(f"{path}: expected a profile file, got {kind}")
        out.append(obj)
    return out


@contextmanager
def _cap_overrides(args):
    saved = {}
    for flag, env in (("max_atoms", "JA_MAX_ATOMS"), ("max_issues", "JA_MAX_ISSUES"),
                      ("max_agents", "JA_MAX_AGENTS")):
        value = getattr(args, flag, None)
        if value is not None:
            if value < 1:
                raise InputError(f"--{flag.replace('_', '-')} must be positive")
            saved[env] = os.environ.get(env)
            os.environ[env] = str(value)
    try:
        yield
    finally:
        for env, old in saved.items():
            if old is None:
                os.environ.pop(env, None)
            else:
                os.environ[env] = old


# -- commands -------------------------------------------------------------------

def cmd_aggregate(args):
    _, p = _single_profile(args)
    rule = _rule_from_args(args, p.agenda)
    out = rule(p)
    if args.tie_break and hasattr(out, "sets"):
        out = tie_break(out)
    table = None
    if args.format == "table":
        rows = [(f"J{k + 1}", j) for k, j in enumerate(p.agents)]
        if hasattr(out, "sets"):
            rows += [(f"{out.rule_name}[{k}]", j) for k, j in enumerate(out.sets)]
        else:
            flag = "" if out.consistent else " (inconsistent)"
            rows.append((out.rule_name + flag, out.judgment))
        table = render_table(p.agenda, rows)
    return {"rule": rule.label, "outcome": _outcome_json(p.agenda, out)}, table


def cmd_codomain(args):
    _, p = _single_profile(args)
    agenda = p.agenda
    cod = agenda.codomain
    table = None
    if args.format == "table":
        table = render_table(agenda, [(f"#{k}", j) for k, j in enumerate(cod)])
    return {"agenda": agenda.to_json(), "count": len(cod),
            "sets": [_set_json(agenda, j) for j in cod]}, table


def cmd_agenda_props(args):
    _, p = _single_profile(args)
    res = {"agenda": p.agenda.to_json(), "report": agenda_report(p.agenda).to_json(p.agenda)}
    if p.agents:
        mp, ok = majoritarian_set(p)
        res["majority"] = {"judgment": _set_json(p.agenda, mp), "consistent": ok}
    if args.domains:
        res["domains"] = restricted_domain_report(p).to_json(p.agenda)
    return res, None


def cmd_check(args):
    profiles = _profiles(args.input)
    agenda = profiles[0].agenda if profiles else None
    rule = _rule_from_args(args, agenda) if agenda else _rule_from_args_blind(args)
    seed = default_seed() if args.seed is None else args.seed
    exhaustive = args.bounds is not None or not profiles
    v = search_counterexample(rule, args.property, args.bounds, seed, profiles,
                              threads=args.threads, domain=exhaustive)
    return {"rule": rule.label, "verdict": v.to_json()}, None


def _rule_from_args_blind(args, name=None):
    name = name or args.rule
    if name in ("pbp", "cbp", "ecbp"):
        raise InputError(f"rule {name} needs an input profile to resolve its issues")
    return make_rule(name, k=args.k, d=args.distance, norm=args.norm, s=args.scoring)


def cmd_compare(args):
    if len(args.rule) != 2:
        raise InputError("compare needs --rule exactly twice")
    profiles = _profiles(args.input)
    agenda = profiles[0].agenda if profiles else None
    rules = [_rule_from_args(args, agenda, n) if agenda else _rule_from_args_blind(args, n)
             for n in args.rule]
    seed = default_seed() if args.seed is None else args.seed
    exhaustive = args.bounds is not None or not profiles
    res = compare_rules(rules[0], rules[1], args.bounds, seed, profiles,
                        threads=args.threads, domain=exhaustive)
    return {"rules": [r.label for r in rules], "comparison": res}, None


def cmd_vote(args):
    _, v = _single_profile(args, ("votes",))
    method = args.method
    res = {"method": method, "options": list(v.options), "ballots": v.n}
    if method == "condorcet":
        w = condorcet_winner(v)
        res["majority_graph"] = majority_graph(v).to_json()
        res["winners"] = [] if w is None else [w]
    elif method == "borda":
        scores, winners = borda(v)
        res["scores"] = scores
        res["winners"] = [o for o in v.options if o in winners]
    elif method.startswith("via-ja:"):
        name = method.split(":", 1)[1]
        if name not in RULE_NAMES:
            raise InputError(f"unknown rule {name!r} in --method")
        rule = make_rule(name, d=args.distance, norm=args.norm, s=args.scoring)
        winners = vote_via_ja(v, rule, args.gamma)
        res["gamma"] = args.gamma
        res["rule"] = rule.label
        res["winners"] = [o for o in v.options if o in winners]
    else:
        raise InputError(f"unknown method {method!r}; expected condorcet, borda or via-ja:<rule>")
    return res, None


def cmd_convert(args):
    kind, obj = _single_profile(args, ("profile", "binary"))
    if kind == "profile":
        doc = to_binary(obj.agenda, obj).to_json()
        res = {"from": "logic", "to": "binary", "document": doc}
    else:
        agenda, p = from_binary(obj)
        doc = profile_to_json(p)
        doc["agenda"]["constraints"] = [format_formula(g) for g in agenda.constraints]
        res = {"from": "binary", "to": "logic", "document": doc}
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(dumps(doc))
    return res, None


COMMANDS = {
    "aggregate": cmd_aggregate,
    "codomain": cmd_codomain,
    "agenda-props": cmd_agenda_props,
    "check": cmd_check,
    "compare": cmd_compare,
    "vote": cmd_vote,
    "convert": cmd_convert,
}

# flags that never change the result and so stay out of the report
_VOLATILE = {"command", "threads", "timing", "format", "input", "output"}


def _inputs(args):
    paths = args.input if isinstance(args.input, list) else [args.input]
    return [{"file": os.path.basename(p), "sha256": sha256_file(p)} for p in paths]


def run(argv, stdout=None, stderr=None):
    """Run one command; returns the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        try:
            args = build_parser().parse_args(argv)
        except SystemExit as exc:  # --help / --version
            return int(exc.code or 0)
        if getattr(args, "threads", None) is None:
            args.threads = default_threads()
        if args.threads < 1:
            raise InputError("--threads must be at least 1")
        with _cap_overrides(args):
            start = time.perf_counter()
            result, table = COMMANDS[args.command](args)
            elapsed = (time.perf_counter() - start) * 1000.0
            caps = current_caps().as_dict()
        if table is not None:
            stdout.write(table)
            return EXIT_OK
        report = {
            "command": args.command,
            "arguments": {k: v for k, v in sorted(vars(args).items())
                          if k not in _VOLATILE and v is not None and v is not False},
            "inputs": _inputs(args),
            "caps_used": caps,
            "result": result,
        }
        if args.timing:
            report["timing_ms"] = round(elapsed, 3)
        stdout.write(dumps(report))
        return EXIT_OK
    except CapExceededError as exc:
        stderr.write(f"ja: cap exceeded: {exc}\n")
        return EXIT_CAP
    except PreconditionError as exc:
        stderr.write(f"ja: precondition violated: {exc}\n")
        return EXIT_PRECONDITION
    except InputError as exc:
        stderr.write(f"ja: input error: {exc}\n")
        return EXIT_INPUT
    except JAError as exc:
        stderr.write(f"ja: error: {exc}\n")
        return EXIT_INPUT


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
