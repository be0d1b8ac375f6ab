"""JSON files and rendering.

An agenda file is ``{"pre_agenda": [...], "constraints": [...]}``. A
profile file wraps one together with the agents::

    {"agenda": {"pre_agenda": ["p", "q", "d"], "constraints": ["(p & q) <-> d"]},
     "agents": ["+++", "+--", {"set": "-+-", "count": 2}],
     "strict": true}

Rows are strings over ``+``, ``-`` and ``.`` (absent), or lists of
``1/-1/0``; a ``{"set": ..., "count": k}`` row stands for ``k`` identical
agents. An agenda file is a profile with no agents. Votes and
binary problems have their own shapes (see :func:`load_input`).
"""

import hashlib
import json

from .agenda import JudgmentSet, Profile, make_agenda
from .binary import BinaryProblem
from .errors import InputError
from .preferences import VoteProfile

__all__ = ["read_file", "load_input", "parse_row", "profile_from_json",
           "profile_to_json", "dumps", "render_table", "sha256_file"]


def sha256_file(path):
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def read_file(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError(f"{path}: no such file") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


_SIGN = {"+": 1, "-": -1, ".": 0}


def parse_row(row, m):
    if isinstance(row, str):
        chars = [c for c in row if not c.isspace()]
        bad = [c for c in chars if c not in _SIGN]
        if bad:
            raise InputError(f"row {row!r}: unexpected characters {''.join(bad)!r}")
        verdicts = tuple(_SIGN[c] for c in chars)
    elif isinstance(row, list) and all(isinstance(v, int) and not isinstance(v, bool)
                                       and v in (1, -1, 0) for v in row):
        verdicts = tuple(row)
    else:
        raise InputError(f"row {row!r} is neither a sign string nor a list of 1/-1/0")
    if len(verdicts) != m:
        raise InputError(f"row {row!r} has {len(verdicts)} verdicts, agenda has {m}")
    return JudgmentSet(verdicts)


def _expand_rows(rows, m):
    if not isinstance(rows, list):
        raise InputError("'agents' must be a list")
    out = []
    for row in rows:
        if isinstance(row, dict):
            if set(row) != {"set", "count"}:
                raise InputError(f"counted row {row!r} needs exactly 'set' and 'count'")
            count = row["count"]
            if not isinstance(count, int) or isinstance(count, bool) or count < 1:
                raise InputError(f"counted row {row!r}: count must be a positive integer")
            out += [parse_row(row["set"], m)] * count
        else:
            out.append(parse_row(row, m))
    return out


def agenda_from_json(data):
    if not isinstance(data, dict) or "pre_agenda" not in data:
        raise InputError("an agenda needs a 'pre_agenda' list")
    pre = data["pre_agenda"]
    gamma = data.get("constraints", [])
    if not isinstance(pre, list) or not all(isinstance(f, str) for f in pre):
        raise InputError("'pre_agenda' must be a list of formula strings")
    if not isinstance(gamma, list) or not all(isinstance(f, str) for f in gamma):
        raise InputError("'constraints' must be a list of formula strings")
    return make_agenda(pre, gamma)


def profile_from_json(data):
    agenda = agenda_from_json(data["agenda"] if "agenda" in data else data)
    strict = data.get("strict", True)
    if not isinstance(strict, bool):
        raise InputError("'strict' must be true or false")
    agents = _expand_rows(data.get("agents", []), agenda.m)
    return Profile(agenda, tuple(agents), strict)


def profile_to_json(p):
    out = {"agenda": p.agenda.to_json(), "agents": [j.signs() for j in p.agents]}
    if not p.strict:
        out["strict"] = False
    return out


def load_input(path):
    """``("profile", Profile)``, ``("votes", VoteProfile)`` or
    ``("binary", BinaryProblem)`` depending on the keys present."""
    data = read_file(path)
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object")
    try:
        if "options" in data:
            return "votes", VoteProfile(tuple(data["options"]), tuple(data.get("ballots", [])))
        if "variables" in data:
            return "binary", BinaryProblem(tuple(data["variables"]),
                                           tuple(data.get("integrity_constraints", [])),
                                           tuple(data.get("ballots", [])))
        return "profile", profile_from_json(data)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None
    except TypeError as exc:
        raise InputError(f"{path}: malformed input ({exc})") from None


def dumps(obj):
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def render_table(agenda, rows, title=None):
    """Plain +/- table with one column per issue."""
    heads = [agenda.literal_text(i, 1) for i in range(agenda.m)]
    label_w = max([len(name) for name, _ in rows] + [6])
    widths = [max(len(h), 1) for h in heads]
    lines = []
    if title:
        lines.append(title)
    lines.append(" " * label_w + " | " + "  ".join(h.center(w) for h, w in zip(heads, widths)))
    lines.append("-" * label_w + "-+-" + "--".join("-" * w for w in widths))
    for name, j in rows:
        cells = ["+" if v == 1 else "-" if v == -1 else " " for v in j.verdicts]
        lines.append(name.rjust(label_w) + " | " + "  ".join(c.center(w) for c, w in zip(cells, widths)))
    return "\n".join(lines) + "\n"
