"""Enumeration caps and seeds, overridable through environment variables.

``JA_MAX_ATOMS``
    atoms in one exhaustive valuation enumeration (default 20)
``JA_MAX_ISSUES``
    issues in one codomain enumeration (default 16)
``JA_MAX_AGENTS``
    agents for factorial order searches (default 8)
``JA_SEED``
    default seed for randomized searches (default 0)
``JA_THREADS``
    worker threads for sharded searches (default 1)
"""

import os
from dataclasses import dataclass

from .errors import CapExceededError, InputError

DEFAULTS = {
    "JA_MAX_ATOMS": 20,
    "JA_MAX_ISSUES": 16,
    "JA_MAX_AGENTS": 8,
    "JA_SEED": 0,
    "JA_THREADS": 1,
}


def _env_int(name):
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return DEFAULTS[name]
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"{name} must be an integer, got {raw!r}") from None
    if value < 0:
        raise InputError(f"{name} must be non-negative, got {value}")
    return value


@dataclass(frozen=True)
class Caps:
    max_atoms: int = DEFAULTS["JA_MAX_ATOMS"]
    max_issues: int = DEFAULTS["JA_MAX_ISSUES"]
    max_agents: int = DEFAULTS["JA_MAX_AGENTS"]
    # search-space caps for the FULL rule
    full_max_agents: int = 5
    full_max_codomain: int = 16

    def as_dict(self):
        return {
            "max_atoms": self.max_atoms,
            "max_issues": self.max_issues,
            "max_agents": self.max_agents,
            "full_max_agents": self.full_max_agents,
            "full_max_codomain": self.full_max_codomain,
        }


def current_caps():
    """Caps read from the environment at call time."""
    return Caps(
        max_atoms=_env_int("JA_MAX_ATOMS"),
        max_issues=_env_int("JA_MAX_ISSUES"),
        max_agents=_env_int("JA_MAX_AGENTS"),
    )


def default_seed():
    return _env_int("JA_SEED")


def default_threads():
    return max(1, _env_int("JA_THREADS"))


def check_cap(what, size, cap):
    if size > cap:
        raise CapExceededError(f"{what}: {size} exceeds cap {cap}")
