"""The identity registry with verification and grid sweeps."""
from __future__ import annotations

from functools import lru_cache

from ..numerics import Precision
from .core import (
    DEFAULT_SLACK,
    FIELDS,
    DomainError,
    IdentityEntry,
    Param,
    SweepResult,
    VerifyReport,
    summarize,
    sweep_entry,
    to_csv,
    to_json,
    to_pretty,
    verify_entry,
)


@lru_cache(maxsize=None)
def _entries() -> tuple:
    from . import centries, qentries, sentries

    out = tuple(qentries.entries() + sentries.entries() + centries.entries())
    ids = [e.id for e in out]
    if len(set(ids)) != len(ids):
        raise RuntimeError("duplicate identity ids in the registry")
    return out


def registry() -> list:
    """All registered identities, in a fixed order."""
    return list(_entries())


def get(identity: str) -> IdentityEntry:
    for e in _entries():
        if e.id == identity:
            return e
    raise KeyError(f"unknown identity {identity!r}")


def verify(identity: str, binding: dict, prec: Precision | None = None,
           slack: float = DEFAULT_SLACK) -> VerifyReport:
    """Evaluate both sides at one binding and compare against the certified bounds."""
    return verify_entry(get(identity), binding, prec, slack)


def sweep(identity: str, grid: dict | None = None, prec: Precision | None = None,
          slack: float = DEFAULT_SLACK, jobs: int = 1) -> SweepResult:
    """Verify every point of ``grid`` (the entry's default grid when None)."""
    return sweep_entry(get(identity), grid, prec, slack, jobs)


__all__ = [
    "DEFAULT_SLACK", "FIELDS", "DomainError", "IdentityEntry", "Param", "SweepResult",
    "VerifyReport", "get", "registry", "summarize", "sweep", "to_csv", "to_json",
    "to_pretty", "verify",
]
