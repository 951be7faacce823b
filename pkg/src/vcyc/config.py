"""Brute-force caps, overridable through ``VCYC_CAPS`` or the CLI ``--caps`` flag."""
from __future__ import annotations

import contextlib
import os
from contextvars import ContextVar
from dataclasses import dataclass, fields, replace

from .errors import ParseError


@dataclass(frozen=True)
class Caps:
    subgroup_order: int = 64
    automorphism_order: int = 16
    brute_force_nodes: int = 20
    semidirect_order: int = 64
    corpus_order: int = 8

    def updated(self, text: str | None) -> "Caps":
        """Return a copy with ``k=v,k=v`` overrides applied."""
        if not text:
            return self
        names = {f.name for f in fields(self)}
        changes = {}
        for item in text.split(","):
            item = item.strip()
            if not item:
                continue
            key, sep, value = item.partition("=")
            key = key.strip().replace("-", "_")
            if not sep or key not in names:
                raise ParseError(f"bad cap override {item!r}", field="caps")
            try:
                changes[key] = int(value)
            except ValueError:
                raise ParseError(f"cap {key} needs an integer, got {value!r}", field="caps") from None
            if changes[key] < 0:
                raise ParseError(f"cap {key} must be non-negative", field="caps")
        return replace(self, **changes)


_active: ContextVar[Caps | None] = ContextVar("vcyc_caps", default=None)


def default_caps() -> Caps:
    """Caps installed by ``using_caps``, else the defaults updated from ``VCYC_CAPS``."""
    active = _active.get()
    if active is not None:
        return active
    return Caps().updated(os.environ.get("VCYC_CAPS"))


@contextlib.contextmanager
def using_caps(caps: Caps):
    token = _active.set(caps)
    try:
        yield caps
    finally:
        _active.reset(token)
