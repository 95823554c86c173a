"""Desk-scale bounds, optionally read from a ``key=value`` file.

The file named by the ``SUMTERMS_CONFIG`` environment variable may set any of
the fields of :class:`Config`, one per line.  Blank lines and lines starting
with ``#`` are ignored.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

ENV_VAR = "SUMTERMS_CONFIG"


@dataclass(frozen=True)
class Config:
    ordinal_bound: int = 64
    successor_bound: int = 10_000
    proof_bound: int = 1_000
    peano_render_cap: int = 40


def parse_config(text: str, base: Config | None = None) -> Config:
    base = base or Config()
    known = {f.name for f in fields(Config)}
    updates = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected key=value")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in known:
            raise ValueError(f"config line {lineno}: unknown key {key!r}")
        updates[key] = int(value)
    return replace(base, **updates)


_current: Config | None = None


def get_config() -> Config:
    global _current
    if _current is None:
        path = os.environ.get(ENV_VAR)
        if path:
            with open(path, encoding="utf-8") as fh:
                _current = parse_config(fh.read())
        else:
            _current = Config()
    return _current


def set_config(config: Config | None) -> None:
    """Install a configuration (``None`` re-reads the environment lazily)."""
    global _current
    _current = config
