"""Deterministic simulator and experiment harness for cooperative task
performance (Do-All) on a synchronous shared channel with crash adversaries."""

from __future__ import annotations

__version__ = "1.0.0"

from . import adversary, channel, engine, harness, poset, verify  # noqa: F401
from .protocols import PROTOCOLS, build_protocol  # noqa: F401
