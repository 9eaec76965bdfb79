"""Protocol automata for the shared-channel task-performing problem."""

from __future__ import annotations

from ..errors import ConfigInvalid
from .base import Automaton
from .two_lists import TwoLists
from .groups import GroupsTogether
from .robal import Robal
from .grubtech import GrubTech
from .gilet import Gilet

PROTOCOLS: dict[str, type[Automaton]] = {
    "two_lists": TwoLists,
    "groups_together": GroupsTogether,
    "robal": Robal,
    "grubtech": GrubTech,
    "gilet": Gilet,
}


def build_protocol(name: str, p: int, t: int, channel_kind: str, seed: int = 0) -> Automaton:
    if name not in PROTOCOLS:
        raise ConfigInvalid(f"unknown protocol {name!r}")
    return PROTOCOLS[name](p, t, channel_kind, seed)
