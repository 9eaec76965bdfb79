"""Round-resolution semantics of the shared channel.

Three variants are supported.  Without collision detection the channel
cannot tell "nobody spoke" from "several spoke at once": both come out as
silence.  With collision detection a distinct collision signal appears.  A
beeping channel only reports whether anyone transmitted at all.

Feedback values are plain tuples so the simulation hot path stays cheap:
``("silence",)``, ``("single", payload)``, ``("collision",)``, ``("beep",)``.
"""

from __future__ import annotations

from typing import Sequence

from .errors import InvalidPair

NOCD = "nocd"
CD = "cd"
BEEPING = "beeping"

CHANNEL_KINDS = (NOCD, CD, BEEPING)

SILENCE = ("silence",)
COLLISION = ("collision",)
BEEP = ("beep",)

# Crash-echo pair outcomes
PROGRESS = "progress"
LEADER_ONLY = "leader_only"
LEADER_LOST = "leader_lost"


def resolve(kind: str, transmissions: Sequence[tuple[int, object]]) -> tuple:
    """Feedback heard by every operational station this round.

    ``transmissions`` lists (station, payload) pairs of stations that
    actually transmit (crashed stations must already be filtered out).
    """
    n = len(transmissions)
    if kind == BEEPING:
        return BEEP if n >= 1 else SILENCE
    if n == 0:
        return SILENCE
    if n == 1:
        return ("single", transmissions[0][1])
    return COLLISION if kind == CD else SILENCE


def is_noisy(feedback: tuple) -> bool:
    """True for any signal distinguishable from background noise."""
    return feedback[0] in ("single", "collision", "beep")


def classify_crash_echo(first: tuple, second: tuple, leader_home_group: bool,
                        strict_removal: bool = False) -> str:
    """Classify a two-round echo pair from a channel without collision detection.

    Round one is the scheduled group plus the leader, round two the leader
    alone.  A loud second round proves the leader lived through both rounds,
    so a silent first round must have been a collision: the group made
    progress.  Loud-loud means only the leader spoke; that is progress when
    the scheduled group is the leader's own group (it performed those tasks
    itself), group loss otherwise.  ``strict_removal`` drops the home-group
    exception and always treats loud-loud as group loss.
    A silent second round means the leader is gone.
    """
    for fb in (first, second):
        if fb[0] not in ("silence", "single"):
            raise InvalidPair(f"{fb[0]} signal is not possible without collision detection")
    if second[0] == "silence":
        return LEADER_LOST
    if first[0] == "silence":
        return PROGRESS
    if leader_home_group and not strict_removal:
        return PROGRESS
    return LEADER_ONLY
