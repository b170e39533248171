"""The canonical connection-configuration registry and its transform adapters.

Raw configurations assign a type in {0,1,2} to every connection of a
candidate polygon.  Cyclic relabelings of the four extreme segments solve the
same problem with permuted arguments, and reflecting the instance across the
y-axis reverses the code, so only 47 canonical configurations remain:
21 four-connection, 18 three-connection, 5 two-connection with one regular
connection, and 3 two-connection with both connections skipping one segment.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .extremes import Role, ROLE_CYCLE
from .chains import ChainId


class Family(enum.Enum):
    FOUR = "four"
    THREE = "three"
    TWO_ONE_REGULAR = "two_one_regular"
    TWO_BOTH_BYPASS = "two_both_bypass"


@dataclass(frozen=True)
class InstanceFrame:
    """How to map a concrete situation onto its canonical solver: rotate the
    role assignment cyclically `rotation` steps, optionally mirroring first."""
    rotation: int = 0
    mirror: bool = False


@dataclass(frozen=True)
class Configuration:
    family: Family
    code: str
    bypass_note: str = ""

    def __str__(self):
        tag = f" [{self.bypass_note}]" if self.bypass_note else ""
        return f"{self.family.value}:{self.code}{tag}"


# the 24 cyclically-distinct four-connection codes, as published
FOUR_TABLE = (
    "0000", "1111", "2222", "0111", "0222", "1222",
    "1100", "2200", "1122", "0101", "0202", "1212",
    "0001", "0002", "1112", "0012", "1012", "0122",
    "1020", "1120", "1202", "0021", "1102", "0221",
)
# reflection merges three pairs of the 24; the kept representative is first
FOUR_MIRROR_MERGES = {"0021": "0012", "0221": "0122", "1102": "1120"}

# the 18 reflection-distinct three-connection codes, as published
THREE_TABLE = (
    "000", "010", "020", "001", "011", "021",
    "002", "012", "022", "101", "111", "121",
    "102", "112", "122", "202", "212", "222",
)

TWO_ONE_CODES = ("02", "12", "20", "21", "22")     # (regular, bypassing) types
TWO_BOTH_CODES = ("02", "12", "22")


def _rot(code: str, k: int) -> str:
    k %= len(code)
    return code[-k:] + code[:-k] if k else code


def _dihedral_images(code: str):
    for m in (False, True):
        base = code[::-1] if m else code
        for k in range(len(code)):
            yield _rot(base, k), InstanceFrame(rotation=k, mirror=m)


def _build_four_maps():
    canonical = [c for c in FOUR_TABLE if c not in FOUR_MIRROR_MERGES]
    canon_set = set(canonical)
    to_canon: dict[str, tuple[str, InstanceFrame]] = {}
    orbits: dict[str, set[str]] = {c: set() for c in canonical}
    for digits in itertools.product("012", repeat=4):
        code = "".join(digits)
        found = None
        for img, frame in _dihedral_images(code):
            if img in canon_set:
                found = (img, frame)
                break
        if found is None:
            raise AssertionError(f"code {code} reaches no canonical representative")
        to_canon[code] = found
        orbits[found[0]].add(code)
    return canonical, to_canon, orbits


_FOUR_CANONICAL, _FOUR_TO_CANON, _FOUR_ORBITS = _build_four_maps()


def _validate_three_table():
    reps = {min(c, c[::-1]) for c in ("".join(d) for d in itertools.product("012", repeat=3))}
    if reps != set(THREE_TABLE):
        raise AssertionError("three-connection table disagrees with reversal orbits")


_validate_three_table()


def canonical_code(code: str, family: Family) -> tuple[str, InstanceFrame]:
    """Canonical representative of a configuration code plus the transform
    (mirror first, then rotate) that reaches it."""
    if any(ch not in "012" for ch in code):
        raise ValueError(f"invalid configuration code {code!r}")
    if family is Family.FOUR:
        if len(code) != 4:
            raise ValueError("four-connection codes have length 4")
        return _FOUR_TO_CANON[code]
    if family is Family.THREE:
        if len(code) != 3:
            raise ValueError("three-connection codes have length 3")
        rev = code[::-1]
        if code <= rev:
            return code, InstanceFrame()
        return rev, InstanceFrame(mirror=True)
    if family is Family.TWO_ONE_REGULAR:
        if len(code) != 2:
            raise ValueError("two-connection codes have length 2")
        return code, InstanceFrame()
    if family is Family.TWO_BOTH_BYPASS:
        if len(code) != 2:
            raise ValueError("two-connection codes have length 2")
        rev = code[::-1]
        if code <= rev:
            return code, InstanceFrame()
        return rev, InstanceFrame(mirror=True)
    raise ValueError(f"unknown family {family}")


def orbit_members(code: str, family: Family) -> tuple[str, ...]:
    if family is Family.FOUR:
        canon, _ = canonical_code(code, family)
        return tuple(sorted(_FOUR_ORBITS[canon]))
    if family in (Family.THREE, Family.TWO_BOTH_BYPASS):
        canon, _ = canonical_code(code, family)
        return tuple(sorted({canon, canon[::-1]}))
    return (code,)


def enumerate_canonical() -> list[Configuration]:
    """All 47 canonical configurations: 21 + 18 + 5 + 3."""
    out: list[Configuration] = []
    for c in _FOUR_CANONICAL:
        out.append(Configuration(Family.FOUR, c))
    for c in THREE_TABLE:
        out.append(Configuration(Family.THREE, c, "one segment skipped"))
    for c in TWO_ONE_CODES:
        out.append(Configuration(Family.TWO_ONE_REGULAR, c,
                                 "second connection skips two segments"))
    for c in TWO_BOTH_CODES:
        out.append(Configuration(Family.TWO_BOTH_BYPASS, c,
                                 "each connection skips one segment"))
    return out


def registry_text() -> str:
    lines = ["family        code  orbit members"]
    for cfg in enumerate_canonical():
        members = ", ".join(orbit_members(cfg.code, cfg.family))
        lines.append(f"{cfg.family.value:<13} {cfg.code:<5} {members}")
    lines.append(f"total: {len(enumerate_canonical())} configurations")
    return "\n".join(lines)


_EXTREME_ORDER = (Role.TOP, Role.LEFT, Role.BOTTOM, Role.RIGHT)
_CHAIN_ORDER = (ChainId.RB, ChainId.RT, ChainId.LT, ChainId.LB)
_MIRROR_CHAIN = {ChainId.RB: ChainId.LB, ChainId.LB: ChainId.RB,
                 ChainId.RT: ChainId.LT, ChainId.LT: ChainId.RT}


def apply_frame(frame: InstanceFrame, extreme_args: Sequence, chain_args: Sequence,
                mirror_point=None):
    """Permute solver arguments for an isomorphic/symmetric invocation.

    Rotation shifts the four extreme-segment arguments and the four chain
    arguments cyclically; mirroring maps points across the y-axis via the
    supplied callback and swaps the left/right chain roles.  Outputs computed
    under a mirrored frame must be reflected back by the caller.
    """
    ext = list(extreme_args)
    chn = list(chain_args)
    if len(ext) != 4 or len(chn) != 4:
        raise ValueError("expected four extreme and four chain arguments")
    if frame.mirror:
        if mirror_point is not None:
            ext = [mirror_point(e) for e in ext]
            chn = [mirror_point(c) for c in chn]
        # under reflection the upper-left bound swaps with the upper-right one
        chn = [chn[3], chn[2], chn[1], chn[0]]
        ext = [ext[0], ext[3], ext[2], ext[1]]
    k = frame.rotation % 4
    ext = ext[k:] + ext[:k]
    chn = chn[k:] + chn[:k]
    return tuple(ext), tuple(chn)
