"""The built-in verification corpus: small groups exercising every theorem
branch (supersoluble, minimal-normal, non-soluble, quaternion, homogeneous
module cases) at desk scale.

Entries are (name, construction directive); directives round-trip through
the group-file grammar. Groups are built lazily and cached per corpus
instance so repeated checks share all per-group caches.
"""

from __future__ import annotations

from .config import Caps, DEFAULT_CAPS
from .groupfile import build_directive

# A acts irreducibly on F_2^2 (order 3); B acts irreducibly on F_3^2 (order 4).
_A = "0,1,1,1"
_DIAG_AA = "0,1,0,0,1,1,0,0,0,0,0,1,0,0,1,1"
_B = "0,2,1,0"
_DIAG_BB = "0,2,0,0,1,0,0,0,0,0,0,2,0,0,1,0"
# companion matrix of x^4+x^3+x^2+x+1 over F_2 (order 5)
_C5ON16 = "0,0,0,1,1,0,0,1,0,1,0,1,0,0,1,1"

BUILTIN_ENTRIES = (
    ("C1", "trivial"),
    ("C2", "cyclic:2"),
    ("C4", "cyclic:4"),
    ("C6", "cyclic:6"),
    ("C8", "cyclic:8"),
    ("C12", "cyclic:12"),
    ("V4", "elemab:2:2"),
    ("C2^3", "elemab:2:3"),
    ("C3^2", "elemab:3:2"),
    ("S3", "sym:3"),
    ("D8", "dihedral:8"),
    ("Q8", "quaternion:8"),
    ("D16", "dihedral:16"),
    ("Q16", "quaternion:16"),
    ("SD16", "semidihedral:16"),
    ("A4", "alt:4"),
    ("Dic3", "quaternion:12"),
    ("C3:C8", "sdp:3:1:2:8"),
    ("S4", "sym:4"),
    ("SL(2,3)", "linear:3:2:0,2,1,0;1,1,0,1"),
    ("A4xC2", "sdp:2:3:0,1,0,1,1,0,0,0,1:3"),
    ("S3xS3", "dp:sym:3xsym:3"),
    ("C3^2:C4", f"sdp:3:2:{_B}:4"),
    ("C3^2:C2", "sdp:3:2:2,0,0,2:2"),
    ("C2^4:C3", f"sdp:2:4:{_DIAG_AA}:3"),
    ("F20", "sdp:5:1:2:4"),
    ("D10", "dihedral:10"),
    ("C7:C3", "sdp:7:1:2:3"),
    ("A5", "alt:5"),
    ("C5^2:C3", "sdp:5:2:0,4,1,4:3"),
    ("C2^4:C5", f"sdp:2:4:{_C5ON16}:5"),
    ("GL(3,2)", "linear:2:3:0,0,1,1,0,0,0,1,0;1,1,0,0,1,0,0,0,1"),
    ("F7^2:S3", "affine:7:2:0,6,1,6;0,1,1,0"),
    ("C3^4:C4", f"sdp:3:4:{_DIAG_BB}:4"),
)


class Corpus:
    """Named group constructors with shared caps and lazy construction."""

    def __init__(self, entries=BUILTIN_ENTRIES, caps: Caps = DEFAULT_CAPS):
        names = [n for n, _ in entries]
        if len(set(names)) != len(names):
            raise ValueError("corpus names must be unique")
        self.entries = tuple(entries)
        self.caps = caps
        self._built: dict = {}

    def names(self):
        return [n for n, _ in self.entries]

    def group(self, name: str):
        if name not in self._built:
            directive = dict(self.entries)[name]
            g = build_directive(directive, self.caps)
            g.name = name
            self._built[name] = g
        return self._built[name]

    def __iter__(self):
        for name, _ in self.entries:
            yield name, self.group(name)

    def __len__(self):
        return len(self.entries)


def builtin_corpus(caps: Caps = DEFAULT_CAPS) -> Corpus:
    return Corpus(BUILTIN_ENTRIES, caps)
