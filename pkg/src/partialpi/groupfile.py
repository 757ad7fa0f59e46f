"""Group definition files and construction directives.

File grammar (UTF-8, LF or CRLF, '#' comments):

    group <name>
    degree <n>
    gen <cycle notation>     # one generator per line
    end

or, instead of degree/gen lines, a single construction directive:

    group <name>
    build <directive>
    end

Directives: trivial | cyclic:n | sym:n | alt:n | dihedral:order |
quaternion:order (dicyclic) | semidihedral:order | elemab:p:k |
sdp:p:k:a11,a12,...:m (row-major matrix acting on (C_p)^k) |
affine:p:k:mat;mat;... (vector group extended by a matrix group) |
linear:p:k:mat;mat;... (matrix group on nonzero vectors) |
dp:spec x spec (direct product; the parts must not themselves be dp).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import Caps, DEFAULT_CAPS
from .errors import ParseError
from .groups import (
    Group,
    alternating,
    cyclic,
    dicyclic,
    dihedral,
    direct_product,
    elementary_abelian,
    group_from_generators,
    matrix_group_on_nonzero_vectors,
    semidihedral,
    semidirect_product,
    symmetric,
    trivial_group,
    vector_action_group,
)
from .perms import parse_cycles


@dataclass
class GroupSpecFile:
    name: str
    degree: int | None = None
    generator_lines: list = field(default_factory=list)  # (line_no, text)
    directive: str | None = None

    def build(self, caps: Caps = DEFAULT_CAPS) -> Group:
        if self.directive is not None:
            g = build_directive(self.directive, caps)
            g.name = self.name
            return g
        gens = [parse_cycles(text, self.degree, line=line_no)
                for line_no, text in self.generator_lines]
        return group_from_generators(self.degree, gens, caps, name=self.name)


def _mat(text: str, k: int, p: int):
    vals = [int(v) % p for v in text.split(",")]
    if len(vals) != k * k:
        raise ParseError(f"matrix needs {k * k} entries, got {len(vals)}")
    return np.array(vals, dtype=np.int64).reshape(k, k)


def build_directive(directive: str, caps: Caps = DEFAULT_CAPS) -> Group:
    directive = directive.strip()
    if "×" in directive or (directive.startswith("dp:") and "x" in directive):
        body = directive[3:] if directive.startswith("dp:") else directive
        parts = body.replace("×", "x").split("x")
        out = build_directive(parts[0], caps)
        for part in parts[1:]:
            out = direct_product(out, build_directive(part, caps), caps)
        return out
    head, _, rest = directive.partition(":")
    try:
        if head == "trivial":
            return trivial_group()
        if head == "cyclic":
            return cyclic(int(rest))
        if head == "sym":
            return symmetric(int(rest))
        if head == "alt":
            return alternating(int(rest))
        if head == "dihedral":
            return dihedral(int(rest))
        if head == "quaternion":
            return dicyclic(int(rest))
        if head == "semidihedral":
            return semidihedral(int(rest))
        if head == "elemab":
            p, k = rest.split(":")
            return elementary_abelian(int(p), int(k))
        if head == "sdp":
            p, k, mat, m = rest.split(":")
            p, k = int(p), int(k)
            return semidirect_product(p, k, _mat(mat, k, p), int(m), caps)
        if head == "affine":
            p, k, mats = rest.split(":")
            p, k = int(p), int(k)
            return vector_action_group(
                p, k, [_mat(m, k, p) for m in mats.split(";")], caps)
        if head == "linear":
            p, k, mats = rest.split(":")
            p, k = int(p), int(k)
            return matrix_group_on_nonzero_vectors(
                p, k, [_mat(m, k, p) for m in mats.split(";")], caps)
    except (ValueError, ParseError) as exc:
        raise ParseError(f"bad directive {directive!r}: {exc}") from None
    raise ParseError(f"unknown directive {directive!r}")


def parse_group_text(text: str, source: str = "<string>") -> GroupSpecFile:
    spec: GroupSpecFile | None = None
    done = False
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r").strip()
        if not line or line.startswith("#"):
            continue
        if done:
            raise ParseError("content after 'end'", line_no, 1)
        word, _, rest = line.partition(" ")
        rest = rest.strip()
        if word == "group":
            if spec is not None:
                raise ParseError("duplicate 'group' line", line_no, 1)
            if not rest:
                raise ParseError("missing group name", line_no, len(word) + 1)
            spec = GroupSpecFile(name=rest)
            continue
        if spec is None:
            raise ParseError("file must start with 'group <name>'", line_no, 1)
        if word == "degree":
            try:
                spec.degree = int(rest)
            except ValueError:
                raise ParseError(f"bad degree {rest!r}", line_no, len(word) + 2)
        elif word == "gen":
            spec.generator_lines.append((line_no, rest))
        elif word == "build":
            if not rest:
                raise ParseError("missing directive", line_no, len(word) + 1)
            spec.directive = rest
        elif word == "end":
            done = True
        else:
            raise ParseError(f"unknown keyword {word!r}", line_no, 1)
    if spec is None:
        raise ParseError(f"{source}: empty group file")
    if not done:
        raise ParseError("missing 'end'")
    has_gens = bool(spec.generator_lines)
    if has_gens == (spec.directive is not None):
        raise ParseError(
            "exactly one of generator lines or a build directive is required")
    if has_gens and spec.degree is None:
        raise ParseError("generator lines require a 'degree' line")
    if has_gens:
        for line_no, text_ in spec.generator_lines:
            parse_cycles(text_, spec.degree, line=line_no)  # early validation
    return spec


def parse_group_file(path) -> GroupSpecFile:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_group_text(fh.read(), source=str(path))


def serialize_directive(name: str, directive: str) -> str:
    return f"group {name}\nbuild {directive}\nend\n"
