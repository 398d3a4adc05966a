"""Text format for presentations.

::

    # comments start with '#'
    [generators]
    x y          # names separated by whitespace or commas
    z:2          # optional ':degree'
    [relations]
    x*y - q*y*x  # one relation per line, understood as = 0
    z = x^2      # 'lhs = rhs' means lhs - rhs
    [options]
    params = q, h
    degree = 6

Scalars use the QScalar expression grammar; parse errors carry the line and
column of the offending token.
"""

from __future__ import annotations

import re
from pathlib import Path

from ..coeff import ScalarField, ScalarParseError
from .poly import FreeAlgebra
from .rewrite import Presentation

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


class PresentationParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int = 1):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


def parse_presentation(text: str, name: str = "") -> Presentation:
    sections: dict[str, list[tuple[int, str]]] = {"generators": [], "relations": [], "options": []}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        if stripped.startswith("["):
            m = re.fullmatch(r"\[(\w+)\]", stripped)
            if not m or m.group(1) not in sections:
                raise PresentationParseError(f"unknown section {stripped}", lineno,
                                             line.index("[") + 1)
            current = m.group(1)
            continue
        if current is None:
            raise PresentationParseError("content before first section", lineno, 1)
        sections[current].append((lineno, line))

    options: dict[str, tuple[int, str]] = {}
    for lineno, line in sections["options"]:
        if "=" not in line:
            raise PresentationParseError("expected 'key = value'", lineno, 1)
        k, v = line.split("=", 1)
        options[k.strip()] = (lineno, v.strip())

    params = ("q",)
    if "params" in options:
        lineno, v = options["params"]
        params = tuple(p.strip() for p in v.split(",") if p.strip())
        try:
            field = ScalarField(params)
        except ValueError as exc:
            raise PresentationParseError(str(exc), lineno, 1) from None
    field = ScalarField(params)

    degree = None
    if "degree" in options:
        lineno, v = options["degree"]
        if not v.isdigit():
            raise PresentationParseError("degree must be a nonnegative integer", lineno, 1)
        degree = int(v)

    names, degrees = [], []
    for lineno, line in sections["generators"]:
        for m in re.finditer(r"[^\s,]+", line):
            tok = m.group(0)
            gname, _, deg = tok.partition(":")
            if not _NAME.match(gname):
                raise PresentationParseError(f"bad generator name {gname!r}", lineno, m.start() + 1)
            if deg and not deg.isdigit():
                raise PresentationParseError(f"bad degree {deg!r}", lineno, m.start() + len(gname) + 2)
            if gname in names:
                raise PresentationParseError(f"duplicate generator {gname!r}", lineno, m.start() + 1)
            names.append(gname)
            degrees.append(int(deg) if deg else 1)
    if not names:
        raise PresentationParseError("no generators declared", 1, 1)
    try:
        alg = FreeAlgebra(names, field, degrees)
    except ValueError as exc:
        raise PresentationParseError(str(exc), sections["generators"][0][0], 1) from None

    relations = []
    for lineno, line in sections["relations"]:
        if line.count("=") > 1:
            raise PresentationParseError("more than one '='", lineno, line.rindex("=") + 1)
        if "=" in line:
            lhs, rhs = line.split("=")
            parts = [(lhs, 0), (rhs, len(lhs) + 1)]
        else:
            parts = [(line, 0)]
        polys = []
        for chunk, offset in parts:
            try:
                polys.append(alg.parse(chunk))
            except ScalarParseError as exc:
                col = (exc.col or 1) + offset
                raise PresentationParseError(str(exc).split(" (column")[0], lineno, col) from None
        rel = polys[0] - polys[1] if len(polys) == 2 else polys[0]
        if rel:
            relations.append(rel)
    return Presentation(alg, relations, name=name, degree=degree)


def load_presentation(path: str | Path) -> Presentation:
    path = Path(path)
    return parse_presentation(path.read_text(encoding="utf-8"), name=path.stem)


def format_presentation(pres: Presentation) -> str:
    alg = pres.alg
    lines = ["[generators]"]
    lines.append(" ".join(n if d == 1 else f"{n}:{d}" for n, d in zip(alg.names, alg.degrees)))
    lines.append("[relations]")
    lines.extend(str(r) for r in pres.relations)
    lines.append("[options]")
    lines.append("params = " + ", ".join(alg.field.names))
    if pres.degree is not None:
        lines.append(f"degree = {pres.degree}")
    return "\n".join(lines) + "\n"
