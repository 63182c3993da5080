"""Line-oriented germ description files.

    field Q                 # or: field Fp 5
    source x, y
    source_ideal <poly>; <poly>
    target u, v
    target_ideal <poly>
    map u = x; v = y^3 + x*y
    map2 u = x; v = y^3 + x*y + x^5
    derivation x^2; 0       # one coefficient per source variable
    automorphism x; y + x^2 # one image per source variable
    lift_ideal x            # the ideal I for automorphism lifting

'#' starts a comment. Keywords may appear in any order but at most once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .gb import LocalIdeal
from .germ import GermMap, validate
from .ring import GF, QQ, ParseError, Poly, PolyRing

KEYWORDS = (
    "field",
    "source",
    "source_ideal",
    "target",
    "target_ideal",
    "map",
    "map2",
    "derivation",
    "automorphism",
    "lift_ideal",
)


class GermFileError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)
        self.line = line
        self.column = column


@dataclass
class GermFile:
    source: PolyRing
    target: Optional[PolyRing]
    J_X: LocalIdeal
    J_Y: Optional[LocalIdeal]
    map: Optional[GermMap] = None
    map2: Optional[GermMap] = None
    derivation: Optional[List[Poly]] = None
    automorphism: Optional[List[Poly]] = None
    lift_ideal: Optional[LocalIdeal] = None
    text: str = ""
    notes: List[str] = field(default_factory=list)


def _strip(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def _parse_poly(text: str, ring: PolyRing, lineno: int, col: int) -> Poly:
    try:
        return ring.parse(text)
    except ParseError as e:
        message = str(e).rsplit(" (at column", 1)[0]
        raise GermFileError(message, lineno, col + e.pos + 1) from None
    except KeyError as e:
        raise GermFileError(str(e).strip("'\""), lineno, col + 1) from None


def _split(body: str, col: int, sep: str) -> List[Tuple[str, int]]:
    out = []
    pos = 0
    for part in body.split(sep):
        out.append((part, col + pos))
        pos += len(part) + 1
    return [(p, c) for p, c in out if p.strip()]


def parse_germ_file(text: str) -> GermFile:
    entries: Dict[str, Tuple[str, int, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw)
        if not line.strip():
            continue
        stripped = line.lstrip()
        indent = len(line) - len(stripped)
        key = stripped.split(None, 1)[0]
        if key not in KEYWORDS:
            raise GermFileError(f"unknown keyword {key!r}", lineno, indent + 1)
        if key in entries:
            raise GermFileError(f"duplicate {key!r} line", lineno, indent + 1)
        rest = stripped[len(key):]
        body = rest.strip()
        # 0-based column where the body starts
        entries[key] = (body, lineno, indent + len(key) + len(rest) - len(rest.lstrip()))
    fld = QQ
    if "field" in entries:
        body, ln, col = entries["field"]
        words = body.split()
        if words == ["Q"] or words == ["QQ"]:
            fld = QQ
        elif len(words) == 2 and words[0] in ("Fp", "GF") and words[1].isdigit():
            try:
                fld = GF(int(words[1]))
            except ValueError as e:
                raise GermFileError(str(e), ln, col + 1) from None
        else:
            raise GermFileError("field must be 'Q' or 'Fp <prime>'", ln, col + 1)

    def ring_of(key):
        body, ln, col = entries[key]
        names = [s.strip() for s in body.split(",") if s.strip()]
        if not names:
            raise GermFileError(f"{key} needs at least one variable", ln, col + 1)
        try:
            return PolyRing(names, fld)
        except ValueError as e:
            raise GermFileError(str(e), ln, col + 1) from None

    if "source" not in entries:
        raise GermFileError("missing 'source' line")
    source = ring_of("source")
    target = ring_of("target") if "target" in entries else None
    if target is not None and set(source.names) & set(target.names):
        raise GermFileError("source and target variables must be distinct", entries["target"][1], 1)

    def ideal_of(key, ring):
        if key not in entries:
            return LocalIdeal(ring, [])
        body, ln, col = entries[key]
        return LocalIdeal(ring, [_parse_poly(p, ring, ln, c) for p, c in _split(body, col, ";")])

    J_X = ideal_of("source_ideal", source)
    J_Y = ideal_of("target_ideal", target) if target is not None else None
    if "target_ideal" in entries and target is None:
        raise GermFileError("target_ideal without a target line", entries["target_ideal"][1], 1)

    def map_of(key):
        if key not in entries:
            return None
        body, ln, col = entries[key]
        if target is None:
            raise GermFileError(f"{key} needs a target line", ln, 1)
        comps: Dict[str, Poly] = {}
        for part, c in _split(body, col, ";"):
            if "=" not in part:
                raise GermFileError("expected '<target variable> = <polynomial>'", ln, c + 1)
            lhs, rhs = part.split("=", 1)
            name = lhs.strip()
            if name not in target.names:
                raise GermFileError(f"unknown target variable {name!r}", ln, c + 1)
            if name in comps:
                raise GermFileError(f"component {name!r} given twice", ln, c + 1)
            comps[name] = _parse_poly(rhs, source, ln, c + len(lhs) + 1)
        missing = [v for v in target.names if v not in comps]
        if missing:
            raise GermFileError(f"no component for {', '.join(missing)}", ln, 1)
        g = GermMap(source, target, [comps[v] for v in target.names], J_X, J_Y)
        v = validate(g)
        if not v.ok:
            raise GermFileError(f"{key}: {v.message}", ln, 1)
        return g

    def list_of(key):
        if key not in entries:
            return None
        body, ln, col = entries[key]
        polys = [_parse_poly(p, source, ln, c) for p, c in _split(body, col, ";")]
        if len(polys) != source.ngens:
            raise GermFileError(f"{key} needs {source.ngens} entries separated by ';'", ln, 1)
        return polys

    lift = None
    if "lift_ideal" in entries:
        lift = ideal_of("lift_ideal", source)
    return GermFile(
        source,
        target,
        J_X,
        J_Y,
        map_of("map"),
        map_of("map2"),
        list_of("derivation"),
        list_of("automorphism"),
        lift,
        text,
    )
