"""Reading and writing the plain-text map file format.

::

    ring Q | Z | Fp <prime>
    dim <d>
    cap <N>
    map <name>
      <i> = <polynomial in x1..xd>

Component bodies use ring literals, ``+ - * ^`` and parentheses.  Absent
components are 0, constant terms are rejected, and ``#`` starts a comment.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field

from .errors import ParseError, PreconditionError, RingError
from .maps import FormalMap
from .rings import Ring, ring_from_spec
from .series import Series

DEFAULT_MAX_CAP = 16

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>x(?P<idx>\d+))|(?P<op>[-+*^()]))"
)


def max_cap() -> int:
    raw = os.environ.get("FORMALFLOWS_MAX_CAP")
    if raw is None:
        return DEFAULT_MAX_CAP
    try:
        return int(raw)
    except ValueError:
        raise PreconditionError(f"FORMALFLOWS_MAX_CAP={raw!r} is not an integer") from None


@dataclass
class MapDocument:
    ring: Ring
    dim: int
    cap: int
    maps: dict[str, FormalMap] = field(default_factory=dict)

    def first(self) -> tuple[str, FormalMap]:
        if not self.maps:
            raise ParseError("file contains no map")
        name = next(iter(self.maps))
        return name, self.maps[name]


class _PolyParser:
    """Recursive-descent parser for one component body, evaluated as a Series."""

    def __init__(self, text, ring, dim, cap, line, col0):
        self.ring, self.dim, self.cap = ring, dim, cap
        self.line, self.col0 = line, col0
        self.toks = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
                raise ParseError(f"unexpected character {text[bad]!r}", line, col0 + bad + 1)
            kind = "num" if m.group("num") else "var" if m.group("var") else "op"
            self.toks.append((kind, m, col0 + m.start(kind) + 1))
            pos = m.end()
        self.i = 0

    def _peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def _err(self, msg, tok=None):
        col = tok[2] if tok else (self.toks[-1][2] if self.toks else self.col0 + 1)
        raise ParseError(msg, self.line, col)

    def _op(self, tok):
        return tok is not None and tok[0] == "op" and tok[1].group("op")

    def parse(self) -> Series:
        if not self.toks:
            return Series.zero(self.ring, self.dim, self.cap)
        out = self.expr()
        if self._peek() is not None:
            self._err("unexpected token", self._peek())
        return out

    def expr(self):
        tok = self._peek()
        neg = False
        if self._op(tok) in ("+", "-"):
            neg = tok[1].group("op") == "-"
            self.i += 1
        acc = self.term()
        if neg:
            acc = -acc
        while True:
            tok = self._peek()
            op = self._op(tok)
            if op not in ("+", "-"):
                return acc
            self.i += 1
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs

    def term(self):
        acc = self.power()
        while self._op(self._peek()) == "*":
            self.i += 1
            acc = acc * self.power()
        return acc

    def power(self):
        base = self.atom()
        if self._op(self._peek()) == "^":
            self.i += 1
            tok = self._peek()
            if tok is None or tok[0] != "num" or "/" in tok[1].group("num"):
                self._err("exponent must be a nonnegative integer", tok)
            self.i += 1
            base = base ** int(tok[1].group("num"))
        return base

    def atom(self):
        tok = self._peek()
        if tok is None:
            self._err("unexpected end of expression")
        kind, m, col = tok
        if kind == "num":
            self.i += 1
            try:
                val = self.ring.parse(m.group("num"))
            except RingError as exc:
                raise ParseError(f"coefficient not in ring: {exc}", self.line, col) from None
            return Series.constant(val, self.ring, self.dim, self.cap)
        if kind == "var":
            self.i += 1
            idx = int(m.group("idx"))
            if not 1 <= idx <= self.dim:
                raise ParseError(f"variable x{idx} outside x1..x{self.dim}", self.line, col)
            return Series.variable(idx - 1, self.ring, self.dim, self.cap)
        if self._op(tok) == "(":
            self.i += 1
            inner = self.expr()
            if self._op(self._peek()) != ")":
                self._err("missing ')'", self._peek())
            self.i += 1
            return inner
        self._err("unexpected token", tok)


def parse_polynomial(text: str, ring: Ring, dim: int, cap: int, line=None, col0=0) -> Series:
    return _PolyParser(text, ring, dim, cap, line, col0).parse()


def parse_map_document(text: str, cap_override: int | None = None) -> MapDocument:
    ring = dim = cap = None
    maps: dict[str, dict[int, Series]] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        words = line.split()
        head = words[0]
        if head == "ring":
            if len(words) == 2 and words[1] in ("Q", "Z"):
                ring = ring_from_spec(words[1])
            elif len(words) == 3 and words[1] in ("Fp", "F"):
                try:
                    ring = ring_from_spec("Fp", int(words[2]))
                except (RingError, ValueError) as exc:
                    raise ParseError(str(exc), lineno, indent + 1) from None
            else:
                raise ParseError("expected 'ring Q', 'ring Z' or 'ring Fp <prime>'", lineno, indent + 1)
        elif head in ("dim", "cap"):
            if len(words) != 2 or not words[1].isdigit():
                raise ParseError(f"expected '{head} <positive integer>'", lineno, indent + 1)
            val = int(words[1])
            if val < 1:
                raise ParseError(f"{head} must be at least 1", lineno, indent + len(head) + 2)
            if head == "dim":
                dim = val
            else:
                cap = val
        elif head == "map":
            if len(words) != 2:
                raise ParseError("expected 'map <name>'", lineno, indent + 1)
            if ring is None or dim is None or cap is None:
                raise ParseError("'ring', 'dim' and 'cap' must precede 'map'", lineno, indent + 1)
            if cap_override is not None:
                cap = cap_override
            limit = max_cap()
            if cap > limit:
                raise PreconditionError(f"cap {cap} exceeds FORMALFLOWS_MAX_CAP={limit}")
            current = words[1]
            if current in maps:
                raise ParseError(f"duplicate map name {current!r}", lineno, indent + 5)
            maps[current] = {}
        else:
            m = re.match(r"\s*(\d+)\s*=", line)
            if not m:
                raise ParseError(f"unrecognised line {raw.strip()!r}", lineno, indent + 1)
            if current is None:
                raise ParseError("component line outside a 'map' block", lineno, indent + 1)
            i = int(m.group(1))
            if not 1 <= i <= dim:
                raise ParseError(f"component index {i} outside 1..{dim}", lineno, m.start(1) + 1)
            if i in maps[current]:
                raise ParseError(f"component {i} given twice", lineno, m.start(1) + 1)
            body = line[m.end():]
            s = parse_polynomial(body, ring, dim, cap, lineno, m.end())
            if not s.in_maximal_ideal():
                raise ParseError(
                    f"component {i} has constant term {ring.format(s.constant_term)}; maps must fix 0",
                    lineno, m.end() + 1,
                )
            maps[current][i] = s
    if ring is None or dim is None or cap is None:
        raise ParseError("missing 'ring', 'dim' or 'cap' header")
    doc = MapDocument(ring, dim, cap)
    for name, comps in maps.items():
        doc.maps[name] = FormalMap(
            [comps.get(i, Series.zero(ring, dim, cap)) for i in range(1, dim + 1)]
        )
    return doc


def parse_map_file(text: str, cap_override: int | None = None) -> FormalMap:
    """Parse a document and return its first map."""
    return parse_map_document(text, cap_override).first()[1]


def load_map(path: str, cap_override: int | None = None) -> FormalMap:
    with open(path, encoding="utf-8") as fh:
        return parse_map_file(fh.read(), cap_override)


def ring_header(ring: Ring) -> str:
    if ring.characteristic:
        return f"ring Fp {ring.characteristic}"
    return f"ring {ring.kind}"


def render_map_file(g: FormalMap, name: str = "g", comments=()) -> str:
    lines = [f"# {c}" for c in comments]
    lines += [ring_header(g.ring), f"dim {g.dim}", f"cap {g.cap}", f"map {name}"]
    for i, s in enumerate(g.components, start=1):
        if not s.is_zero():
            lines.append(f"  {i} = {s.to_text()}")
    return "\n".join(lines) + "\n"


def map_to_json(g: FormalMap, name: str = "g") -> dict:
    return {
        "name": name,
        "ring": ring_header(g.ring)[5:],
        "dim": g.dim,
        "cap": g.cap,
        "components": [s.to_json() for s in g.components],
    }
