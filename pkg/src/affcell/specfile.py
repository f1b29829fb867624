"""Line-oriented text format for cellular layer data.

::

    # comment
    field Q                  # or: field Fp 5
    layer
      vars x, y              # or: vars -
      ideal x^2 - x, y^2     # or: ideal -
      vdim 2
      phi [[1, x], [x, 1]]
      sigma x -> -x          # optional, default identity
    end
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .cellular import CellLayer, CellularAlgebraSpec
from .fields import FieldSpec, is_prime
from .parser import ParseError, parse_polynomial
from .polynomial import PolyRing, format_polynomial
from .quotient import QuotientRing

_NAME_CHARS = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_")


class SpecSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


@dataclass
class _Item:
    text: str
    line: int
    col: int  # 1-based column of text[0]


@dataclass
class _Block:
    line: int
    vars: _Item | None = None
    ideal: _Item | None = None
    vdim: _Item | None = None
    phi: _Item | None = None
    sigma: _Item | None = None
    extra: dict = field(default_factory=dict)


def _split_top(item: _Item, sep: str = ",") -> list[_Item]:
    """Split on ``sep`` outside parentheses and brackets."""
    parts = []
    depth = 0
    start = 0
    text = item.text
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append((start, text[start:i]))
            start = i + 1
    parts.append((start, text[start:]))
    out = []
    for off, chunk in parts:
        lead = len(chunk) - len(chunk.lstrip())
        out.append(_Item(chunk.strip(), item.line, item.col + off + lead))
    return out


def _poly(item: _Item, ring: PolyRing):
    if not item.text:
        raise SpecSyntaxError("empty polynomial", item.line, item.col)
    try:
        return parse_polynomial(item.text, ring)
    except ParseError as e:
        msg = str(e).rsplit(" at position", 1)[0]
        raise SpecSyntaxError(msg, item.line, item.col + e.pos) from None


def _parse_phi(item: _Item, ring: PolyRing, vdim: int):
    text = item.text
    if not (text.startswith("[") and text.endswith("]")):
        raise SpecSyntaxError("phi must be a bracketed list of rows", item.line, item.col)
    inner = _Item(text[1:-1], item.line, item.col + 1)
    rows = [r for r in _split_top(inner)]
    if len(rows) == 1 and rows[0].text == "":
        rows = []
    matrix = []
    for r in rows:
        if not (r.text.startswith("[") and r.text.endswith("]")):
            raise SpecSyntaxError("phi row must be bracketed", r.line, r.col)
        entries = _split_top(_Item(r.text[1:-1], r.line, r.col + 1))
        matrix.append([_poly(e, ring) for e in entries])
    if len(matrix) != vdim:
        raise SpecSyntaxError(f"phi has {len(matrix)} rows but vdim is {vdim}", item.line, item.col)
    for r, row in zip(rows, matrix):
        if len(row) != vdim:
            raise SpecSyntaxError(f"phi row has {len(row)} entries but vdim is {vdim}", r.line, r.col)
    return matrix


def _parse_sigma(item: _Item, ring: PolyRing) -> dict:
    out = {}
    for part in _split_top(item):
        if "->" not in part.text:
            raise SpecSyntaxError("expected '<var> -> <poly>'", part.line, part.col)
        lhs, rhs = part.text.split("->", 1)
        name = lhs.strip()
        if name not in ring.names:
            raise SpecSyntaxError(f"unknown variable {name!r}", part.line, part.col)
        if name in out:
            raise SpecSyntaxError(f"sigma image of {name!r} given twice", part.line, part.col)
        off = part.text.index("->") + 2
        lead = len(rhs) - len(rhs.lstrip())
        out[name] = _poly(_Item(rhs.strip(), part.line, part.col + off + lead), ring)
    return out


def _build_layer(block: _Block, fld: FieldSpec) -> CellLayer:
    for key in ("vars", "ideal", "vdim", "phi"):
        if getattr(block, key) is None:
            raise SpecSyntaxError(f"layer is missing '{key}'", block.line, 1)
    if block.vars.text == "-":
        names = []
    else:
        names = []
        for part in _split_top(block.vars):
            if not part.text or part.text[0].isdigit() or not set(part.text) <= _NAME_CHARS:
                raise SpecSyntaxError(f"invalid variable name {part.text!r}", part.line, part.col)
            if part.text in names:
                raise SpecSyntaxError(f"duplicate variable {part.text!r}", part.line, part.col)
            names.append(part.text)
    ring = PolyRing(names, fld)
    gens = [] if block.ideal.text == "-" else [_poly(p, ring) for p in _split_top(block.ideal)]
    try:
        vdim = int(block.vdim.text)
    except ValueError:
        raise SpecSyntaxError("vdim must be a positive integer", block.vdim.line, block.vdim.col) from None
    if vdim < 1:
        raise SpecSyntaxError("vdim must be a positive integer", block.vdim.line, block.vdim.col)
    phi = _parse_phi(block.phi, ring, vdim)
    sigma = _parse_sigma(block.sigma, ring) if block.sigma is not None else None
    return CellLayer(vdim, QuotientRing(ring, gens), phi, sigma)


def parse_spec(text: str) -> CellularAlgebraSpec:
    """Parse spec-file text; raises :class:`SpecSyntaxError` with line and column."""
    fld = None
    blocks: list[_Block] = []
    current: _Block | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        col = len(line) - len(line.lstrip()) + 1
        word, _, rest = stripped.partition(" ")
        rest_col = col + len(word) + (len(rest) - len(rest.lstrip())) + 1
        rest = rest.strip()
        if word == "field":
            if fld is not None:
                raise SpecSyntaxError("field declared twice", lineno, col)
            if current is not None or blocks:
                raise SpecSyntaxError("field must precede the layers", lineno, col)
            parts = rest.split()
            if parts == ["Q"]:
                fld = FieldSpec.rationals()
            elif len(parts) == 2 and parts[0] == "Fp":
                try:
                    p = int(parts[1])
                except ValueError:
                    raise SpecSyntaxError(f"bad characteristic {parts[1]!r}", lineno, rest_col) from None
                if not is_prime(p):
                    raise SpecSyntaxError(f"characteristic {p} is not prime", lineno, rest_col)
                fld = FieldSpec.prime(p)
            else:
                raise SpecSyntaxError("expected 'field Q' or 'field Fp <prime>'", lineno, col)
        elif word == "layer":
            if fld is None:
                raise SpecSyntaxError("'field' must come first", lineno, col)
            if current is not None:
                raise SpecSyntaxError("nested 'layer' (missing 'end')", lineno, col)
            if rest:
                raise SpecSyntaxError("unexpected text after 'layer'", lineno, rest_col)
            current = _Block(lineno)
        elif word == "end":
            if current is None:
                raise SpecSyntaxError("'end' without 'layer'", lineno, col)
            blocks.append(current)
            current = None
        elif word in ("vars", "ideal", "vdim", "phi", "sigma"):
            if current is None:
                raise SpecSyntaxError(f"'{word}' outside a layer block", lineno, col)
            if getattr(current, word) is not None:
                raise SpecSyntaxError(f"'{word}' given twice in one layer", lineno, col)
            if not rest:
                raise SpecSyntaxError(f"'{word}' needs a value", lineno, col)
            setattr(current, word, _Item(rest, lineno, rest_col))
        else:
            raise SpecSyntaxError(f"unknown keyword {word!r}", lineno, col)
    if current is not None:
        raise SpecSyntaxError("unterminated layer block", current.line, 1)
    if fld is None:
        raise SpecSyntaxError("missing 'field' declaration", 1, 1)
    if not blocks:
        raise SpecSyntaxError("no layers", 1, 1)
    layers = [_build_layer(b, fld) for b in blocks]
    return CellularAlgebraSpec(fld, layers)


def load_spec(path) -> CellularAlgebraSpec:
    return parse_spec(Path(path).read_text())


def format_spec(spec: CellularAlgebraSpec) -> str:
    lines = [f"field {spec.field}"]
    for layer in spec.layers:
        ring = layer.ring.ring
        lines.append("layer")
        lines.append("vars " + (", ".join(ring.names) if ring.names else "-"))
        gens = layer.ring.ideal.generators
        lines.append("ideal " + (", ".join(format_polynomial(g) for g in gens) if gens else "-"))
        lines.append(f"vdim {layer.vdim}")
        rows = ", ".join("[" + ", ".join(format_polynomial(x) for x in row) + "]" for row in layer.phi)
        lines.append(f"phi [{rows}]")
        if layer.sigma_images:
            lines.append("sigma " + ", ".join(f"{k} -> {format_polynomial(v)}"
                                              for k, v in layer.sigma_images.items()))
        lines.append("end")
    return "\n".join(lines) + "\n"


def spec_key(spec: CellularAlgebraSpec) -> tuple:
    """Structural identity of a spec, used for round-trip comparisons."""
    return (spec.field, tuple(
        (layer.ring.ring.names, layer.ring.ideal.generators, layer.vdim,
         tuple(tuple(r) for r in layer.phi), tuple(sorted(layer.sigma_images.items())))
        for layer in spec.layers))
