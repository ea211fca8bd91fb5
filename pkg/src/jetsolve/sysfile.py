"""The system input format: a JSON document listing variables and
equations term by term, with exact coefficients.

    {
      "variables": ["lambda", "x1", "x2"],
      "equations": [
        [ {"coefficient": "1", "exponents": [0, 2, 0]},
          {"coefficient": "-1", "exponents": [1, 0, 0]} ],
        ...
      ],
      "metadata": { ... }            // optional
    }

The first variable plays the parameter role; the exponent vector order
matches the variable list.  Coefficients are integers, "p/q" strings, or
two-element [re, im] lists; float literals are rejected so exact input
stays exact.

Parsing is done with a small tracking reader instead of json.loads because
every error, semantic ones included, must carry a line and column.
"""

import json

from .coeffs import format_coeff, parse_coeff
from .errors import InputError
from .multipoly import MultiPoly
from .prep import PolySystem


class SystemFile:

    def __init__(self, variables, equations, metadata=None):
        self.variables = list(variables)
        self.equations = list(equations)   # MultiPoly instances
        self.metadata = metadata or {}

    @property
    def nvars(self):
        return len(self.variables) - 1

    def system(self):
        return PolySystem(self.equations, self.nvars)

    def to_obj(self):
        eqs = []
        for f in self.equations:
            terms = []
            for exps in sorted(f.terms):
                terms.append({"coefficient": format_coeff(f.terms[exps]),
                              "exponents": list(exps)})
            eqs.append(terms)
        obj = {"variables": self.variables, "equations": eqs}
        if self.metadata:
            obj["metadata"] = self.metadata
        return obj

    def dumps(self):
        return json.dumps(self.to_obj(), indent=1, sort_keys=True)


class _Reader:
    """Minimal JSON reader that knows where it is (line, column)."""

    WS = " \t\r\n"

    def __init__(self, text):
        self.text = text
        self.pos = 0

    def where(self, pos=None):
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def fail(self, message, pos=None):
        line, col = self.where(pos)
        raise InputError(message, line=line, column=col)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in self.WS:
            self.pos += 1

    def peek(self):
        self.skip_ws()
        if self.pos >= len(self.text):
            self.fail("unexpected end of input")
        return self.text[self.pos]

    def expect(self, ch):
        if self.peek() != ch:
            self.fail(f"expected '{ch}'")
        self.pos += 1

    def value(self):
        ch = self.peek()
        if ch == "{":
            return self.object()
        if ch == "[":
            return self.array()
        if ch == '"':
            return self.string()
        if ch == "t" and self.text.startswith("true", self.pos):
            self.pos += 4
            return True
        if ch == "f" and self.text.startswith("false", self.pos):
            self.pos += 5
            return False
        if ch == "n" and self.text.startswith("null", self.pos):
            self.pos += 4
            return None
        return self.number()

    def object(self):
        self.expect("{")
        out = {}
        if self.peek() == "}":
            self.pos += 1
            return out
        while True:
            key = self.string()
            self.expect(":")
            out[key] = self.value()
            ch = self.peek()
            if ch == ",":
                self.pos += 1
                continue
            if ch == "}":
                self.pos += 1
                return out
            self.fail("expected ',' or '}'")

    def array(self):
        self.expect("[")
        out = []
        if self.peek() == "]":
            self.pos += 1
            return out
        while True:
            out.append(self.value())
            ch = self.peek()
            if ch == ",":
                self.pos += 1
                continue
            if ch == "]":
                self.pos += 1
                return out
            self.fail("expected ',' or ']'")

    def string(self):
        if self.peek() != '"':
            self.fail("expected string")
        start = self.pos
        end = self.pos + 1
        while end < len(self.text) and self.text[end] != '"':
            if self.text[end] == "\\":
                end += 1
            end += 1
        if end >= len(self.text):
            self.fail("unterminated string", start)
        raw = self.text[start:end + 1]
        self.pos = end + 1
        try:
            return json.loads(raw)
        except json.JSONDecodeError:
            self.fail("bad string literal", start)

    def number(self):
        start = self.pos
        end = start
        while end < len(self.text) and \
                self.text[end] in "+-0123456789.eE":
            end += 1
        lit = self.text[start:end]
        if not lit:
            self.fail("expected a value")
        if any(c in lit for c in ".eE"):
            self.fail("float literals are not allowed; use \"p/q\"", start)
        try:
            val = int(lit)
        except ValueError:
            self.fail("bad number literal", start)
        self.pos = end
        return _Traced(val, start)


class _Traced(int):
    """Integer that remembers its source offset."""

    def __new__(cls, val, offset):
        obj = super().__new__(cls, val)
        obj.offset = offset
        return obj


def parse_system_text(text):
    """Parse and validate a SystemFile document; raises InputError with
    line and column on any defect."""
    rd = _Reader(text)
    obj = rd.value()
    rd.skip_ws()
    if rd.pos != len(rd.text):
        rd.fail("trailing content after the document")
    if not isinstance(obj, dict):
        rd.fail("top level must be an object", 0)

    def err(message, at=None):
        if at is not None and hasattr(at, "offset"):
            rd.fail(message, at.offset)
        rd.fail(message, 0)

    variables = obj.get("variables")
    if not isinstance(variables, list) or len(variables) < 2 or \
            not all(isinstance(v, str) for v in variables):
        err("\"variables\" must list the parameter and at least one unknown")
    nvars = len(variables) - 1
    eq_objs = obj.get("equations")
    if not isinstance(eq_objs, list) or not eq_objs:
        err("\"equations\" must be a nonempty list")
    equations = []
    for ei, terms in enumerate(eq_objs):
        if not isinstance(terms, list):
            err(f"equation {ei + 1} must be a list of terms")
        poly = {}
        for ti, term in enumerate(terms):
            if not isinstance(term, dict) or "coefficient" not in term \
                    or "exponents" not in term:
                err(f"term {ti + 1} of equation {ei + 1} needs "
                    "\"coefficient\" and \"exponents\"")
            exps = term["exponents"]
            anchor = exps[0] if isinstance(exps, list) and exps else None
            if not isinstance(exps, list) or len(exps) != nvars + 1:
                err(f"exponent vector of term {ti + 1} in equation "
                    f"{ei + 1} must have length {nvars + 1}", anchor)
            for e in exps:
                if not isinstance(e, int) or isinstance(e, bool) or e < 0:
                    err("exponents must be nonnegative integers", anchor)
            try:
                coeff = parse_coeff(term["coefficient"])
            except (ValueError, TypeError):
                err(f"bad coefficient in term {ti + 1} of equation "
                    f"{ei + 1}", anchor)
            key = tuple(int(e) for e in exps)
            poly[key] = poly.get(key, 0) + coeff
        equations.append(MultiPoly(nvars, poly))
    metadata = obj.get("metadata") or {}
    if not isinstance(metadata, dict):
        err("\"metadata\" must be an object")
    for f in equations:
        if f.is_zero():
            err("equation is identically zero")
    return SystemFile(variables, equations, metadata)


def parse_system_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_system_text(fh.read())


def default_variables(n):
    return ["lambda"] + [f"x{i}" for i in range(1, n + 1)]


def system_to_file(system, variables=None, metadata=None):
    variables = variables or default_variables(system.level)
    return SystemFile(variables, system.equations, metadata)
