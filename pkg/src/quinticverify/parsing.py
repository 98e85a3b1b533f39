"""Parser and canonical printer for the polynomial/matrix expression grammar.

Grammar (whitespace ignored):

    expr     := term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' nat)?
    base     := 'x'digit | 'E(' nat ')' | rational | '(' expr ')'
    rational := int ('/' nat)?

E(n) denotes the primitive n-th root of unity.  Variables are x1..x6.
Matrices: one row per line, entries comma-separated, each entry an expr with
no variables.  A matrix list file separates matrices by blank lines.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm

from .cyclotomic import Cyclo, root_of_unity
from .errors import ConductorTooSmall, NotHomogeneous, PolySyntaxError
from .poly import Polynomial, SquareMatrix


class _Parser:
    """Recursive-descent parser producing term dictionaries."""

    def __init__(self, text, nvars, ambient):
        self.text = text
        self.pos = 0
        self.nvars = nvars
        self.ambient = ambient

    def error(self, message):
        raise PolySyntaxError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch):
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch):
        if not self.take(ch):
            self.error(f"expected {ch!r}")

    def nat(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected a number")
        return int(self.text[start : self.pos])

    # Terms are dicts: exponent tuple -> Cyclo coefficient.

    def parse_expr(self):
        sign = -1 if self.take("-") else 1
        if sign == 1:
            self.take("+")
        acc = self.parse_term()
        if sign < 0:
            acc = {e: -c for e, c in acc.items()}
        while True:
            ch = self.peek()
            if ch == "+":
                self.pos += 1
                acc = _term_add(acc, self.parse_term(), 1)
            elif ch == "-":
                self.pos += 1
                acc = _term_add(acc, self.parse_term(), -1)
            else:
                return acc

    def parse_term(self):
        acc = self.parse_factor()
        while self.take("*"):
            acc = _term_mul(acc, self.parse_factor(), self.nvars)
        return acc

    def parse_factor(self):
        base = self.parse_base()
        if self.take("^"):
            k = self.nat()
            out = {(0,) * self.nvars: Cyclo.one()}
            for _ in range(k):
                out = _term_mul(out, base, self.nvars)
            return out
        return base

    def parse_base(self):
        ch = self.peek()
        zero_exp = (0,) * self.nvars
        if ch == "x":
            self.pos += 1
            if self.pos >= len(self.text) or not self.text[self.pos].isdigit():
                self.error("expected a variable index after 'x'")
            idx = int(self.text[self.pos])
            self.pos += 1
            if not 1 <= idx <= self.nvars:
                self.error(f"variable x{idx} out of range for {self.nvars} variables")
            e = tuple(1 if i == idx - 1 else 0 for i in range(self.nvars))
            return {e: Cyclo.one()}
        if ch == "E":
            self.pos += 1
            self.expect("(")
            n = self.nat()
            self.expect(")")
            if n < 1:
                self.error("root order must be positive")
            if self.ambient is not None and self.ambient % n != 0:
                raise ConductorTooSmall(
                    f"E({n}) does not lie in ambient conductor {self.ambient}"
                )
            return {zero_exp: root_of_unity(n, 1)}
        if ch == "(":
            self.pos += 1
            inner = self.parse_expr()
            self.expect(")")
            return inner
        if ch == "-" or ch.isdigit():
            sign = -1 if self.take("-") else 1
            num = self.nat()
            if self.take("/"):
                den = self.nat()
                if den == 0:
                    self.error("zero denominator")
                q = Fraction(sign * num, den)
            else:
                q = Fraction(sign * num)
            return {zero_exp: Cyclo.from_rational(q)}
        self.error("expected a variable, root, number or parenthesis")


def _term_add(a, b, sign):
    out = dict(a)
    for e, c in b.items():
        if sign < 0:
            c = -c
        prior = out.get(e)
        s = c if prior is None else prior + c
        if s.is_zero():
            out.pop(e, None)
        else:
            out[e] = s
    return out


def _term_mul(a, b, nvars):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            prior = out.get(e)
            s = c1 * c2 if prior is None else prior + c1 * c2
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
    return out


def parse_poly(text, nvars, ambient_conductor=None):
    """Parse a homogeneous polynomial; enforces homogeneity and conductor."""
    parser = _Parser(text, nvars, ambient_conductor)
    terms = parser.parse_expr()
    parser.skip_ws()
    if parser.pos != len(parser.text):
        parser.error("trailing input")
    degrees = {sum(e) for e in terms}
    if not terms:
        raise NotHomogeneous("polynomial is identically zero")
    if len(degrees) > 1:
        raise NotHomogeneous(f"mixed total degrees {sorted(degrees)}")
    conductor = ambient_conductor if ambient_conductor else 1
    for c in terms.values():
        conductor = lcm(conductor, c.n)
    return Polynomial(nvars, degrees.pop(), terms, conductor)


def parse_scalar(text, ambient_conductor=None):
    """Parse a variable-free expression to a Cyclo."""
    parser = _Parser(text, 0, ambient_conductor)
    terms = parser.parse_expr()
    parser.skip_ws()
    if parser.pos != len(parser.text):
        parser.error("trailing input")
    acc = Cyclo.zero()
    for _, c in terms.items():
        acc = acc + c
    return acc


def parse_matrix(text, ambient_conductor=None):
    """Parse one matrix: rows on lines, comma-separated scalar entries."""
    rows = []
    for line in text.strip().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        rows.append([parse_scalar(cell, ambient_conductor) for cell in line.split(",")])
    if not rows:
        raise PolySyntaxError("empty matrix", 0)
    width = {len(r) for r in rows}
    if width != {len(rows)}:
        raise PolySyntaxError("matrix is not square", 0)
    return SquareMatrix(rows)


def parse_matrix_list(text, ambient_conductor=None):
    """Parse blank-line separated matrices."""
    blocks = []
    current = []
    for line in text.splitlines():
        if line.strip() and not line.strip().startswith("#"):
            current.append(line)
        elif current:
            blocks.append("\n".join(current))
            current = []
    if current:
        blocks.append("\n".join(current))
    return [parse_matrix(b, ambient_conductor) for b in blocks]


# -- canonical printing --------------------------------------------------------


def _format_rational(q):
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_cyclo(c):
    """Canonical text for a Cyclo; parse_scalar(format_cyclo(c)) == c."""
    if c.is_zero():
        return "0"
    parts = []
    for i, num in enumerate(c.num):
        if num == 0:
            continue
        q = Fraction(num, c.den)
        if i == 0:
            parts.append(_format_rational(q))
            continue
        power = f"E({c.n})" if i == 1 else f"E({c.n})^{i}"
        if q == 1:
            parts.append(power)
        elif q == -1:
            parts.append(f"-{power}")
        else:
            parts.append(f"{_format_rational(q)}*{power}")
    out = parts[0]
    for p in parts[1:]:
        out += p if p.startswith("-") else "+" + p
    return out


def _coeff_is_plain(c):
    nonzero = [i for i, v in enumerate(c.num) if v]
    return len(nonzero) <= 1


def format_poly(f):
    """Canonical text; parse_poly(format_poly(f), f.nvars) round-trips."""
    if f.is_zero():
        return "0"
    parts = []
    for e in f.support():
        c = f.terms[e]
        vars_txt = "*".join(
            f"x{i + 1}^{k}" if k > 1 else f"x{i + 1}" for i, k in enumerate(e) if k
        )
        ctext = format_cyclo(c)
        if not vars_txt:
            parts.append(ctext)
        elif c.is_one():
            parts.append(vars_txt)
        elif (-c).is_one():
            parts.append(f"-{vars_txt}")
        elif _coeff_is_plain(c) and not ctext.startswith("-"):
            parts.append(f"{ctext}*{vars_txt}")
        else:
            parts.append(f"({ctext})*{vars_txt}")
    out = parts[0]
    for p in parts[1:]:
        out += p if p.startswith("-") else "+" + p
    return out


def format_matrix(m):
    return "\n".join(
        ",".join(format_cyclo(c) for c in row) for row in m.entries
    )
