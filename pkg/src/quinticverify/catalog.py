"""The machine-readable example catalog and hyperplane restriction.

Entries live as checked-in data files in the expression grammar; the
catalog is data, so the source matrices are transcribed once and diffed
forever.
"""
from __future__ import annotations

from importlib import resources
from math import lcm

from .cyclotomic import Cyclo
from .errors import HyperplaneNotPreserved
from .parsing import parse_matrix_list, parse_poly
from .poly import Polynomial, SquareMatrix, substitute_linear


class CatalogEntry:
    __slots__ = (
        "id",
        "name",
        "kind",
        "nvars",
        "polynomial_text",
        "generator_texts",
        "expected_order",
        "expected_gorenstein",
        "expected_abelian",
        "expected_exponent",
        "semiperm_claim",
        "strict_invariance",
        "expect_smooth",
        "invariance_only",
        "expected_stabilizer",
        "hyperplane_text",
        "notes",
    )

    def __init__(self, **kw):
        for slot in self.__slots__:
            setattr(self, slot, kw.get(slot))

    def polynomial(self):
        return parse_poly(self.polynomial_text, self.nvars)

    def generators(self):
        return parse_matrix_list(self.generator_texts)

    def hyperplane(self):
        if self.hyperplane_text is None:
            return None
        return parse_poly(self.hyperplane_text, self.nvars)

    def __repr__(self):
        return f"CatalogEntry({self.id!r}, order={self.expected_order})"


def _parse_bool(text):
    return text.strip().lower() in ("true", "yes", "1")


def _parse_entry(text):
    header, _, gens = text.partition("[gens]")
    fields = {}
    for line in header.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition("=")
        fields[key.strip()] = value.strip()
    entry_id = fields["id"]
    if entry_id.isdigit():
        entry_id = int(entry_id)
    return CatalogEntry(
        id=entry_id,
        name=fields.get("name", str(entry_id)),
        kind=fields.get("kind", "example"),
        nvars=int(fields["nvars"]),
        polynomial_text=fields["poly"],
        generator_texts=gens.strip(),
        expected_order=int(fields["order"]) if "order" in fields else None,
        expected_gorenstein=int(fields["gorenstein"]) if "gorenstein" in fields else None,
        expected_abelian=_parse_bool(fields["abelian"]) if "abelian" in fields else None,
        expected_exponent=int(fields["exponent"]) if "exponent" in fields else None,
        semiperm_claim=_parse_bool(fields.get("semiperm", "false")),
        strict_invariance=_parse_bool(fields.get("strict-invariance", "true")),
        expect_smooth=_parse_bool(fields.get("expect-smooth", "true")),
        invariance_only=_parse_bool(fields.get("invariance-only", "false")),
        expected_stabilizer=int(fields["expected-stab"]) if "expected-stab" in fields else None,
        hyperplane_text=fields.get("hyperplane"),
        notes=fields.get("note", ""),
    )


def load_entries():
    """All catalog entries, numbered examples first, then auxiliary tags."""
    out = []
    root = resources.files("quinticverify.data.entries")
    for item in sorted(root.iterdir(), key=lambda p: p.name):
        if item.name.endswith(".txt"):
            out.append(_parse_entry(item.read_text()))

    def sort_key(entry):
        if isinstance(entry.id, int):
            return (0, entry.id, "")
        return (1, 0, str(entry.id))

    out.sort(key=sort_key)
    return out


def load_entry(entry_id):
    for entry in load_entries():
        if str(entry.id) == str(entry_id):
            return entry
    raise KeyError(f"no catalog entry {entry_id!r}")


EXPECTED_ORDERS = (
    75000, 3000, 800, 800, 4500, 320, 320, 600, 1950, 480, 256,
    780, 1020, 1800, 1025, 1170, 480, 96, 120, 120, 600, 64,
)

EXPECTED_GORENSTEIN = (
    7500, 150, 40, 10, 450, 4, 1, 30, 195, 6, 1,
    39, 102, 180, 205, 117, 48, 24, 12, 24, 60, 2,
)


class HyperplaneChart:
    """The section/projection pair for a solved linear form."""

    __slots__ = ("nvars", "solved", "keep", "section_rows", "linear")

    def __init__(self, linear):
        n = linear.nvars
        if linear.degree != 1:
            raise ValueError("hyperplane must be a linear form")
        coeffs = [Cyclo.zero() for _ in range(n)]
        for e, c in linear.terms.items():
            coeffs[e.index(1)] = c
        solved = max(i for i, c in enumerate(coeffs) if not c.is_zero())
        keep = [i for i in range(n) if i != solved]
        inv_lead = coeffs[solved].inverse()
        rows = []
        for i in range(n):
            if i != solved:
                row = [Cyclo.zero()] * (n - 1)
                row[keep.index(i)] = Cyclo.one()
                rows.append(row)
            else:
                rows.append([-(inv_lead * coeffs[j]) for j in keep])
        self.nvars = n
        self.solved = solved
        self.keep = keep
        self.section_rows = rows
        self.linear = linear

    def restrict_polynomial(self, f):
        return substitute_linear(self.section_rows, f, self.nvars - 1)

    def induced_matrix(self, a, index=0):
        image = _apply_to_linear(a, self.linear)
        if image.proportionality_factor(self.linear) is None:
            raise HyperplaneNotPreserved(index)
        n = self.nvars
        rows = []
        for i in self.keep:
            row = []
            for jnew in range(n - 1):
                acc = Cyclo.zero()
                for k in range(n):
                    c = a.entries[i][k]
                    if not c.is_zero():
                        acc = acc + c * self.section_rows[k][jnew]
                row.append(acc)
            rows.append(row)
        return SquareMatrix(rows)


def restrict_to_hyperplane(f6, linear, gens):
    """Restrict a quintic in n variables to the hyperplane linear = 0.

    Solves the highest-index variable of the linear form, producing a
    polynomial in the remaining coordinates, and conjugates each generator
    through the section/projection pair.  Every generator must map the
    hyperplane to itself.
    """
    chart = HyperplaneChart(linear)
    f5 = chart.restrict_polynomial(f6)
    induced = [chart.induced_matrix(a, idx) for idx, a in enumerate(gens)]
    return f5, induced


def _apply_to_linear(a, linear):
    """The linear form linear(A x) (degree-1 analogue of apply_matrix)."""
    return substitute_linear(a.entries, linear, linear.nvars)


def hyperplane_scaling(a, linear):
    """c with linear(A x) = c * linear(x); None when not preserved."""
    image = _apply_to_linear(a, linear)
    return image.proportionality_factor(linear)
