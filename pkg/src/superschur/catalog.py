"""Algebra constructors and the line-oriented catalog file format.

Grammar (UTF-8, '#' starts a comment, blank lines ignored):

    algebra <name>
    even <label> <label> ...
    odd  <label> <label> ...
    [<label>,<label>] = <coeff>*<label> (+|-) <coeff>*<label> ...
    end

Coefficients are integers or p/q; "1*" may be omitted.  Unspecified
brackets are zero.  Entries are normalized to basis order i <= j via
graded skew-symmetry; supplying the same unordered pair twice is an
error.  Every parsed record must validate as a Lie superalgebra.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .freenilp import GeneratorSpec, build_free_nilpotent
from .superalg import EVEN, ODD, LieSuperalgebra, direct_sum

_LABEL = r"[A-Za-z_][A-Za-z0-9_']*"
_COEFF = r"-?\d+(?:/\d+)?"
_BRACKET_RE = re.compile(
    rf"^\[\s*({_LABEL})\s*,\s*({_LABEL})\s*\]\s*=\s*(.+)$"
)
_TERM_RE = re.compile(
    rf"^\s*(?:({_COEFF})\s*\*\s*)?({_LABEL})\s*"
)


class CatalogError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        loc = ""
        if line is not None:
            loc = f"line {line}"
            if column is not None:
                loc += f", column {column}"
            loc += ": "
        super().__init__(loc + message)
        self.line = line
        self.column = column


# -- constructors ----------------------------------------------------------------


def abelian(m: int, n: int, name: str | None = None, labels=None) -> LieSuperalgebra:
    if labels is None:
        labels = [f"e{i+1}" for i in range(m)] + [f"f{i+1}" for i in range(n)]
    return LieSuperalgebra(
        name if name is not None else f"A({m}|{n})",
        labels,
        [EVEN] * m + [ODD] * n,
        {},
    )


def heisenberg3() -> LieSuperalgebra:
    """Three even basis vectors with [e1, e2] = e3."""
    return LieSuperalgebra(
        "heis3", ["e1", "e2", "e3"], [EVEN] * 3, {(0, 1): [(2, 1)]}
    )


def filiform4() -> LieSuperalgebra:
    """Four even basis vectors with [e1, e2] = e3 and [e1, e3] = e4."""
    return LieSuperalgebra(
        "filiform4",
        ["e1", "e2", "e3", "e4"],
        [EVEN] * 4,
        {(0, 1): [(2, 1)], (0, 2): [(3, 1)]},
    )


def special_heisenberg_odd(n: int, name: str | None = None) -> LieSuperalgebra:
    """One even central z and odd f_1..f_n with [f_i, f_j] = delta_ij z."""
    labels = ["z"] + [f"f{i+1}" for i in range(n)]
    table = {(i, i): [(0, 1)] for i in range(1, n + 1)}
    return LieSuperalgebra(
        name if name is not None else f"sh(0|{n})",
        labels,
        [EVEN] + [ODD] * n,
        table,
    )


def relabel_canonical(L: LieSuperalgebra, name: str) -> LieSuperalgebra:
    """Copy of L with grammar-safe labels e1.. / f1.. and a new name."""
    labels = [f"e{i+1}" for i in range(L.n_even)] + [
        f"f{i+1}" for i in range(L.n_odd)
    ]
    table = {}
    for i in range(L.dim):
        for j in range(i, L.dim):
            terms = L.bracket_basis(i, j)
            if terms:
                table[(i, j)] = tuple(sorted(terms.items()))
    return LieSuperalgebra(name, labels, L.parities, table)


def _free21_quotients() -> list[LieSuperalgebra]:
    """Small-class quotients of the free nilpotent algebra on (2|1) generators."""
    out = []
    f3 = build_free_nilpotent(GeneratorSpec(2, 1, 3))
    a3 = f3.algebra
    out.append(relabel_canonical(a3, "free21c3"))
    q2, _ = a3.quotient(f3.gamma(3))
    out.append(relabel_canonical(q2, "free21c2"))
    i_x1, i_x2, i_f1 = q2.index_of("x1"), q2.index_of("x2"), q2.index_of("f1")
    # cut one even central line of the class-2 quotient: [x1,x2] - [f1,f1]
    cut = [Fraction(0)] * q2.dim
    for t, c in q2.bracket_basis(i_x1, i_x2).items():
        cut[t] += c
    for t, c in q2.bracket_basis(i_f1, i_f1).items():
        cut[t] -= c
    q2a, _ = q2.quotient(q2.graded_span([tuple(cut)]))
    out.append(relabel_canonical(q2a, "free21c2cut"))
    # cut one odd central line of the class-2 quotient: [x1,f1]
    x1f1 = q2.bracket(
        tuple(Fraction(1 if t == i_x1 else 0) for t in range(q2.dim)),
        tuple(Fraction(1 if t == i_f1 else 0) for t in range(q2.dim)),
    )
    q2b, _ = q2.quotient(q2.graded_span([x1f1]))
    out.append(relabel_canonical(q2b, "free21c2oddcut"))
    # class-3 quotient by one degree-3 line (degree-3 elements are central)
    g3 = a3.gamma(3)
    line = a3.graded_span([a3.gs_members(g3)[0]])
    q3, _ = a3.quotient(line)
    out.append(relabel_canonical(q3, "free21c3cut"))
    return out


def builtin_algebras() -> list[LieSuperalgebra]:
    """The shipped catalog: worked examples plus tight and slack bound cases."""
    algebras: list[LieSuperalgebra] = []
    for m in range(4):
        for n in range(4):
            algebras.append(abelian(m, n))
    algebras.append(heisenberg3())
    algebras.append(filiform4())
    algebras.append(special_heisenberg_odd(1))
    algebras.append(special_heisenberg_odd(2))
    algebras.append(
        direct_sum(heisenberg3(), abelian(1, 0, labels=["e4"]), name="heis3+A(1|0)")
    )
    algebras.extend(_free21_quotients())
    return algebras


# -- parsing ------------------------------------------------------------------------


def _parse_terms(expr: str, line_no: int):
    """Split a right-hand side into (coeff, label) pairs."""
    pieces = []
    rest = expr.strip()
    first = True
    while rest:
        sign = 1
        if rest[0] == "+":
            rest = rest[1:].lstrip()
        elif rest[0] == "-":
            sign = -1
            rest = rest[1:].lstrip()
        elif not first:
            raise CatalogError(f"expected '+' or '-' before {rest!r}", line_no)
        m = _TERM_RE.match(rest)
        if not m:
            raise CatalogError(f"cannot read term at {rest!r}", line_no)
        coeff = Fraction(m.group(1)) if m.group(1) else Fraction(1)
        pieces.append((sign * coeff, m.group(2)))
        rest = rest[m.end():].lstrip()
        first = False
    if not pieces:
        raise CatalogError("empty right-hand side", line_no)
    return pieces


def parse_catalog(text: str) -> list[LieSuperalgebra]:
    """Parse catalog text into validated algebras, in file order."""
    algebras: list[LieSuperalgebra] = []
    name = None
    start_line = 0
    even_labels: list[str] | None = None
    odd_labels: list[str] | None = None
    brackets: list[tuple[int, str, str, list]] = []
    seen_names: set[str] = set()

    def finish(line_no: int) -> None:
        nonlocal name, even_labels, odd_labels, brackets
        ev = even_labels or []
        od = odd_labels or []
        labels = ev + od
        if len(set(labels)) != len(labels):
            raise CatalogError(f"duplicate basis label in {name!r}", start_line)
        index = {lbl: i for i, lbl in enumerate(labels)}
        parities = [EVEN] * len(ev) + [ODD] * len(od)
        table: dict = {}
        seen_pairs = set()
        for line_no2, la, lb, terms in brackets:
            for lbl in (la, lb):
                if lbl not in index:
                    raise CatalogError(f"unknown label {lbl!r}", line_no2)
            i, j = index[la], index[lb]
            if (min(i, j), max(i, j)) in seen_pairs:
                raise CatalogError(
                    f"duplicate bracket entry for ({la},{lb})", line_no2
                )
            seen_pairs.add((min(i, j), max(i, j)))
            resolved = []
            want = (parities[i] + parities[j]) % 2
            for coeff, lbl in terms:
                if lbl not in index:
                    raise CatalogError(f"unknown label {lbl!r}", line_no2)
                k = index[lbl]
                if parities[k] != want:
                    raise CatalogError(
                        f"bracket [{la},{lb}] targets {lbl} of the wrong parity",
                        line_no2,
                    )
                resolved.append((k, coeff))
            if i <= j:
                table[(i, j)] = resolved
            else:
                sign = -Fraction((-1) ** (parities[i] * parities[j]))
                table[(j, i)] = [(k, sign * c) for k, c in resolved]
        alg = LieSuperalgebra(name, labels, parities, table)
        report = alg.validate()
        if not report.ok:
            raise CatalogError(
                f"record {name!r} is not a Lie superalgebra: {report.summary()}",
                start_line,
            )
        algebras.append(alg)
        name = None
        even_labels = None
        odd_labels = None
        brackets = []

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split()[0]
        if head == "algebra":
            if name is not None:
                raise CatalogError(
                    f"record {name!r} is missing its 'end'", line_no
                )
            parts = line.split()
            if len(parts) != 2:
                raise CatalogError("expected: algebra <name>", line_no)
            name = parts[1]
            if name in seen_names:
                raise CatalogError(f"duplicate algebra name {name!r}", line_no)
            seen_names.add(name)
            start_line = line_no
        elif name is None:
            raise CatalogError(f"statement outside an algebra record: {line!r}", line_no)
        elif head == "even":
            if even_labels is not None:
                raise CatalogError("repeated 'even' line", line_no)
            even_labels = line.split()[1:]
        elif head == "odd":
            if odd_labels is not None:
                raise CatalogError("repeated 'odd' line", line_no)
            odd_labels = line.split()[1:]
        elif head == "end":
            finish(line_no)
        elif line.startswith("["):
            m = _BRACKET_RE.match(line)
            if not m:
                raise CatalogError(
                    f"cannot parse bracket line {line!r}", line_no,
                    column=len(line) - len(line.lstrip()) + 1,
                )
            brackets.append(
                (line_no, m.group(1), m.group(2), _parse_terms(m.group(3), line_no))
            )
        else:
            raise CatalogError(f"unrecognized statement {line!r}", line_no)
    if name is not None:
        raise CatalogError(f"record {name!r} is missing its 'end'", start_line)
    return algebras


def render_catalog(algebras) -> str:
    """Serialize algebras in the catalog grammar, deterministically."""
    chunks = []
    for alg in algebras:
        lines = [f"algebra {alg.name}"]
        ev = alg.basis_labels[: alg.n_even]
        od = alg.basis_labels[alg.n_even:]
        for lbl in list(ev) + list(od):
            if not re.fullmatch(_LABEL, lbl):
                raise CatalogError(
                    f"label {lbl!r} of {alg.name} is not grammar-safe"
                )
        if " " in alg.name or not alg.name:
            raise CatalogError(f"algebra name {alg.name!r} is not grammar-safe")
        if ev:
            lines.append("even " + " ".join(ev))
        if od:
            lines.append("odd " + " ".join(od))
        for i in range(alg.dim):
            for j in range(i, alg.dim):
                terms = alg.bracket_basis(i, j)
                if not terms:
                    continue
                parts = []
                for k, c in sorted(terms.items()):
                    mag = f"{abs(c)}*" if abs(c) != 1 else ""
                    term = f"{mag}{alg.label_of(k)}"
                    if not parts:
                        parts.append(("-" if c < 0 else "") + term)
                    else:
                        parts.append(("- " if c < 0 else "+ ") + term)
                lines.append(
                    f"[{alg.label_of(i)},{alg.label_of(j)}] = " + " ".join(parts)
                )
        lines.append("end")
        chunks.append("\n".join(lines))
    return "\n\n".join(chunks) + "\n"


def builtin_catalog_text() -> str:
    return render_catalog(builtin_algebras())
