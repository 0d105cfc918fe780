"""Text formats for rules and domains, plus the bundled D224 data.

Rules file::

    # comment
    n 8
    1 2 3 2N3
    1 2 4 1N3

The law digit ``r`` in ``rNp`` is the rank of the element within the sorted
triple, not its label: ``6 7 8 2N1`` forbids 7 from the top slot.

Domain file: an optional ``n N`` header, then one order per line, best first,
as space-separated labels. Compact digit strings (``12345678``) are accepted on
input when n <= 9.
"""

from __future__ import annotations

from importlib import resources

from .domain import Domain, RuleAssignment
from .orders import MAX_N, InputError, LinearOrder, NeverLaw, Triple


class FormatError(InputError):
    """A parse failure with its 1-based line and column."""

    def __init__(self, kind: str, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.kind = kind
        self.line = line
        self.column = column


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if line.strip():
            yield lineno, raw, line


def _column(raw: str, token: str) -> int:
    return raw.find(token) + 1 if token in raw else 1


def _parse_header(raw: str, line: str, lineno: int) -> int:
    parts = line.split()
    if len(parts) != 2 or not parts[1].isdigit():
        raise FormatError("header", f"bad header {line.strip()!r}", lineno)
    n = int(parts[1])
    if not 3 <= n <= MAX_N:
        raise FormatError("header", f"n={n} outside 3..{MAX_N}", lineno, _column(raw, parts[1]))
    return n


def parse_rules(text: str) -> RuleAssignment:
    n = None
    rules: dict[Triple, NeverLaw] = {}
    for lineno, raw, line in _content_lines(text):
        parts = line.split()
        if parts[0] == "n":
            if n is not None:
                raise FormatError("header", "repeated n header", lineno)
            n = _parse_header(raw, line, lineno)
            continue
        if n is None:
            raise FormatError("header", "rules must start with an 'n N' header", lineno)
        if len(parts) != 4:
            raise FormatError("syntax", f"expected 'a b c rNp', got {line.strip()!r}", lineno)
        labels = []
        for tok in parts[:3]:
            if not tok.isdigit():
                raise FormatError("label", f"bad label {tok!r}", lineno, _column(raw, tok))
            value = int(tok)
            if not 1 <= value <= n:
                raise FormatError("range", f"label {value} outside 1..{n}", lineno, _column(raw, tok))
            labels.append(value)
        if not labels[0] < labels[1] < labels[2]:
            raise FormatError("order", f"triple {tuple(labels)} is not strictly ascending", lineno)
        try:
            lw = NeverLaw.parse(parts[3])
        except InputError:
            raise FormatError("law", f"malformed law token {parts[3]!r}", lineno, _column(raw, parts[3])) from None
        t = Triple(*labels)
        if t in rules:
            raise FormatError("duplicate", f"second rule for triple {t}", lineno)
        rules[t] = lw
    if n is None:
        raise FormatError("header", "missing 'n N' header", 1)
    return RuleAssignment(n, rules)


def render_rules(rules: RuleAssignment, comment: str | None = None) -> str:
    lines = [f"# {comment}"] if comment else []
    lines.append(f"n {rules.n}")
    lines.extend(f"{t.a} {t.b} {t.c} {lw}" for t, lw in rules)
    return "\n".join(lines) + "\n"


def parse_domain(text: str, n: int | None = None) -> Domain:
    seqs: list[tuple[int, ...]] = []
    seen: dict[tuple[int, ...], int] = {}
    for lineno, raw, line in _content_lines(text):
        parts = line.split()
        if parts[0] == "n":
            if seqs:
                raise FormatError("header", "header after orders", lineno)
            header_n = _parse_header(raw, line, lineno)
            if n is not None and n != header_n:
                raise FormatError("header", f"header says n={header_n}, expected {n}", lineno)
            n = header_n
            continue
        if len(parts) == 1 and parts[0].isdigit() and len(parts[0]) <= 9 and (n is None or n <= 9):
            seq = tuple(int(ch) for ch in parts[0])
        else:
            try:
                seq = tuple(int(tok) for tok in parts)
            except ValueError:
                raise FormatError("syntax", f"bad order {line.strip()!r}", lineno) from None
        if n is None:
            n = len(seq)
        if len(seq) != n or sorted(seq) != list(range(1, n + 1)):
            raise FormatError("permutation", f"{line.strip()!r} is not a permutation of 1..{n}", lineno)
        if seq in seen:
            raise FormatError("duplicate", f"order repeats line {seen[seq]}", lineno)
        seen[seq] = lineno
        seqs.append(seq)
    if n is None:
        raise FormatError("header", "empty domain file without an 'n N' header", 1)
    return Domain(n, tuple(LinearOrder(s) for s in seqs))


def render_domain(d: Domain, header: bool = True) -> str:
    lines = [f"n {d.n}"] if header else []
    lines.extend(" ".join(map(str, o.seq)) for o in d.orders)
    return "\n".join(lines) + "\n"


def read_rules(path) -> RuleAssignment:
    with open(path) as fh:
        return parse_rules(fh.read())


def read_domain(path) -> Domain:
    with open(path) as fh:
        return parse_domain(fh.read())


def _data(name: str) -> str:
    return resources.files("condorcet").joinpath("data", name).read_text()


def d224_rules() -> RuleAssignment:
    return parse_rules(_data("d224.rules"))


def d224_domain() -> Domain:
    return parse_domain(_data("d224.domain"))


def d224_core() -> list[LinearOrder]:
    return list(parse_domain(_data("d224.core")).orders)


def data_path(name: str):
    return resources.files("condorcet").joinpath("data", name)
