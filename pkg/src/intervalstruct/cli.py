"""Command-line front end.

Input grammar (line oriented, ``#`` starts a comment)::

    UNIVERSE_THETA {t1,t2,t3}
    UNIVERSE_W {w1,w2,w3}
    LOWER <theta-set> : <w-set>
    UPPER <theta-set> : <w-set>
    PARTITION <theta-set>
    MASS <theta-set> : <decimal>
    PROB <w-label> : <decimal>
    RELATION <w-label> : <theta-set>

A bare keyword on its own line opens a section; following lines without a
keyword belong to it. Exit status: 0 success, 1 parse or validation error,
2 inconsistent input (or a failed ``check`` verdict).
"""

from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass, field
from typing import Sequence

from . import config
from .belief import (
    BasicProbabilityAssignment,
    ProbabilityOnW,
    bel_from_bpa,
    bel_from_interval,
    bpa_from_bel,
    pl_from_bel,
)
from .compatibility import CompatibilityRelation, bsa_from_gamma, interval_from_compatibility
from .errors import Inconsistent, IntervalStructError
from .finite_sets import Subset, Universe, powerset
from .interval_core import (
    IntervalStructure,
    SetValuedMap,
    check_lower_axioms,
    check_properties,
    check_upper_axioms,
    duality_witness,
    dualize,
    rules_from_interval,
)
from .rough_sets import (
    decision_rules,
    lower_approx,
    make_space,
    partition_from_blocks,
    reductions,
    upper_approx,
)
from .synthesis import Assignment, max_min_bounds, synthesize

KINDS = ("UNIVERSE_W", "UNIVERSE_THETA", "LOWER", "UPPER", "PARTITION", "MASS", "PROB", "RELATION")
SINGLE = ("UNIVERSE_W", "UNIVERSE_THETA")
COMMANDS = ("synthesize", "check", "rough", "belief", "compat")

EXIT_OK, EXIT_ERROR, EXIT_INCONSISTENT = 0, 1, 2

_KEYWORD = re.compile(r"^([A-Z][A-Z_]*)(?:\s+(.*))?$")
_SET = re.compile(r"^\{([^{}]*)\}$")
_LABEL = re.compile(r"^[^\s{},:#]+$")


class ParseError(IntervalStructError):
    def __init__(self, line: int | None, message: str):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


@dataclass
class Document:
    """Parsed input: ordered sections of raw payload lines plus resolved entries."""

    sections: list[tuple[str, list[tuple[int, str]]]] = field(default_factory=list)
    theta: Universe | None = None
    w: Universe | None = None
    lower: list[tuple[int, Subset, Subset]] = field(default_factory=list)
    upper: list[tuple[int, Subset, Subset]] = field(default_factory=list)
    partition: list[tuple[int, Subset]] = field(default_factory=list)
    mass: list[tuple[int, Subset, float]] = field(default_factory=list)
    prob: list[tuple[int, str, float]] = field(default_factory=list)
    relation: list[tuple[int, str, Subset]] = field(default_factory=list)

    def payloads(self, kind: str) -> list[tuple[int, str]]:
        return [p for k, lines in self.sections if k == kind for p in lines]


def _labels(text: str, line: int) -> list[str]:
    m = _SET.match(text.strip())
    if not m:
        raise ParseError(line, f"malformed set literal {text.strip()!r}")
    items = [s.strip() for s in m.group(1).split(",")]
    if items == [""]:
        return []
    for s in items:
        if not _LABEL.match(s):
            raise ParseError(line, f"malformed label {s!r} in set literal")
    return items


def _pair(text: str, line: int) -> tuple[str, str]:
    left, sep, right = text.partition(":")
    if not sep or not left.strip() or not right.strip():
        raise ParseError(line, f"expected '<lhs> : <rhs>', got {text!r}")
    return left.strip(), right.strip()


def _resolve(u: Universe, labels: list[str], line: int, name: str) -> Subset:
    for lab in labels:
        if lab not in u:
            raise ParseError(line, f"undeclared {name} label {lab!r}")
    return u.subset(labels)


def _decimal(text: str, line: int) -> float:
    try:
        return float(text)
    except ValueError:
        raise ParseError(line, f"malformed decimal {text!r}") from None


def parse(text: str) -> Document:
    doc = Document()
    current: list[tuple[int, str]] | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _KEYWORD.match(line)
        # inside an open section an unknown leading word is payload (e.g. a W label)
        if m and (m.group(1) in KINDS or current is None):
            kind, payload = m.group(1), m.group(2)
            if kind not in KINDS:
                raise ParseError(lineno, f"unknown section {kind!r}")
            if kind in SINGLE and any(k == kind for k, _ in doc.sections):
                raise ParseError(lineno, f"duplicate {kind} section")
            current = []
            doc.sections.append((kind, current))
            if payload:
                current.append((lineno, payload.strip()))
                current = None
            continue
        if current is None:
            raise ParseError(lineno, f"payload outside any section: {line!r}")
        current.append((lineno, line))

    for kind in SINGLE:
        lines = doc.payloads(kind)
        if not lines:
            continue
        if len(lines) > 1:
            raise ParseError(lines[1][0], f"{kind} takes a single set literal")
        lineno, payload = lines[0]
        labels = _labels(payload, lineno) if payload.startswith("{") else payload.replace(",", " ").split()
        try:
            u = Universe(tuple(labels))
        except IntervalStructError as e:
            raise ParseError(lineno, str(e)) from None
        if kind == "UNIVERSE_THETA":
            doc.theta = u
        else:
            doc.w = u
    if doc.theta is None:
        raise ParseError(None, "missing UNIVERSE_THETA")

    def need_w(lineno: int, kind: str) -> Universe:
        if doc.w is None:
            raise ParseError(lineno, f"{kind} requires UNIVERSE_W")
        return doc.w

    th = doc.theta
    for kind in ("LOWER", "UPPER"):
        for lineno, payload in doc.payloads(kind):
            left, right = _pair(payload, lineno)
            a = _resolve(th, _labels(left, lineno), lineno, "theta")
            x = _resolve(need_w(lineno, kind), _labels(right, lineno), lineno, "W")
            getattr(doc, kind.lower()).append((lineno, a, x))
    for lineno, payload in doc.payloads("PARTITION"):
        doc.partition.append((lineno, _resolve(th, _labels(payload, lineno), lineno, "theta")))
    for lineno, payload in doc.payloads("MASS"):
        left, right = _pair(payload, lineno)
        doc.mass.append((lineno, _resolve(th, _labels(left, lineno), lineno, "theta"), _decimal(right, lineno)))
    for lineno, payload in doc.payloads("PROB"):
        left, right = _pair(payload, lineno)
        if left not in need_w(lineno, "PROB"):
            raise ParseError(lineno, f"undeclared W label {left!r}")
        doc.prob.append((lineno, left, _decimal(right, lineno)))
    for lineno, payload in doc.payloads("RELATION"):
        left, right = _pair(payload, lineno)
        if left not in need_w(lineno, "RELATION"):
            raise ParseError(lineno, f"undeclared W label {left!r}")
        doc.relation.append((lineno, left, _resolve(th, _labels(right, lineno), lineno, "theta")))
    return doc


# --------------------------------------------------------------------------
# reports
# --------------------------------------------------------------------------

@dataclass
class OutputReport:
    kind: str  # table | rules | bsa | verdict
    title: str
    header: tuple[str, ...]
    rows: list[tuple[str, ...]]

    def render(self, fmt: str) -> str:
        if fmt == "tsv":
            return "".join("\t".join((self.kind,) + row) + "\n" for row in self.rows)
        lines = [f"# {self.title}"]
        table = ([self.header] if self.header else []) + self.rows
        if table:
            widths = [max(len(r[i]) for r in table) for i in range(len(table[0]))]
            for r in table:
                lines.append("  ".join(c.ljust(wd) for c, wd in zip(r, widths)).rstrip())
        return "\n".join(lines) + "\n"


def render(reports: Sequence[OutputReport], fmt: str = "text") -> str:
    sep = "" if fmt == "tsv" else "\n"
    return sep.join(r.render(fmt) for r in reports)


def _num(v: float) -> str:
    s = f"{v:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _bsa_report(j) -> OutputReport:
    return OutputReport("bsa", "basic set assignment", (), [(str(a), ":", str(v)) for a, v in j.items()])


def _bounds_report(F: IntervalStructure) -> OutputReport:
    rows = [(str(a), str(lo), str(F.upper[a])) for a, lo in F.lower.items()]
    return OutputReport("table", "bounds", ("A", "lower", "upper"), rows)


def _rules_report(rules) -> OutputReport:
    return OutputReport("rules", "rules", (), [(str(r.lhs), r.arrow, str(r.rhs)) for r in rules])


def _need_w(doc: Document) -> Universe:
    if doc.w is None:
        raise ParseError(None, "missing UNIVERSE_W")
    return doc.w


def _assignment(doc: Document) -> Assignment:
    w = _need_w(doc)
    return Assignment(
        doc.theta, w,
        lower=_merge(doc.lower, lambda a, b: a | b),
        upper=_merge(doc.upper, lambda a, b: a & b),
    )


def _merge(entries, combine) -> dict:
    out: dict = {}
    for _, a, x in entries:
        out[a] = combine(out[a], x) if a in out else x
    return out


def _relation(doc: Document) -> CompatibilityRelation:
    w = _need_w(doc)
    gammas = [0] * w.size
    for _, label, s in doc.relation:
        gammas[w.index(label)] |= s.mask
    return CompatibilityRelation(w, doc.theta, gammas)


def _probability(doc: Document) -> ProbabilityOnW:
    w = _need_w(doc)
    p = [0.0] * w.size
    for lineno, label, v in doc.prob:
        p[w.index(label)] += v
    return ProbabilityOnW(w, p)


def cmd_synthesize(doc: Document) -> tuple[list[OutputReport], int]:
    j = synthesize(_assignment(doc))
    F = max_min_bounds(j)
    return [_bsa_report(j), _bounds_report(F), _rules_report(rules_from_interval(F))], EXIT_OK


def cmd_compat(doc: Document) -> tuple[list[OutputReport], int]:
    rel = _relation(doc)
    F = interval_from_compatibility(rel)
    return [_bsa_report(bsa_from_gamma(rel)), _bounds_report(F)], EXIT_OK


def cmd_check(doc: Document) -> tuple[list[OutputReport], int]:
    """Verdicts for the maps given by LOWER/UPPER (defaults: empty / W), or for a RELATION."""
    w = _need_w(doc)
    if doc.relation:
        F = interval_from_compatibility(_relation(doc))
        lower, upper = F.lower, F.upper
    else:
        lower = SetValuedMap.from_mapping(doc.theta, w, _merge(doc.lower, lambda a, b: a | b), 0)
        if doc.upper:
            upper = SetValuedMap.from_mapping(
                doc.theta, w, _merge(doc.upper, lambda a, b: a & b), w.full_mask
            )
        else:
            upper = dualize(lower)
    results = dict(check_lower_axioms(lower).results)
    results.update(check_upper_axioms(upper).results)
    wit = duality_witness(lower, upper)
    results["duality"] = None if wit is None else (wit,)
    results["P1"] = check_properties(IntervalStructure(lower, upper)).results["P1"]
    rows = [
        (name, "pass", "") if w_ is None else (name, "FAIL", " ".join(str(s) for s in w_))
        for name, w_ in results.items()
    ]
    ok = all(v is None for v in results.values())
    return [OutputReport("verdict", "axioms", (), rows)], EXIT_OK if ok else EXIT_INCONSISTENT


def cmd_rough(doc: Document, target: str | None = None) -> tuple[list[OutputReport], int]:
    if not doc.partition:
        raise ParseError(None, "rough requires PARTITION lines")
    part = partition_from_blocks(doc.theta, [s for _, s in doc.partition])
    space = make_space(part)
    if target is not None:
        targets = [_resolve(doc.theta, _labels(target, None), None, "theta")]
    else:
        targets = list(powerset(doc.theta))
    blocks = OutputReport(
        "table", "blocks", (), [(lab, ":", str(b)) for lab, b in zip(space.quotient.labels, part.block_subsets())]
    )
    rows, rules = [], []
    for a in targets:
        inner, outer = reductions(space, a)
        rows.append((str(a), str(lower_approx(space, a)), str(upper_approx(space, a)), str(inner), str(outer)))
        rules.extend(decision_rules(space, a))
    table = OutputReport("table", "approximations", ("A", "lower", "upper", "inner", "outer"), rows)
    return [blocks, table, _rules_report(rules)], EXIT_OK


def cmd_belief(doc: Document) -> tuple[list[OutputReport], int]:
    if doc.mass:
        masses: dict = {}
        for _, a, v in doc.mass:
            masses[a] = masses.get(a, 0.0) + v
        m = BasicProbabilityAssignment(doc.theta, masses)
        bel = bel_from_bpa(m)
        pl = pl_from_bel(bel)
        rows = [(str(a), _num(m[a]), _num(b), _num(pl[a])) for a, b in bel.items()]
        return [OutputReport("table", "belief", ("A", "m", "Bel", "Pl"), rows)], EXIT_OK
    if not doc.prob:
        raise ParseError(None, "belief requires MASS lines, or PROB lines with RELATION or LOWER/UPPER")
    if doc.relation:
        F = interval_from_compatibility(_relation(doc))
    else:
        F = max_min_bounds(synthesize(_assignment(doc)))
    bel, pl = bel_from_interval(F, _probability(doc))
    m = bpa_from_bel(bel)
    rows = [
        (str(a), str(lo), str(F.upper[a]), _num(m[a]), _num(bel[a]), _num(pl[a]))
        for a, lo in F.lower.items()
    ]
    return [OutputReport("table", "belief", ("A", "lower", "upper", "m", "Bel", "Pl"), rows)], EXIT_OK


def run(command: str, doc: Document, target: str | None = None) -> tuple[list[OutputReport], int]:
    if command == "synthesize":
        return cmd_synthesize(doc)
    if command == "check":
        return cmd_check(doc)
    if command == "rough":
        return cmd_rough(doc, target)
    if command == "belief":
        return cmd_belief(doc)
    if command == "compat":
        return cmd_compat(doc)
    raise ValueError(f"unknown command {command!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="input document, or - for stdin")
    common.add_argument("--format", choices=("text", "tsv"), default="text")
    common.add_argument("--max-theta", type=int, default=None, metavar="N",
                        help="override the dense-enumeration cap on |theta|")
    parser = argparse.ArgumentParser(prog="intervalstruct", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("synthesize", parents=[common], help="expert assignments to tightest bounds and rules")
    sub.add_parser("check", parents=[common], help="axiom verdicts for given lower/upper maps")
    rough = sub.add_parser("rough", parents=[common], help="rough-set approximations of a partition")
    rough.add_argument("--target", default=None, help="single theta-set literal, e.g. {t1,t3}")
    sub.add_parser("belief", parents=[common], help="belief/plausibility tables")
    sub.add_parser("compat", parents=[common], help="interval structure of a compatibility relation")
    return parser


def _write(stream, text: str) -> None:
    buf = getattr(stream, "buffer", None)
    if buf is not None:
        buf.write(text.encode("utf-8"))
        buf.flush()
    else:
        stream.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.file == "-":
            text = sys.stdin.buffer.read().decode("utf-8")
        else:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        with config.dense_cap(args.max_theta if args.max_theta is not None else config.get_dense_cap()):
            doc = parse(text)
            reports, code = run(args.command, doc, getattr(args, "target", None))
    except Inconsistent as e:
        _write(sys.stderr, f"inconsistent: {e}\n")
        return EXIT_INCONSISTENT
    except (IntervalStructError, OSError, UnicodeDecodeError) as e:
        _write(sys.stderr, f"error: {e}\n")
        return EXIT_ERROR
    sys.stdout.flush()
    _write(sys.stdout, render(reports, args.format))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
