"""Business-process DSL and scattering analysis.

The DSL declares services and the operations they offer::

    # comment
    service Account {
      op ViewBalance
      op ViewStatement
    }

An operation whose name recurs across two or more services is flagged as
crosscutting; groups of such operations that share the exact same
service set become extraction candidates for the enquiry dispatch
pattern. Only scattering degree is measured; tangling is left as a
future metric.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import DuplicateOperation, DuplicateService, ModelSyntaxError

MODEL_FILE_EXTENSION = ".bpm"
BUNDLED_MODEL_RESOURCE = "internet_banking.bpm"
ENQUIRY_PATTERN_LABEL = "Enquiry (Visitor)"

CROSSCUTTING_DEGREE = 2


@dataclass(frozen=True)
class ServiceDef:
    name: str
    operations: tuple[str, ...]


@dataclass(frozen=True)
class ProcessModel:
    services: tuple[ServiceDef, ...]


@dataclass(frozen=True)
class ReportEntry:
    operation: str
    degree: int
    services: tuple[str, ...]

    @property
    def crosscutting(self) -> bool:
        return self.degree >= CROSSCUTTING_DEGREE


@dataclass(frozen=True)
class PatternCandidate:
    pattern: str
    operations: tuple[str, ...]
    families: tuple[str, ...]


@dataclass(frozen=True)
class CrosscuttingReport:
    entries: tuple[ReportEntry, ...]
    candidates: tuple[PatternCandidate, ...]

    def crosscutting_operations(self) -> tuple[str, ...]:
        return tuple(sorted(e.operation for e in self.entries if e.crosscutting))


# -- parsing ---------------------------------------------------------------

@dataclass(frozen=True)
class _Token:
    text: str
    line: int
    column: int


_WORD_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line, column = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            column = 1
            i += 1
        elif ch in " \t\r":
            column += 1
            i += 1
        elif ch == "#":
            while i < len(text) and text[i] != "\n":
                i += 1
        elif ch in "{}":
            tokens.append(_Token(ch, line, column))
            column += 1
            i += 1
        else:
            match = _WORD_RE.match(text, i)
            if not match:
                raise ModelSyntaxError(f"unexpected character {ch!r}", line, column)
            tokens.append(_Token(match.group(), line, column))
            column += len(match.group())
            i = match.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> _Token | None:
        token = self.peek()
        if token is not None:
            self.pos += 1
        return token

    def fail(self, message: str, token: _Token | None):
        if token is None:
            last = self.tokens[-1] if self.tokens else _Token("", 1, 1)
            raise ModelSyntaxError(f"{message}, got end of input", last.line, last.column)
        raise ModelSyntaxError(f"{message}, got {token.text!r}", token.line, token.column)

    def expect_word(self, description: str) -> _Token:
        token = self.take()
        if token is None or token.text in "{}" or not _WORD_RE.fullmatch(token.text):
            self.fail(f"expected {description}", token)
        return token

    def parse(self) -> ProcessModel:
        services: list[ServiceDef] = []
        seen: dict[str, int] = {}
        while (token := self.take()) is not None:
            if token.text != "service":
                self.fail("expected 'service'", token)
            name = self.expect_word("service name")
            if name.text in seen:
                raise DuplicateService(
                    f"service {name.text!r} already declared on line {seen[name.text]}",
                    name.line,
                    name.column,
                )
            seen[name.text] = name.line
            brace = self.take()
            if brace is None or brace.text != "{":
                self.fail("expected '{'", brace)
            services.append(ServiceDef(name.text, self.parse_operations(name.text)))
        return ProcessModel(services=tuple(services))

    def parse_operations(self, service_name: str) -> tuple[str, ...]:
        operations: list[str] = []
        while True:
            token = self.take()
            if token is None:
                self.fail(f"unbalanced braces: service {service_name!r} is never closed", token)
            if token.text == "}":
                return tuple(operations)
            if token.text != "op":
                self.fail("expected 'op' or '}'", token)
            op = self.expect_word("operation name")
            if op.text in operations:
                raise DuplicateOperation(
                    f"operation {op.text!r} repeated in service {service_name!r}",
                    op.line,
                    op.column,
                )
            operations.append(op.text)


def parse_model(text: str) -> ProcessModel:
    """Parse DSL text into a ProcessModel; raises ModelSyntaxError variants."""
    return _Parser(_tokenize(text)).parse()


def load_model(path) -> ProcessModel:
    return parse_model(Path(path).read_text(encoding="utf-8"))


def load_bundled_model() -> ProcessModel:
    return parse_model(bundled_model_text())


def bundled_model_text() -> str:
    return (resources.files("netbank") / "data" / BUNDLED_MODEL_RESOURCE).read_text(
        encoding="utf-8"
    )


def serialize_model(model: ProcessModel) -> str:
    """Canonical pretty-printer; parse(serialize(parse(x))) == parse(x)."""
    blocks = []
    for service in model.services:
        lines = [f"service {service.name} {{"]
        lines.extend(f"  op {op}" for op in service.operations)
        lines.append("}")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


# -- analysis ---------------------------------------------------------------

def analyze(model: ProcessModel) -> CrosscuttingReport:
    """Measure how widely each operation name scatters across services.

    degree(op) = number of services listing op. Output order is
    canonical (degree descending, then name), so reordering the model
    text never changes the report.
    """
    occurrences: dict[str, list[str]] = {}
    for service in model.services:
        for op in service.operations:
            occurrences.setdefault(op, []).append(service.name)
    entries = tuple(
        ReportEntry(operation=op, degree=len(names), services=tuple(sorted(names)))
        for op, names in sorted(
            occurrences.items(), key=lambda item: (-len(item[1]), item[0])
        )
    )
    report = CrosscuttingReport(entries=entries, candidates=())
    return CrosscuttingReport(entries=entries, candidates=suggest_patterns(report))


def suggest_patterns(report: CrosscuttingReport) -> tuple[PatternCandidate, ...]:
    """Group crosscutting operations that share an identical service set.

    Each maximal group of >=2 operations spread over the same >=2
    services is one candidate: the operations become the service axis of
    the dispatch, the sharing services its family axis.
    """
    groups: dict[tuple[str, ...], list[str]] = {}
    for entry in report.entries:
        if entry.crosscutting:
            groups.setdefault(entry.services, []).append(entry.operation)
    candidates = [
        PatternCandidate(
            pattern=ENQUIRY_PATTERN_LABEL,
            operations=tuple(sorted(ops)),
            families=families,
        )
        for families, ops in groups.items()
        if len(ops) >= 2
    ]
    candidates.sort(key=lambda c: (c.families, c.operations))
    return tuple(candidates)


# -- rendering --------------------------------------------------------------

def report_to_json(report: CrosscuttingReport) -> dict:
    return {
        "entries": [
            {
                "operation": e.operation,
                "degree": e.degree,
                "services": list(e.services),
                "crosscutting": e.crosscutting,
            }
            for e in report.entries
        ],
        "crosscutting": list(report.crosscutting_operations()),
        "candidates": [
            {
                "pattern": c.pattern,
                "operations": list(c.operations),
                "families": list(c.families),
            }
            for c in report.candidates
        ],
    }


def report_to_text(report: CrosscuttingReport) -> str:
    width = max((len(e.operation) for e in report.entries), default=9)
    width = max(width, len("operation"))
    lines = [f"{'operation':<{width}}  degree  services"]
    for e in report.entries:
        lines.append(f"{e.operation:<{width}}  {e.degree:>6}  {', '.join(e.services)}")
    crosscutting = report.crosscutting_operations()
    lines.append("")
    lines.append(
        "crosscutting (degree >= 2): "
        + (", ".join(crosscutting) if crosscutting else "none")
    )
    lines.append("")
    if report.candidates:
        lines.append("pattern candidates:")
        for c in report.candidates:
            lines.append(
                f"  - {c.pattern}: operations {', '.join(c.operations)}; "
                f"families {', '.join(c.families)}"
            )
    else:
        lines.append("pattern candidates: none")
    return "\n".join(lines) + "\n"
