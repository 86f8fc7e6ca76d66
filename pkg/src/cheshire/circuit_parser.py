"""Line-oriented text format for optical circuits (``.circuit`` files).

One statement per line, ``#`` starts a comment, tokens are separated by
whitespace.  Statement order is propagation order.  Statements:

    space <name> labels=<l1,l2,...>
    bs <space> couple=<la,lb> convention=paper [when=<space>.<label>]
    switch1234 <space> [when=<space>.<label>]
    wavefilter <space> phi=<num> transmit_to=<port> reflect_to=<port>
    merge <spaceA>,<spaceB> into=<space> map=<la>.<lb>-><label>,... leak_to=<port>,...
    detector <name> space=<space> label=<label>

A port is ``next`` (the beam continues) or ``detector:NAME``.  Spaces must
be declared before use.  Numbers are decimal floats; ``pi`` and
``pi/<number>`` literals are accepted.  ``merge`` pairs each unmapped
product label combination, enumerated row-major over the two source
bases, with one ``leak_to`` port.

Parsing is total: the first violation raises :class:`ParseError` with a
1-based line and column.  :func:`render_circuit` emits the canonical form
(comments stripped, option keys sorted, LF line endings), and parsing the
rendered text reproduces the document structurally.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources

from .angles import parse_angle
from .optical_network import (
    BeamSplitter,
    Circuit,
    Detector,
    Element,
    ModeSwitch,
    PathMerge,
    WaveFilter,
)
from .qstate import SpaceLabel

KINDS = frozenset(
    {"UnknownElement", "BadArity", "UndeclaredSpace", "BadNumber", "DuplicateName"}
)


class ParseError(Exception):
    """First grammar or reference violation, with its source position."""

    def __init__(self, line: int, column: int, message: str, kind: str):
        if kind not in KINDS:
            raise ValueError(f"unknown ParseError kind {kind!r}")
        super().__init__(f"line {line}, column {column}: {message} [{kind}]")
        self.line = line
        self.column = column
        self.message = message
        self.kind = kind


@dataclass(frozen=True)
class SpaceDecl:
    space: SpaceLabel
    line: int = field(compare=False)


@dataclass(frozen=True)
class ElementLine:
    element: Element
    line: int = field(compare=False)


@dataclass(frozen=True)
class CircuitDoc:
    """Parsed declarations and element statements, in source order."""

    declarations: tuple[SpaceDecl, ...]
    element_lines: tuple[ElementLine, ...]
    source_name: str = field(default="<string>", compare=False)

    def to_circuit(self) -> Circuit:
        return Circuit(
            spaces=tuple(d.space for d in self.declarations),
            elements=tuple(e.element for e in self.element_lines),
        )


_TOKEN = re.compile(r"\S+")


class _Parser:
    def __init__(self, source_name: str):
        self.source_name = source_name
        self.spaces: dict[str, SpaceLabel] = {}
        self.declarations: list[SpaceDecl] = []
        self.elements: list[ElementLine] = []
        self.detector_names: set[str] = set()

    # -- helpers ----------------------------------------------------------

    def fail(self, line: int, col: int, message: str, kind: str):
        raise ParseError(line, col, message, kind)

    def positional(self, line, tokens, what: str) -> tuple[str, int]:
        if len(tokens) < 2 or "=" in tokens[1][0]:
            self.fail(line, tokens[0][1], f"expected {what} after {tokens[0][0]!r}", "BadArity")
        return tokens[1]

    def options(self, line, tokens, kw_col: int, required: set[str], optional: set[str] = frozenset()):
        allowed = required | optional
        opts: dict[str, tuple[str, int]] = {}
        for tok, col in tokens:
            if "=" not in tok:
                self.fail(line, col, f"expected key=value option, got {tok!r}", "BadArity")
            key, _, value = tok.partition("=")
            if key not in allowed:
                self.fail(line, col, f"unknown option {key!r}", "BadArity")
            if key in opts:
                self.fail(line, col, f"duplicate option {key!r}", "BadArity")
            if not value:
                self.fail(line, col, f"empty value for option {key!r}", "BadArity")
            opts[key] = (value, col)
        for key in sorted(required):
            if key not in opts:
                self.fail(line, kw_col, f"missing required option {key!r}", "BadArity")
        return opts

    def known_space(self, line, col, name: str) -> SpaceLabel:
        space = self.spaces.get(name)
        if space is None:
            self.fail(line, col, f"space {name!r} is not declared", "UndeclaredSpace")
        return space

    def known_label(self, line, col, space: SpaceLabel, label: str) -> str:
        if label not in space.basis_labels:
            self.fail(
                line, col,
                f"label {label!r} is not declared by space {space.name!r}",
                "UndeclaredSpace",
            )
        return label

    def port(self, line, col, value: str, allow_next: bool = True) -> str:
        if value == "next":
            if not allow_next:
                self.fail(line, col, "this port must be detector:NAME", "BadArity")
            return value
        if not value.startswith("detector:") or len(value) <= len("detector:"):
            self.fail(line, col, f"bad port {value!r}: expected next or detector:NAME", "BadArity")
        return value

    def when_clause(self, line, opts) -> tuple[str, str] | None:
        if "when" not in opts:
            return None
        value, col = opts["when"]
        name, sep, label = value.partition(".")
        if not sep or not name or not label:
            self.fail(line, col, f"bad when clause {value!r}: expected space.label", "BadArity")
        space = self.known_space(line, col, name)
        self.known_label(line, col, space, label)
        return (name, label)

    # -- statements -------------------------------------------------------

    def stmt_space(self, line, tokens):
        name, _ = self.positional(line, tokens, "a space name")
        if name in self.spaces:
            self.fail(line, tokens[1][1], f"space {name!r} declared twice", "DuplicateName")
        opts = self.options(line, tokens[2:], tokens[0][1], required={"labels"})
        value, col = opts["labels"]
        labels = value.split(",")
        if any(not l for l in labels):
            self.fail(line, col, f"empty label in {value!r}", "BadArity")
        if len(set(labels)) != len(labels):
            self.fail(line, col, f"duplicate basis label in {value!r}", "DuplicateName")
        space = SpaceLabel(name, tuple(labels))
        self.spaces[name] = space
        self.declarations.append(SpaceDecl(space, line))

    def stmt_bs(self, line, tokens):
        name, col = self.positional(line, tokens, "a space name")
        space = self.known_space(line, col, name)
        opts = self.options(
            line, tokens[2:], tokens[0][1],
            required={"couple", "convention"}, optional={"when"},
        )
        value, ccol = opts["couple"]
        labels = value.split(",")
        if len(labels) != 2:
            self.fail(line, ccol, f"couple needs exactly two labels, got {value!r}", "BadArity")
        for label in labels:
            self.known_label(line, ccol, space, label)
        if labels[0] == labels[1]:
            self.fail(line, ccol, f"couple labels must differ, got {value!r}", "DuplicateName")
        conv, vcol = opts["convention"]
        if conv != "paper":
            self.fail(line, vcol, f"unsupported convention {conv!r}", "BadArity")
        when = self.when_clause(line, opts)
        self.elements.append(
            ElementLine(BeamSplitter(name, (labels[0], labels[1]), conv, when), line)
        )

    def stmt_switch(self, line, tokens):
        name, col = self.positional(line, tokens, "a space name")
        space = self.known_space(line, col, name)
        if space.dim != 4:
            self.fail(line, col, f"switch1234 needs a 4-label space, {name!r} has {space.dim}", "BadArity")
        opts = self.options(line, tokens[2:], tokens[0][1], required=set(), optional={"when"})
        when = self.when_clause(line, opts)
        self.elements.append(ElementLine(ModeSwitch(name, when), line))

    def stmt_wavefilter(self, line, tokens):
        name, col = self.positional(line, tokens, "a space name")
        space = self.known_space(line, col, name)
        if space.dim != 4:
            self.fail(line, col, f"wavefilter needs a 4-label space, {name!r} has {space.dim}", "BadArity")
        opts = self.options(
            line, tokens[2:], tokens[0][1],
            required={"phi", "transmit_to", "reflect_to"},
        )
        value, pcol = opts["phi"]
        try:
            phi = parse_angle(value)
        except ValueError:
            self.fail(line, pcol, f"bad number {value!r}", "BadNumber")
        transmit_to = self.port(line, opts["transmit_to"][1], opts["transmit_to"][0])
        reflect_to = self.port(line, opts["reflect_to"][1], opts["reflect_to"][0])
        if transmit_to == "next" and reflect_to == "next":
            self.fail(line, opts["transmit_to"][1], "at most one filter port may be next", "BadArity")
        self.elements.append(
            ElementLine(WaveFilter(name, phi, transmit_to, reflect_to), line)
        )

    def stmt_merge(self, line, tokens):
        value, col = self.positional(line, tokens, "two space names")
        names = value.split(",")
        if len(names) != 2:
            self.fail(line, col, f"merge needs exactly two source spaces, got {value!r}", "BadArity")
        if names[0] == names[1]:
            self.fail(line, col, f"merge sources must differ, got {value!r}", "DuplicateName")
        space_a = self.known_space(line, col, names[0])
        space_b = self.known_space(line, col, names[1])
        opts = self.options(
            line, tokens[2:], tokens[0][1], required={"into", "map", "leak_to"}
        )
        into = self.known_space(line, opts["into"][1], opts["into"][0])

        mvalue, mcol = opts["map"]
        mapping: list[tuple[tuple[str, str], str]] = []
        seen_pairs: set[tuple[str, str]] = set()
        seen_targets: set[str] = set()
        for entry in mvalue.split(","):
            source, sep, target = entry.partition("->")
            la, dot, lb = source.partition(".")
            if not sep or not dot or not la or not lb or not target:
                self.fail(line, mcol, f"bad map entry {entry!r}: expected la.lb->label", "BadArity")
            self.known_label(line, mcol, space_a, la)
            self.known_label(line, mcol, space_b, lb)
            self.known_label(line, mcol, into, target)
            if (la, lb) in seen_pairs:
                self.fail(line, mcol, f"map lists {la}.{lb} twice", "DuplicateName")
            if target in seen_targets:
                self.fail(line, mcol, f"map target {target!r} reused", "DuplicateName")
            seen_pairs.add((la, lb))
            seen_targets.add(target)
            mapping.append(((la, lb), target))

        lvalue, lcol = opts["leak_to"]
        ports = [self.port(line, lcol, p, allow_next=False) for p in lvalue.split(",")]
        needed = space_a.dim * space_b.dim - len(mapping)
        if len(ports) != needed:
            self.fail(
                line, lcol,
                f"leak_to needs {needed} ports for the unmapped combinations, got {len(ports)}",
                "BadArity",
            )
        self.elements.append(
            ElementLine(
                PathMerge((names[0], names[1]), into.name, tuple(mapping), tuple(ports)),
                line,
            )
        )

    def stmt_detector(self, line, tokens):
        name, col = self.positional(line, tokens, "a detector name")
        if name in self.detector_names:
            self.fail(line, col, f"detector {name!r} declared twice", "DuplicateName")
        opts = self.options(line, tokens[2:], tokens[0][1], required={"space", "label"})
        space = self.known_space(line, opts["space"][1], opts["space"][0])
        label = self.known_label(line, opts["label"][1], space, opts["label"][0])
        self.detector_names.add(name)
        self.elements.append(ElementLine(Detector(name, space.name, label), line))

    _STATEMENTS = {
        "space": stmt_space,
        "bs": stmt_bs,
        "switch1234": stmt_switch,
        "wavefilter": stmt_wavefilter,
        "merge": stmt_merge,
        "detector": stmt_detector,
    }

    def parse(self, text: str) -> CircuitDoc:
        for lineno, raw in enumerate(text.split("\n"), start=1):
            code = raw.rstrip("\r").split("#", 1)[0]
            tokens = [(m.group(0), m.start() + 1) for m in _TOKEN.finditer(code)]
            if not tokens:
                continue
            keyword, col = tokens[0]
            handler = self._STATEMENTS.get(keyword.lower())
            if handler is None:
                self.fail(lineno, col, f"unknown statement keyword {keyword!r}", "UnknownElement")
            handler(self, lineno, tokens)
        return CircuitDoc(
            declarations=tuple(self.declarations),
            element_lines=tuple(self.elements),
            source_name=self.source_name,
        )


def parse_circuit(text: str, source_name: str = "<string>") -> CircuitDoc:
    """Parse circuit text; raises :class:`ParseError` on the first violation."""
    return _Parser(source_name).parse(text)


# ---------------------------------------------------------------------------
# Canonical rendering


def _render_element(el: Element) -> str:
    if isinstance(el, BeamSplitter):
        parts = [f"convention={el.convention}", f"couple={el.couple[0]},{el.couple[1]}"]
        if el.when:
            parts.append(f"when={el.when[0]}.{el.when[1]}")
        return f"bs {el.space} " + " ".join(parts)
    if isinstance(el, ModeSwitch):
        suffix = f" when={el.when[0]}.{el.when[1]}" if el.when else ""
        return f"switch1234 {el.space}{suffix}"
    if isinstance(el, WaveFilter):
        return (
            f"wavefilter {el.space} phi={el.phi!r} "
            f"reflect_to={el.reflect_to} transmit_to={el.transmit_to}"
        )
    if isinstance(el, PathMerge):
        map_part = ",".join(f"{la}.{lb}->{t}" for (la, lb), t in el.mapping)
        leak_part = ",".join(el.leak_to)
        return (
            f"merge {el.spaces[0]},{el.spaces[1]} "
            f"into={el.into} leak_to={leak_part} map={map_part}"
        )
    if isinstance(el, Detector):
        return f"detector {el.name} label={el.label} space={el.space}"
    raise TypeError(f"unknown element {el!r}")


def render_circuit(doc: CircuitDoc) -> str:
    """Canonical text: declarations then elements, sorted options, LF, no comments."""
    lines = [
        f"space {d.space.name} labels={','.join(d.space.basis_labels)}"
        for d in doc.declarations
    ]
    lines.extend(_render_element(e.element) for e in doc.element_lines)
    return "\n".join(lines) + ("\n" if lines else "")


def builtin_fig1_text() -> str:
    """Source text of the bundled verification-network circuit file."""
    return (
        resources.files("cheshire").joinpath("data/fig1.circuit").read_text("utf-8")
    )
