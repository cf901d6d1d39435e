"""In-memory model of a WRIGHT-style architectural specification.

A specification is the triple (components, connectors, configuration).
Component and connector types carry CSP-flavoured behaviour: port/role
protocols plus a Computation (components) or Glue (connectors) process
that relates events across the type's ports or roles.

Every value here is a frozen dataclass built from tuples, so a parsed
specification can be shared freely. Source spans are carried along for
diagnostics but never take part in equality.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

COMPUTATION = "Computation"
GLUE = "Glue"


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    length: int = 1

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


class Direction(enum.Enum):
    INITIATED = "initiated"
    OBSERVED = "observed"


@dataclass(frozen=True)
class Event:
    """A single CSP event, optionally qualified by a port or role name.

    Initiated events are written with ``!`` (``pay!x`` or bare ``take!``),
    observed ones with ``?`` (``pay?x``) or as a bare name (``take``).
    """

    name: str
    direction: Direction = Direction.OBSERVED
    data: Optional[str] = None
    qualifier: Optional[str] = None

    def __post_init__(self):
        if not self.name:
            raise ValueError("event name must be nonempty")

    @property
    def initiated(self) -> bool:
        return self.direction is Direction.INITIATED

    def __str__(self) -> str:
        text = self.name if self.qualifier is None else f"{self.qualifier}.{self.name}"
        if self.direction is Direction.INITIATED:
            return f"{text}!{self.data or ''}"
        if self.data is not None:
            return f"{text}?{self.data}"
        return text


@dataclass(frozen=True)
class Prefix:
    event: Event
    rest: "ProcessExpr"


@dataclass(frozen=True)
class Choice:
    branches: tuple

    def __post_init__(self):
        if len(self.branches) < 2:
            raise ValueError("a choice needs at least two branches")


@dataclass(frozen=True)
class Ref:
    name: str


@dataclass(frozen=True)
class Stop:
    pass


ProcessExpr = Union[Prefix, Choice, Ref, Stop]

STOP = Stop()


def sequence(events, tail: ProcessExpr = STOP) -> ProcessExpr:
    """Chain ``events`` with ``->`` in front of ``tail``."""
    proc = tail
    for ev in reversed(list(events)):
        proc = Prefix(ev, proc)
    return proc


def iter_events(proc: ProcessExpr) -> Iterator[Event]:
    """Yield events in pre-order (left branch first)."""
    stack = [proc]
    while stack:
        node = stack.pop()
        if isinstance(node, Prefix):
            yield node.event
            stack.append(node.rest)
        elif isinstance(node, Choice):
            stack.extend(reversed(node.branches))


def iter_refs(proc: ProcessExpr) -> Iterator[Ref]:
    stack = [proc]
    while stack:
        node = stack.pop()
        if isinstance(node, Prefix):
            stack.append(node.rest)
        elif isinstance(node, Choice):
            stack.extend(reversed(node.branches))
        elif isinstance(node, Ref):
            yield node


def count_events(proc: ProcessExpr) -> int:
    return sum(1 for _ in iter_events(proc))


@dataclass(frozen=True)
class Interface:
    """A port of a component or a role of a connector."""

    name: str
    behavior: ProcessExpr
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class ComponentType:
    name: str
    ports: tuple
    computation: ProcessExpr
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)

    kind = "component"
    body_name = COMPUTATION

    @property
    def elements(self) -> tuple:
        return self.ports

    @property
    def body(self) -> ProcessExpr:
        return self.computation

    def element(self, name: str) -> Optional[Interface]:
        for port in self.ports:
            if port.name == name:
                return port
        return None


@dataclass(frozen=True)
class ConnectorType:
    name: str
    roles: tuple
    glue: ProcessExpr
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)

    kind = "connector"
    body_name = GLUE

    @property
    def elements(self) -> tuple:
        return self.roles

    @property
    def body(self) -> ProcessExpr:
        return self.glue

    def element(self, name: str) -> Optional[Interface]:
        for role in self.roles:
            if role.name == name:
                return role
        return None


TypeDecl = Union[ComponentType, ConnectorType]


@dataclass(frozen=True)
class Instance:
    name: str
    type_name: str
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)

    def __str__(self) -> str:
        return f"{self.name}: {self.type_name}"


@dataclass(frozen=True)
class Endpoint:
    instance: str
    element: str

    def __str__(self) -> str:
        return f"{self.instance}.{self.element}"


@dataclass(frozen=True)
class Attachment:
    port: Endpoint
    role: Endpoint
    span: Optional[SourceSpan] = field(default=None, compare=False, repr=False)

    def __str__(self) -> str:
        return f"{self.port} as {self.role}"


@dataclass(frozen=True)
class Configuration:
    instances: tuple = ()
    attachments: tuple = ()


@dataclass(frozen=True)
class Specification:
    name: str
    components: tuple = ()
    connectors: tuple = ()
    configuration: Configuration = Configuration()

    def type_named(self, name: str) -> Optional[TypeDecl]:
        for decl in self.components + self.connectors:
            if decl.name == name:
                return decl
        return None

    def instance_named(self, name: str) -> Optional[Instance]:
        for inst in self.configuration.instances:
            if inst.name == name:
                return inst
        return None

    def type_of(self, instance: str) -> Optional[TypeDecl]:
        inst = self.instance_named(instance)
        return None if inst is None else self.type_named(inst.type_name)


@dataclass(frozen=True)
class Diagnostic:
    message: str
    location: str = ""
    span: Optional[SourceSpan] = None
    severity: str = "error"

    def format(self, path: str = "") -> str:
        where = ":".join(p for p in (path, str(self.span) if self.span else "") if p)
        return f"{where}: {self.message}" if where else self.message


def _check_body(decl: TypeDecl, diags: list) -> None:
    what = "port" if isinstance(decl, ComponentType) else "role"
    declared = {e.name for e in decl.elements}
    where = f"{decl.name}.{decl.body_name}"
    for ev in iter_events(decl.body):
        if ev.qualifier is None:
            diags.append(Diagnostic(
                f"unqualified event '{ev}' in {decl.body_name} of {decl.name}",
                where, decl.span))
        elif ev.qualifier not in declared:
            diags.append(Diagnostic(
                f"event '{ev}' names undeclared {what} '{ev.qualifier}' of {decl.name}",
                where, decl.span))
    for ref in iter_refs(decl.body):
        if ref.name != decl.body_name:
            diags.append(Diagnostic(
                f"recursion to '{ref.name}' inside {decl.body_name} of {decl.name}",
                where, decl.span))


def _check_elements(decl: TypeDecl, diags: list) -> None:
    what = "port" if isinstance(decl, ComponentType) else "role"
    if not decl.elements:
        diags.append(Diagnostic(f"{decl.kind} {decl.name} declares no {what}s",
                                decl.name, decl.span))
    seen = set()
    for elem in decl.elements:
        where = f"{decl.name}.{elem.name}"
        if elem.name in seen:
            diags.append(Diagnostic(f"duplicate {what} '{elem.name}' in {decl.name}",
                                    where, elem.span))
        seen.add(elem.name)
        for ev in iter_events(elem.behavior):
            if ev.qualifier is not None:
                diags.append(Diagnostic(
                    f"qualified event '{ev}' in {what} {elem.name} of {decl.name}",
                    where, elem.span))
        for ref in iter_refs(elem.behavior):
            if ref.name != elem.name:
                diags.append(Diagnostic(
                    f"recursion to '{ref.name}' inside {what} {elem.name} of {decl.name}",
                    where, elem.span))


def _check_endpoint(spec, att, endpoint, kind, diags) -> None:
    inst = spec.instance_named(endpoint.instance)
    if inst is None:
        diags.append(Diagnostic(f"attachment '{att}' references undeclared instance "
                                f"'{endpoint.instance}'", str(att), att.span))
        return
    decl = spec.type_named(inst.type_name)
    if decl is None:
        return  # reported on the instance itself
    want = ComponentType if kind == "port" else ConnectorType
    if not isinstance(decl, want):
        diags.append(Diagnostic(f"attachment '{att}': '{endpoint.instance}' is not a "
                                f"{want.kind} instance", str(att), att.span))
    elif decl.element(endpoint.element) is None:
        diags.append(Diagnostic(f"attachment '{att}': {decl.name} has no {kind} "
                                f"'{endpoint.element}'", str(att), att.span))


def validate(spec: Specification) -> list:
    """Check the structural invariants of ``spec``; one Diagnostic per violation."""
    diags: list = []
    seen_types = set()
    for decl in spec.components + spec.connectors:
        if decl.name in seen_types:
            diags.append(Diagnostic(f"duplicate type name '{decl.name}'", decl.name, decl.span))
        seen_types.add(decl.name)
        _check_elements(decl, diags)
        _check_body(decl, diags)

    seen_instances = set()
    for inst in spec.configuration.instances:
        if inst.name in seen_instances:
            diags.append(Diagnostic(f"duplicate instance '{inst.name}'", inst.name, inst.span))
        seen_instances.add(inst.name)
        if inst.type_name not in seen_types:
            diags.append(Diagnostic(f"instance '{inst.name}' has undeclared type "
                                    f"'{inst.type_name}'", inst.name, inst.span))

    for att in spec.configuration.attachments:
        _check_endpoint(spec, att, att.port, "port", diags)
        _check_endpoint(spec, att, att.role, "role", diags)
    return diags
