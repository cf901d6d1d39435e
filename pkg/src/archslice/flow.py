"""Direction inference and internal information flows.

Data enters a component or connector at observed events and leaves at
initiated ones. Walking one unfolding of a Computation/Glue process gives
a set of event paths; within a path, every observed event on element
``a`` followed later by an initiated event on element ``b`` (``a != b``)
is an internal flow ``a -> b``. Flows never wrap around the recursion
back to the top of the process.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from typing import Union

from .model import (
    Choice,
    ComponentType,
    ConnectorType,
    Prefix,
    ProcessExpr,
    Ref,
    Stop,
    iter_events,
)

log = logging.getLogger(__name__)


class FlowError(Exception):
    pass


class Terminator(enum.Enum):
    RECURSE = "recurse"
    STOP = "stop"


@dataclass(frozen=True)
class DirectionClass:
    input_capable: bool
    output_capable: bool

    @property
    def silent(self) -> bool:
        return not (self.input_capable or self.output_capable)


@dataclass(frozen=True)
class EventPath:
    events: tuple
    terminator: Terminator


@dataclass(frozen=True, order=True)
class InternalFlow:
    source: str
    target: str


def enumerate_paths(proc: ProcessExpr) -> list:
    """One EventPath per leaf of the choice tree, in left-to-right order."""
    out = []
    # (node, events so far); explicit stack keeps deep sequences off the C stack
    stack = [(proc, ())]
    while stack:
        node, prefix = stack.pop()
        if isinstance(node, Prefix):
            if node.event.qualifier is None:
                raise FlowError(f"unqualified event '{node.event}'")
            stack.append((node.rest, prefix + (node.event,)))
        elif isinstance(node, Choice):
            stack.extend((b, prefix) for b in reversed(node.branches))
        elif isinstance(node, Ref):
            out.append(EventPath(prefix, Terminator.RECURSE))
        elif isinstance(node, Stop):
            out.append(EventPath(prefix, Terminator.STOP))
        else:
            raise TypeError(f"not a process expression: {node!r}")
    return out


def _flags(events) -> DirectionClass:
    inp = out = False
    for ev in events:
        if ev.initiated:
            out = True
        else:
            inp = True
    return DirectionClass(inp, out)


def classify(owner: Union[ComponentType, ConnectorType], element: str):
    """Return ``(DirectionClass, used_fallback)`` for a port or role."""
    elem = owner.element(element)
    if elem is None:
        what = "port" if isinstance(owner, ComponentType) else "role"
        raise FlowError(f"{owner.name} has no {what} '{element}'")
    qualified = [ev for ev in iter_events(owner.body) if ev.qualifier == element]
    if qualified:
        return _flags(qualified), False
    return _flags(iter_events(elem.behavior)), True


def classify_element(owner: Union[ComponentType, ConnectorType], element: str) -> DirectionClass:
    dc, fallback = classify(owner, element)
    if fallback:
        log.warning("%s.%s does not occur in %s; direction taken from its own protocol",
                    owner.name, element, owner.body_name)
    return dc


def internal_flows(owner: Union[ComponentType, ConnectorType]) -> frozenset:
    flows = set()
    for path in enumerate_paths(owner.body):
        observed = set()
        for ev in path.events:
            if ev.initiated:
                flows.update(InternalFlow(src, ev.qualifier)
                             for src in observed if src != ev.qualifier)
            else:
                observed.add(ev.qualifier)
    return frozenset(flows)
