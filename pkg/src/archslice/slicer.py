"""Architectural slicing in two phases.

First a slice over the AIFG (reverse or forward reachability from the
criterion vertices), then a reduced specification built from it:

1. ports/roles whose vertices are all outside the graph slice are removed
   from their type, together with every Computation/Glue event on them;
2. types left without ports/roles disappear;
3. instances with no vertex in the slice and attachments whose two ends
   are not both in the slice are dropped.

Declaration order is preserved throughout.
"""

from __future__ import annotations

import enum
import json
from collections import deque
from dataclasses import dataclass, field, replace

from .aifg import Aifg, build_aifg
from .model import (
    Choice,
    ComponentType,
    Configuration,
    Prefix,
    Specification,
    STOP,
    count_events,
    iter_events,
)


class CriterionError(Exception):
    pass


class SliceDirection(enum.Enum):
    BACKWARD = "backward"
    FORWARD = "forward"


@dataclass(frozen=True)
class SlicingCriterion:
    instance: str
    elements: frozenset

    def __post_init__(self):
        object.__setattr__(self, "elements", frozenset(self.elements))
        if not self.elements:
            raise CriterionError(f"empty element set for instance {self.instance}")


@dataclass(frozen=True)
class GraphSlice:
    direction: SliceDirection
    criterion_vertices: frozenset
    vertices: frozenset


@dataclass(frozen=True)
class ReducedSpecification:
    spec: Specification
    removed_ports: frozenset = frozenset()
    removed_roles: frozenset = frozenset()
    removed_types: frozenset = frozenset()
    removed_instances: frozenset = frozenset()
    removed_attachments: frozenset = frozenset()
    # type name -> tuple of (pre-order event index, event text)
    removed_events: dict = field(default_factory=dict)
    graph_slice: GraphSlice = field(default=None, compare=False, repr=False)

    @property
    def unchanged(self) -> bool:
        return not (self.removed_ports or self.removed_roles or self.removed_types
                    or self.removed_instances or self.removed_attachments
                    or self.removed_events)

    def removals(self) -> dict:
        return {
            "removed_ports": sorted(self.removed_ports),
            "removed_roles": sorted(self.removed_roles),
            "removed_types": sorted(self.removed_types),
            "removed_instances": sorted(self.removed_instances),
            "removed_attachments": sorted(self.removed_attachments),
            "removed_events": {t: [list(e) for e in evs]
                               for t, evs in sorted(self.removed_events.items())},
        }

    def to_json(self) -> str:
        from .parser import render

        doc = self.removals()
        doc["spec"] = render(self.spec)
        if self.graph_slice is not None:
            doc["direction"] = self.graph_slice.direction.value
            doc["slice_vertices"] = sorted(v.name for v in self.graph_slice.vertices)
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def resolve_criterion(spec: Specification, g: Aifg, c: SlicingCriterion) -> frozenset:
    if spec.instance_named(c.instance) is None:
        raise CriterionError(f"unknown instance {c.instance}")
    out = set()
    for element in sorted(c.elements):
        v = g.vertex(c.instance, element)
        if v is None:
            raise CriterionError(f"unknown element {element} of instance {c.instance}")
        out.add(v)
    return frozenset(out)


def _reach(start, step) -> frozenset:
    seen = set(start)
    queue = deque(seen)
    while queue:
        for w in step(queue.popleft()):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return frozenset(seen)


def backward_slice_graph(g: Aifg, vc) -> frozenset:
    """Every vertex with a (possibly empty) path into ``vc``."""
    return _reach(vc, g.predecessors)


def forward_slice_graph(g: Aifg, vc) -> frozenset:
    """Every vertex reachable from ``vc``."""
    return _reach(vc, g.successors)


def _strip(proc, removed: set):
    """Drop events qualified by a name in ``removed``.

    Subtrees without removed events come back untouched; a choice branch
    that loses all of its events is dropped, and a choice left with one
    branch collapses into it.
    """
    if isinstance(proc, Prefix):
        rest = _strip(proc.rest, removed)
        if proc.event.qualifier in removed:
            return rest
        return proc if rest is proc.rest else Prefix(proc.event, rest)
    if isinstance(proc, Choice):
        stripped = [_strip(b, removed) for b in proc.branches]
        if all(s is b for s, b in zip(stripped, proc.branches)):
            return proc
        kept = [s for s, b in zip(stripped, proc.branches)
                if s is b or count_events(s) > 0]
        if not kept:
            return stripped[0]
        return kept[0] if len(kept) == 1 else Choice(tuple(kept))
    return proc


def _removed_events(proc, removed: set) -> tuple:
    return tuple((i, str(ev)) for i, ev in enumerate(iter_events(proc))
                 if ev.qualifier in removed)


def reduce_body(proc, removed: set):
    out = _strip(proc, removed)
    if out is not proc and count_events(out) == 0 and count_events(proc) > 0:
        return STOP
    return out


def reduce_specification(spec: Specification, g: Aifg, sg) -> ReducedSpecification:
    sg = frozenset(sg)
    live = {(v.instance, v.element) for v in sg}
    keep_elem = set()  # (type name, element)
    keep_inst = []
    removed_instances = set()
    for inst in spec.configuration.instances:
        decl = spec.type_named(inst.type_name)
        names = [e.name for e in decl.elements if (inst.name, e.name) in live]
        keep_elem.update((decl.name, n) for n in names)
        if names:
            keep_inst.append(inst)
        else:
            removed_instances.add(inst.name)

    removed_ports, removed_roles, removed_types = set(), set(), set()
    removed_events = {}
    components, connectors = [], []
    for decl in spec.components + spec.connectors:
        kept = tuple(e for e in decl.elements if (decl.name, e.name) in keep_elem)
        dropped = {e.name for e in decl.elements} - {e.name for e in kept}
        bucket = removed_ports if isinstance(decl, ComponentType) else removed_roles
        bucket.update(f"{decl.name}.{n}" for n in dropped)
        if not kept:
            removed_types.add(decl.name)
            continue
        if dropped:
            events = _removed_events(decl.body, dropped)
            if events:
                removed_events[decl.name] = events
            body = reduce_body(decl.body, dropped)
            if isinstance(decl, ComponentType):
                decl = replace(decl, ports=kept, computation=body)
            else:
                decl = replace(decl, roles=kept, glue=body)
        (components if isinstance(decl, ComponentType) else connectors).append(decl)

    keep_att, removed_attachments = [], set()
    for att in spec.configuration.attachments:
        ends = ((att.port.instance, att.port.element), (att.role.instance, att.role.element))
        if all(e in live for e in ends):
            keep_att.append(att)
        else:
            removed_attachments.add(str(att))

    reduced = Specification(spec.name, tuple(components), tuple(connectors),
                            Configuration(tuple(keep_inst), tuple(keep_att)))
    return ReducedSpecification(
        reduced,
        frozenset(removed_ports), frozenset(removed_roles), frozenset(removed_types),
        frozenset(removed_instances), frozenset(removed_attachments), removed_events,
    )


def slice_graph(spec: Specification, c: SlicingCriterion,
                direction: SliceDirection, g: Aifg = None) -> GraphSlice:
    g = build_aifg(spec) if g is None else g
    vc = resolve_criterion(spec, g, c)
    reach = backward_slice_graph if direction is SliceDirection.BACKWARD else forward_slice_graph
    return GraphSlice(direction, vc, reach(g, vc))


def slice_spec(spec: Specification, c: SlicingCriterion,
               direction: SliceDirection = SliceDirection.BACKWARD) -> ReducedSpecification:
    """Backward or forward architectural slice of ``spec`` on criterion ``c``."""
    g = build_aifg(spec)
    gs = slice_graph(spec, c, direction, g)
    return replace(reduce_specification(spec, g, gs.vertices), graph_slice=gs)
