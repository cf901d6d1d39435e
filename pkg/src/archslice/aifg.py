"""Architecture information flow graph (AIFG).

Vertices are per-instance ports and roles. Arcs come in three classes:

* ``Com``  port -> role, for an attachment whose port can send,
* ``Con``  role -> port, for an attachment whose port can receive,
* ``Int``  element -> element inside one instance, from its type's
  internal flows.
"""

from __future__ import annotations

import enum
import json
from collections import defaultdict
from dataclasses import dataclass, field

from .flow import classify, internal_flows
from .model import ComponentType, Diagnostic, Specification


class AifgError(Exception):
    pass


class VertexKind(enum.Enum):
    PORT = "port"
    ROLE = "role"


class ArcKind(enum.Enum):
    COM = "Com"
    CON = "Con"
    INT = "Int"


@dataclass(frozen=True)
class Vertex:
    kind: VertexKind
    instance: str
    element: str

    @property
    def name(self) -> str:
        return f"{self.instance}.{self.element}"

    def sort_key(self):
        return (self.instance, self.element, self.kind.value)

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Arc:
    kind: ArcKind
    source: Vertex
    target: Vertex

    def sort_key(self):
        return (self.source.sort_key(), self.target.sort_key(), self.kind.value)

    def __str__(self) -> str:
        return f"{self.kind.value}({self.source} -> {self.target})"


@dataclass(frozen=True, eq=False)
class Aifg:
    vertices: tuple
    arcs: tuple
    diagnostics: tuple = field(default=(), repr=False)

    def __post_init__(self):
        verts = tuple(sorted(set(self.vertices), key=Vertex.sort_key))
        arcs = tuple(sorted(set(self.arcs), key=Arc.sort_key))
        known = set(verts)
        for arc in arcs:
            if arc.source not in known or arc.target not in known:
                raise AifgError(f"arc {arc} has an endpoint outside the graph")
        succ, pred = defaultdict(list), defaultdict(list)
        for arc in arcs:
            succ[arc.source].append(arc.target)
            pred[arc.target].append(arc.source)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "_succ", {v: tuple(succ[v]) for v in verts})
        object.__setattr__(self, "_pred", {v: tuple(pred[v]) for v in verts})

    def __eq__(self, other):
        if not isinstance(other, Aifg):
            return NotImplemented
        return self.vertices == other.vertices and self.arcs == other.arcs

    def __hash__(self):
        return hash((self.vertices, self.arcs))

    def successors(self, v: Vertex) -> tuple:
        return self._succ[v]

    def predecessors(self, v: Vertex) -> tuple:
        return self._pred[v]

    def vertex(self, instance: str, element: str):
        for v in self.vertices:
            if v.instance == instance and v.element == element:
                return v
        return None

    def arcs_of(self, kind: ArcKind) -> tuple:
        return tuple(a for a in self.arcs if a.kind is kind)


def build_aifg(spec: Specification) -> Aifg:
    """Build the AIFG of a specification that validates cleanly."""
    vertices = []
    arcs = []
    diags = []
    direction = {}  # (type name, element) -> DirectionClass

    def dclass(decl, element):
        key = (decl.name, element)
        if key not in direction:
            dc, fallback = classify(decl, element)
            if fallback:
                diags.append(Diagnostic(
                    f"{decl.name}.{element} never occurs in {decl.body_name}; "
                    f"direction taken from its own protocol",
                    f"{decl.name}.{element}", severity="warning"))
            direction[key] = dc
        return direction[key]

    flows = {}
    for inst in spec.configuration.instances:
        decl = spec.type_named(inst.type_name)
        kind = VertexKind.PORT if isinstance(decl, ComponentType) else VertexKind.ROLE
        for elem in decl.elements:
            vertices.append(Vertex(kind, inst.name, elem.name))
        if decl.name not in flows:
            flows[decl.name] = internal_flows(decl)
        for flow in flows[decl.name]:
            arcs.append(Arc(ArcKind.INT, Vertex(kind, inst.name, flow.source),
                            Vertex(kind, inst.name, flow.target)))

    for att in spec.configuration.attachments:
        port_type = spec.type_of(att.port.instance)
        role_type = spec.type_of(att.role.instance)
        pv = Vertex(VertexKind.PORT, att.port.instance, att.port.element)
        rv = Vertex(VertexKind.ROLE, att.role.instance, att.role.element)
        pdc = dclass(port_type, att.port.element)
        if pdc.silent:
            raise AifgError(f"attachment '{att}': port {pv} neither sends nor receives")
        rdc = dclass(role_type, att.role.element)
        if pdc.output_capable:
            arcs.append(Arc(ArcKind.COM, pv, rv))
            if not rdc.input_capable:
                diags.append(Diagnostic(f"attachment '{att}': {rv} never receives what "
                                        f"{pv} sends", str(att), att.span, "warning"))
        if pdc.input_capable:
            arcs.append(Arc(ArcKind.CON, rv, pv))
            if not rdc.output_capable:
                diags.append(Diagnostic(f"attachment '{att}': {rv} never sends what "
                                        f"{pv} receives", str(att), att.span, "warning"))
    return Aifg(tuple(vertices), tuple(arcs), tuple(diags))


# -- export -----------------------------------------------------------------

_DOT_STYLE = {ArcKind.COM: "solid", ArcKind.CON: "dashed", ArcKind.INT: "dotted"}


def _q(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: Aifg, name: str = "AIFG") -> str:
    """Graphviz rendering: one cluster per instance; Com solid, Con dashed, Int dotted."""
    lines = [f"digraph {_q(name)} {{", "  rankdir=LR;"]
    by_instance = defaultdict(list)
    for v in g.vertices:
        by_instance[v.instance].append(v)
    for i, instance in enumerate(sorted(by_instance)):
        lines.append(f"  subgraph cluster_{i} {{")
        lines.append(f"    label={_q(instance)};")
        for v in by_instance[instance]:
            shape = "box" if v.kind is VertexKind.PORT else "circle"
            lines.append(f"    {_q(v.name)} [shape={shape}, label={_q(v.element)}];")
        lines.append("  }")
    for arc in g.arcs:
        lines.append(f"  {_q(arc.source.name)} -> {_q(arc.target.name)} "
                     f"[style={_DOT_STYLE[arc.kind]}, label={_q(arc.kind.value)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _vertex_record(v: Vertex) -> dict:
    return {"kind": v.kind.value, "instance": v.instance, "element": v.element}


def to_json(g: Aifg) -> str:
    doc = {
        "vertices": [_vertex_record(v) for v in g.vertices],
        "arcs": [{"kind": a.kind.value, "from": _vertex_record(a.source),
                  "to": _vertex_record(a.target)} for a in g.arcs],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def from_json(text: str) -> Aifg:
    doc = json.loads(text)

    def vertex(rec):
        return Vertex(VertexKind(rec["kind"]), rec["instance"], rec["element"])

    return Aifg(tuple(vertex(r) for r in doc["vertices"]),
                tuple(Arc(ArcKind(a["kind"]), vertex(a["from"]), vertex(a["to"]))
                      for a in doc["arcs"]))
