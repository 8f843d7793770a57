"""DOT emission for Mapper graphs, for external renderers."""

from __future__ import annotations

import json
from pathlib import Path

from ..tda.mapper import MapperGraph
from .svg import fmt, ramp_color


def mapper_to_dot(graph: MapperGraph) -> str:
    """One node statement per cluster (sized by membership, colored by mean
    probability when decorated) and one edge statement per overlap."""
    lines = ["graph mapper {", "  node [style=filled];"]
    for node in graph.nodes:
        attrs = [f'label="{node.node_id} ({node.size})"']
        if node.radius is not None:
            attrs.append(f"width={fmt(0.3 * node.radius)}")
        if node.color is not None:
            attrs.append(f'fillcolor="{ramp_color(node.color)}"')
        lines.append(f'  "{node.node_id}" [{", ".join(attrs)}];')
    for a, b, shared in graph.edges:
        lines.append(f'  "{a}" -- "{b}" [weight={shared}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def mapper_to_json(graph: MapperGraph) -> str:
    payload = {
        "nodes": [
            {
                "id": n.node_id,
                "members": list(n.members),
                "size": n.size,
                "mean_gbv": n.mean_gbv,
                "color": n.color,
                "radius": n.radius,
            }
            for n in graph.nodes
        ],
        "edges": [{"source": a, "target": b, "shared": s} for a, b, s in graph.edges],
    }
    return json.dumps(payload, indent=1)


def write_mapper_files(graph: MapperGraph, json_path: str | Path, dot_path: str | Path) -> None:
    Path(json_path).write_text(mapper_to_json(graph) + "\n", "utf-8")
    Path(dot_path).write_text(mapper_to_dot(graph), "utf-8")
