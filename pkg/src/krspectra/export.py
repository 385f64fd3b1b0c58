"""DOT and JSON exports for crystals and operator families."""

from __future__ import annotations

import json


EDGE_COLORS = [
    "red", "blue", "darkgreen", "orange", "purple", "brown", "teal", "magenta",
]


def _label(element):
    return repr(element)


def crystal_to_dot(crys, affine=False) -> str:
    """DOT digraph; edges labeled by operator index, affine edges colored."""
    indices = list(range(crys.n)) if affine else list(crys.indices)
    lines = ["digraph crystal {", '  rankdir="TB";']
    ids = {b: i for i, b in enumerate(crys.elements)}
    for b, i in ids.items():
        lines.append(f'  n{i} [label="{_label(b)}"];')
    for j in indices:
        fmap = crys.f_maps.get(j, {})
        color = EDGE_COLORS[j % len(EDGE_COLORS)]
        for src, dst in fmap.items():
            lines.append(
                f'  n{ids[src]} -> n{ids[dst]} [label="{j}", color="{color}"];'
            )
    lines.append("}")
    return "\n".join(lines)


def crystal_to_json(crys, affine=False) -> dict:
    indices = list(range(crys.n)) if affine else list(crys.indices)
    ids = {b: i for i, b in enumerate(crys.elements)}
    return {
        "n": crys.n,
        "size": len(crys.elements),
        "affine": affine,
        "elements": [
            {"id": i, "label": _label(b), "weight": list(crys.wt[b])}
            for b, i in ids.items()
        ],
        "edges": [
            {"op": j, "from": ids[src], "to": ids[dst]}
            for j in indices
            for src, dst in crys.f_maps.get(j, {}).items()
        ],
    }


def orbit_table(graph_elements, mapping) -> list:
    """Cycle decomposition of a permutation map, as lists of labels."""
    seen = set()
    orbits = []
    for b in graph_elements:
        if b in seen:
            continue
        orbit = [b]
        seen.add(b)
        cur = mapping[b]
        while cur != b:
            orbit.append(cur)
            seen.add(cur)
            cur = mapping[cur]
        orbits.append([_label(x) for x in orbit])
    return orbits


def write_json(path, payload):
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=1, default=str)
        fh.write("\n")


def write_text(path, text):
    with open(path, "w") as fh:
        fh.write(text)
        if not text.endswith("\n"):
            fh.write("\n")
