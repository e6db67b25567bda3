"""Graphviz export of the specialization order and the closed-set lattice."""
from __future__ import annotations

from .topology import Spectrum, closure


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def specialization_dot(sp: Spectrum) -> str:
    """One node per point; edge Q -> Q' when Q' lies in the closure of Q (Q' != Q)."""
    lines = [f"digraph specialization {{", f"  label={_quote(f'{sp.kind.value}({sp.ring.label})')};"]
    for k, Q in enumerate(sp.points):
        lines.append(f"  p{k} [label={_quote(Q.label())}];")
    for k, Q in enumerate(sp.points):
        for j in sorted(closure(sp, Q).points):
            if j != k:
                lines.append(f"  p{k} -> p{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def closed_lattice_dot(sp: Spectrum) -> str:
    """Hasse diagram of the closed sets; each node lists its points."""
    topo = sp.topology
    lines = [f"digraph closed_sets {{", f"  label={_quote(f'closed sets of {sp.kind.value}({sp.ring.label})')};"]
    for i, C in enumerate(topo.closed):
        text = "\n".join(Q.label() for Q in C.point_ideals()) or "∅"
        lines.append(f"  c{i} [shape=box, label={_quote(text)}];")
    for i, j in topo.containment():
        lines.append(f"  c{i} -> c{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
