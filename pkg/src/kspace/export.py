"""DOT and JSON renderings of ideal lattices and spectral spaces."""

from __future__ import annotations

import json

from .config import Caps
from .ideals import Ideal, enumerate_ideals
from .rings import FiniteRing
from .spectra import SpectrumTopology, build_kspace, build_zariski

__all__ = ["EXPORTS", "covers", "idl_lattice", "space_export", "export", "dumps"]

EXPORTS = ("idl-lattice", "spi-topology", "spec-topology", "specialization")


def dumps(data) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def covers(ideals: list[Ideal]) -> list[tuple[int, int]]:
    """Index pairs ``(i, j)`` with ``ideals[i]`` covered by ``ideals[j]``."""
    out = []
    for i, a in enumerate(ideals):
        above = [j for j, b in enumerate(ideals) if a < b]
        for j in above:
            if not any(ideals[k] < ideals[j] for k in above if k != j):
                out.append((i, j))
    return out


def _dot(name: str, labels: list[str], edges: list[tuple[int, int]], note: str) -> str:
    lines = [f'digraph "{name}" {{', "  rankdir=BT;", "  node [shape=box];",
             f'  label="{note}";']
    for i, lab in enumerate(labels):
        lines.append(f'  n{i} [label="{lab}"];')
    for i, j in edges:
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def idl_lattice(ring: FiniteRing, fmt: str = "dot", caps: Caps | None = None) -> str:
    """Hasse diagram of all ideals ordered by inclusion (edges point upward)."""
    ideals = list(enumerate_ideals(ring, caps))
    labels = [str(a) if a.is_proper else ring.label for a in ideals]
    edges = covers(ideals)
    if fmt == "dot":
        return _dot(f"Idl {ring.label}", labels, edges, f"ideal lattice of {ring.label}")
    if fmt == "json":
        return dumps({"ring": ring.label, "ideals": labels,
                      "members": [list(a.elements) for a in ideals],
                      "covers": [list(e) for e in edges]})
    lines = [f"ideal lattice of {ring.label}"]
    for i, j in edges:
        lines.append(f"  {labels[i]} < {labels[j]}")
    return "\n".join(lines) + "\n"


def _specialization_covers(top: SpectrumTopology) -> list[tuple[int, int]]:
    pairs = set(top.space.specialization_pairs())
    return sorted((x, y) for x, y in pairs
                  if not any((x, z) in pairs and (z, y) in pairs for z in range(len(top.points))))


def space_export(top: SpectrumTopology, fmt: str = "json", what: str = "topology") -> str:
    """A spectral space as JSON (points, subbase, closed sets, report) or as the
    DOT graph of its specialization order (``x -> y`` when ``y`` is in ``Cl{x}``)."""
    labels = [str(p) for p in top.points]
    name = f"{top.flavor} {top.ring.label}"
    if fmt == "dot":
        return _dot(name, labels, _specialization_covers(top),
                    f"specialization order on {name}")
    pairs = top.space.specialization_pairs()
    if fmt == "json":
        if what == "specialization":
            return dumps({"ring": top.ring.label, "flavor": top.flavor, "points": labels,
                          "pairs": [list(p) for p in pairs]})
        return dumps(top.to_json())
    lines = [name]
    if what == "specialization":
        lines += [f"  {labels[x]} ~> {labels[y]}" for x, y in pairs]
    else:
        lines.append("  points: " + ", ".join(labels))
        for m in top.space.closed_masks:
            lines.append("  closed: {" + ", ".join(top.fmt(m)) + "}")
    return "\n".join(lines) + "\n"


def export(ring: FiniteRing, what: str, fmt: str, caps: Caps | None = None) -> str:
    if what == "idl-lattice":
        return idl_lattice(ring, fmt, caps)
    if what == "spi-topology":
        return space_export(build_kspace(ring, "Spi", caps), fmt)
    if what == "spec-topology":
        return space_export(build_zariski(ring, caps), fmt)
    if what == "specialization":
        return space_export(build_kspace(ring, "Spi", caps), fmt, "specialization")
    raise ValueError(f"unknown export {what!r}; expected one of {EXPORTS}")
