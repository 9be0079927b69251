"""Figure rendering for compiled scenarios.

Two figures per scenario: the state graph (module atoms with one edge
color per agent's accessibility) and the action graph (quantale atoms with
appearance edges).  Rendered to PNG files next to the other scenario
outputs; meant for eyeballing a compiled system, not for publication.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import networkx as nx

from .algebra import EpistemicSystem
from .lattice import PowersetLattice

_PALETTE = ["tab:blue", "tab:red", "tab:green", "tab:orange", "tab:purple", "tab:brown"]


def _appearance_graph(sys: EpistemicSystem, kind: str) -> nx.MultiDiGraph:
    lat = sys.mlat if kind == "m" else sys.qlat
    maps = sys.app_m if kind == "m" else sys.app_q
    assert isinstance(lat, PowersetLattice)
    g = nx.MultiDiGraph()
    for i in range(lat.num_atoms):
        g.add_node(i, label=lat.atom_labels[i])
    for ai, agent in enumerate(sys.agents):
        images = maps[agent].atom_images
        for i in range(lat.num_atoms):
            for j in lat.atom_bits(images[i]):
                g.add_edge(i, j, agent=agent, color=_PALETTE[ai % len(_PALETTE)])
    return g


def render_graph(sys: EpistemicSystem, kind: str, path: str, title: str):
    g = _appearance_graph(sys, kind)
    n = g.number_of_nodes()
    size = max(5.0, min(14.0, 1.1 * n**0.75))
    fig, ax = plt.subplots(figsize=(size, size))
    pos = nx.spring_layout(g, seed=7)
    nx.draw_networkx_nodes(g, pos, ax=ax, node_size=320, node_color="#f0f0f0",
                           edgecolors="#555555")
    labels = {i: g.nodes[i]["label"] for i in g.nodes}
    nx.draw_networkx_labels(g, pos, labels, ax=ax, font_size=7)
    for ai, agent in enumerate(sys.agents):
        edges = [(u, v) for u, v, d in g.edges(data=True) if d["agent"] == agent]
        nx.draw_networkx_edges(
            g, pos, edgelist=edges, ax=ax,
            edge_color=_PALETTE[ai % len(_PALETTE)],
            connectionstyle=f"arc3,rad={0.08 + 0.05 * ai}",
            arrowsize=9, width=0.9, alpha=0.75,
        )
    handles = [
        plt.Line2D([0], [0], color=_PALETTE[i % len(_PALETTE)], label=a)
        for i, a in enumerate(sys.agents)
    ]
    ax.legend(handles=handles, fontsize=8, loc="upper right")
    ax.set_title(title)
    ax.set_axis_off()
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def render_scenario_figures(sys: EpistemicSystem, out_dir: str, name: str) -> list[str]:
    import os

    paths = []
    for kind, what in (("m", "states"), ("q", "actions")):
        path = os.path.join(out_dir, f"{what}.png")
        render_graph(sys, kind, path, f"{name}: {what} with appearance edges")
        paths.append(path)
    return paths
