"""Matplotlib rendering of automaton digraphs and report figures.

The report path writes PNG figures next to its delimited output: digraph
drawings for the small machines (larger ones are unreadable as pictures and
are better served by the DOT export) and a bar chart comparing minimized
state counts against the reference counts.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import networkx as nx

from .dfao import Dfao

__all__ = ["draw_automaton", "draw_state_counts", "MAX_DRAW_STATES"]

MAX_DRAW_STATES = 40

_EDGE_COLORS = {0: "#888888", 1: "#1f77b4", 2: "#2ca02c", 3: "#d62728"}


def draw_automaton(a: Dfao, path: str, title: str = "", omit_self_loops: bool = True) -> bool:
    """Render the digraph to a PNG; returns False when the machine is too big."""
    if a.n_states > MAX_DRAW_STATES:
        return False
    g = nx.MultiDiGraph()
    for v in range(a.n_states):
        g.add_node(v)
    edge_sets: dict[tuple[int, int], list[int]] = {}
    for v in range(a.n_states):
        for d in range(a.ctx.q):
            w = int(a.next[v, d])
            if omit_self_loops and w == v:
                continue
            edge_sets.setdefault((v, w), []).append(d)
    pos = nx.kamada_kawai_layout(g) if a.n_states > 2 else nx.circular_layout(g)

    fig, ax = plt.subplots(figsize=(7, 7))
    nx.draw_networkx_nodes(
        g, pos, ax=ax, node_size=900,
        node_color=["#ffe8a0" if v == a.start else "#dce9f5" for v in g.nodes],
        edgecolors="#333333",
    )
    labels = {v: f"{v + 1}\n{a.ctx.to_token(int(a.out[v]))}" for v in g.nodes}
    nx.draw_networkx_labels(g, pos, labels=labels, ax=ax, font_size=8)
    for (v, w), digits in edge_sets.items():
        for k, d in enumerate(digits):
            rad = 0.12 + 0.1 * k
            nx.draw_networkx_edges(
                g, pos, edgelist=[(v, w)], ax=ax,
                connectionstyle=f"arc3,rad={rad}",
                edge_color=_EDGE_COLORS.get(d, "#000000"),
                arrows=True, arrowsize=12, width=1.1,
            )
    handles = [
        plt.Line2D([0], [0], color=_EDGE_COLORS[d], lw=2, label=f"digit {d}")
        for d in range(a.ctx.q)
    ]
    ax.legend(handles=handles, loc="lower left", fontsize=8)
    ax.set_title(title or f"{a.n_states}-state automaton")
    ax.set_axis_off()
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return True


def draw_state_counts(rows: list[dict], path: str) -> None:
    """Bar chart of minimized vs reference state counts.

    rows: dicts with keys name, minimized, reported.
    """
    names = [r["name"] for r in rows]
    ours = [r["minimized"] for r in rows]
    ref = [r["reported"] for r in rows]
    x = range(len(rows))
    fig, ax = plt.subplots(figsize=(max(6, 0.6 * len(rows)), 4.5))
    ax.bar([i - 0.2 for i in x], ours, width=0.4, label="minimized", color="#1f77b4")
    ax.bar([i + 0.2 for i in x], ref, width=0.4, label="reference", color="#ff7f0e")
    ax.set_xticks(list(x))
    ax.set_xticklabels(names, rotation=60, ha="right", fontsize=7)
    ax.set_yscale("log")
    ax.set_ylabel("states")
    ax.legend()
    ax.set_title("minimized state counts vs reference")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
