#!/usr/bin/env python3
"""Regenerate the graph6 catalogs under data/catalog.

connected_le7.g6   every connected simple graph on 2..7 vertices (graph atlas)
cubic_le10.g6      every connected cubic simple graph on 4..10 vertices
"""
import random
import sys
from pathlib import Path

import networkx as nx

KNOWN_CUBIC_COUNTS = {4: 1, 6: 2, 8: 5, 10: 19}


def atlas_connected():
    for g in nx.graph_atlas_g():
        if g.number_of_nodes() >= 2 and nx.is_connected(g):
            yield g


def cubic_graphs(n, seed):
    rng = random.Random(seed)
    found = []
    while len(found) < KNOWN_CUBIC_COUNTS[n]:
        g = nx.random_regular_graph(3, n, seed=rng.randrange(1 << 30))
        if not nx.is_connected(g):
            continue
        if any(nx.is_isomorphic(g, h) for h in found):
            continue
        found.append(g)
    found.sort(key=lambda h: nx.to_graph6_bytes(h, header=False))
    return found


def g6(g):
    g = nx.convert_node_labels_to_integers(g)
    return nx.to_graph6_bytes(g, header=False).decode().strip()


def main(out_dir):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "connected_le7.g6", "w") as f:
        for g in atlas_connected():
            f.write(g6(g) + "\n")
    with open(out / "cubic_le10.g6", "w") as f:
        for n in sorted(KNOWN_CUBIC_COUNTS):
            for g in cubic_graphs(n, seed=n):
                f.write(g6(g) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/catalog")
