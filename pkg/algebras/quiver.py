"""
Finite quivers.

Vertices and arrows are addressed by index everywhere else in the code base;
names only matter for input, output and error messages. The underlying
multigraph is kept as a networkx MultiDiGraph for graph queries.
"""

import logging
from typing import Dict, Iterable, List, Sequence, Tuple

import networkx as nx

from common.errors import UnknownVertex

logger = logging.getLogger(__name__)


class Arrow:
    """A named arrow between two vertex indices."""

    def __init__(self, index: int, name: str, source: int, target: int):
        self.index = index
        self.name = name
        self.source = source
        self.target = target

    def __repr__(self):
        return f"<Arrow {self.name}:{self.source}->{self.target}>"


class Quiver:
    """
    A finite quiver with named vertices and arrows.

    Args:
        vertices: Vertex names, in the order that fixes their indices
        arrows: (name, source name, target name) triples

    Raises:
        ValueError: If names repeat
        UnknownVertex: If an arrow references an undeclared vertex
    """

    def __init__(self, vertices: Sequence[str], arrows: Iterable[Tuple[str, str, str]] = ()):
        self.vertices: List[str] = [str(v) for v in vertices]
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError(f"Duplicate vertex names in {self.vertices}")
        self.vertex_index: Dict[str, int] = {v: i for i, v in enumerate(self.vertices)}

        self.arrows: List[Arrow] = []
        self.arrow_index: Dict[str, int] = {}
        for name, source, target in arrows:
            if name in self.arrow_index:
                raise ValueError(f"Duplicate arrow name '{name}'")
            arrow = Arrow(len(self.arrows), name, self.vertex(source), self.vertex(target))
            self.arrow_index[name] = arrow.index
            self.arrows.append(arrow)

        self.graph = nx.MultiDiGraph()
        self.graph.add_nodes_from(range(len(self.vertices)))
        for arrow in self.arrows:
            self.graph.add_edge(arrow.source, arrow.target, key=arrow.index, name=arrow.name)

        # arrows leaving each vertex, in index order
        self.out_arrows: List[List[int]] = [
            sorted(key for _, _, key in self.graph.out_edges(v, keys=True))
            for v in range(len(self.vertices))
        ]

    def vertex(self, name) -> int:
        """Index of a vertex given by name (or already an index)."""
        if isinstance(name, int) and 0 <= name < len(self.vertices):
            return name
        try:
            return self.vertex_index[str(name)]
        except KeyError:
            raise UnknownVertex(f"Unknown vertex '{name}'")

    def arrow(self, name: str) -> Arrow:
        try:
            return self.arrows[self.arrow_index[name]]
        except KeyError:
            raise ValueError(f"Unknown arrow '{name}'")

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def arrow_count(self) -> int:
        return len(self.arrows)

    def is_acyclic(self) -> bool:
        """True if there are no oriented cycles (loops included)."""
        return nx.is_directed_acyclic_graph(self.graph)

    def blocks(self) -> List[List[int]]:
        """Weakly connected components, each sorted, ordered by smallest vertex."""
        components = [sorted(c) for c in nx.weakly_connected_components(self.graph)]
        return sorted(components)

    def __repr__(self):
        return f"<Quiver {len(self.vertices)} vertices, {len(self.arrows)} arrows>"
