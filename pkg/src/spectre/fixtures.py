"""Small named graphs and filtrations used by tests, harnesses and the CLI."""
from __future__ import annotations

from .filtration import ColorFiltrationSpec
from .graph import ColoredGraph

RED = "red"
BLUE = "blue"


def two_colored_square() -> ColoredGraph:
    """4-cycle A-B-D-C-A with A, B red and C, D blue (A=0, B=1, C=2, D=3)."""
    return ColoredGraph.build(4, [(0, 1), (0, 2), (1, 3), (2, 3)],
                              [RED, RED, BLUE, BLUE], [RED, BLUE])


def square_spec() -> ColorFiltrationSpec:
    return ColorFiltrationSpec(
        {BLUE: 1.0, RED: 2.0},
        {(RED, RED): 1.0, (BLUE, BLUE): 2.0, (RED, BLUE): 3.0},
    )


def mono_star() -> ColoredGraph:
    """K_{1,3}, all red, center 0."""
    return ColoredGraph.build(4, [(0, 1), (0, 2), (0, 3)], [RED] * 4, [RED])


def mono_path() -> ColoredGraph:
    """Path 0-2-1-3, all red."""
    return ColoredGraph.build(4, [(0, 2), (1, 2), (1, 3)], [RED] * 4, [RED])


def mono_spec(vertex: float = 1.0, edge: float = 1.0) -> ColorFiltrationSpec:
    return ColorFiltrationSpec({RED: vertex}, {(RED, RED): edge})


def star_red_center() -> ColoredGraph:
    return ColoredGraph.build(4, [(0, 1), (0, 2), (0, 3)], [RED, BLUE, BLUE, BLUE], [RED, BLUE])


def star_blue_center() -> ColoredGraph:
    return ColoredGraph.build(4, [(0, 1), (0, 2), (0, 3)], [BLUE, RED, RED, RED], [RED, BLUE])


def swapped_star_spec() -> ColorFiltrationSpec:
    return ColorFiltrationSpec(
        {RED: 1.0, BLUE: 2.0},
        {(RED, BLUE): 1.0, (RED, RED): 2.0, (BLUE, BLUE): 3.0},
    )


def rbbr_path() -> ColoredGraph:
    """Path on 4 vertices colored red, blue, blue, red."""
    return ColoredGraph.build(4, [(0, 1), (1, 2), (2, 3)], [RED, BLUE, BLUE, RED], [RED, BLUE])


def rbbr_specs(eps: float) -> tuple[ColorFiltrationSpec, ColorFiltrationSpec]:
    """``(f, g)``: f lowers the blue-blue edge to ``1 - eps``; g is constant 1 on edges.

    The red-red value never occurs on the path; it is set to 1 in both so
    the sup distance between the two is exactly ``eps``.
    """
    fv = {RED: 1.0, BLUE: 2.0}
    f = ColorFiltrationSpec(fv, {(RED, BLUE): 1.0, (BLUE, BLUE): 1.0 - eps, (RED, RED): 1.0})
    g = ColorFiltrationSpec(fv, {(RED, BLUE): 1.0, (BLUE, BLUE): 1.0, (RED, RED): 1.0})
    return f, g


def rook_4x4() -> ColoredGraph:
    """Rook's graph on a 4x4 board, SRG(16, 6, 2, 2); vertex 4*i + j is square (i, j)."""
    edges = []
    for a in range(16):
        for b in range(a + 1, 16):
            if a // 4 == b // 4 or a % 4 == b % 4:
                edges.append((a, b))
    return ColoredGraph.build(16, edges, [RED] * 16, [RED])


def shrikhande() -> ColoredGraph:
    """Cayley graph of Z4 x Z4 with connection set {+-(0,1), +-(1,0), +-(1,1)}."""
    steps = {(0, 1), (0, 3), (1, 0), (3, 0), (1, 1), (3, 3)}
    edges = []
    for a in range(16):
        for b in range(a + 1, 16):
            d = ((b // 4 - a // 4) % 4, (b % 4 - a % 4) % 4)
            if d in steps:
                edges.append((a, b))
    return ColoredGraph.build(16, edges, [RED] * 16, [RED])


FIXTURE_GRAPHS = {
    "square": two_colored_square,
    "mono-star": mono_star,
    "mono-path": mono_path,
    "star-red-center": star_red_center,
    "star-blue-center": star_blue_center,
    "rbbr-path": rbbr_path,
    "rook4x4": rook_4x4,
    "shrikhande": shrikhande,
}
