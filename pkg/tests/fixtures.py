from hexsaw.hexlattice import A_MID, MidEdge, Vertex
from hexsaw.saw import Walk

# leftward half-plane walk from a: bridges of widths 8, 3, 1, 0
FIG4_VERTICES = [
    (-1, 0), (-2, 1), (-4, 1), (-5, 0), (-7, 0), (-8, 1), (-10, 1), (-11, 0), (-13, 0),
    (-14, 1), (-16, 1), (-17, 0), (-19, 0), (-20, 1), (-22, 1), (-23, 0), (-25, 0), (-26, 1),
    (-25, 2), (-23, 2), (-22, 3), (-20, 3), (-19, 4), (-17, 4), (-16, 5), (-14, 5), (-13, 6),
    (-14, 7), (-16, 7), (-17, 8), (-19, 8), (-20, 9), (-19, 10), (-17, 10), (-16, 11),
]
FIG4 = Walk(A_MID, tuple(Vertex(*v) for v in FIG4_VERTICES), MidEdge(Vertex(-16, 11), Vertex(-14, 11)))
