"""Stern-Brocot vertices, Farey paths, coronas and their arithmetic and statistics."""

from .core import INF, ONE, ZERO, Order, Sl2Word, Vertex, continued_fraction, word_of_vertex, vertex_of_word
from .paths import FareyPath, FormalSum, enumerate_paths, path_from_interior
from .corona import Corona, Dna, dna_decode, dna_encode, enumerate_coronas, is_corona
from .norms import Linear, Max, Power, build_c_leq, build_corona
from .zeckendorf import zeck_add, zeck_decode, zeck_encode, zeck_mul

__version__ = "0.1.0"
