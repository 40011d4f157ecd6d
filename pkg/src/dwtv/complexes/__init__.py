"""Branched generalized triangulations: data structure, builders, moves and file format."""
from .builders import (cylinder, disjoint_union, from_ordered_simplices, genus_surface, glue,
                       parse_complex_spec, parse_surface_spec, sigma_cross_s1, sphere3,
                       sphere_surface, surface_cross_s1, torus3, torus_surface)
from .core import (EDGE_PAIRS, FACE_CORNERS, Skeleton, SurfaceTriangulation, Triangulation,
                   ValidationReport, orient, validate)
from .io import read_triangulation, write_triangulation
from .moves import pachner_14, pachner_23, random_move, relabel
