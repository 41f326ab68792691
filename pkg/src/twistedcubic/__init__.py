"""Lines of PG(3,q) and how they meet the point orbits of the twisted cubic."""

__version__ = "0.1.0"

from .algebra import GF, FieldElem, field_make, parse_field
from .forms import BinaryForm, GL2El, act, inv_I, inv_J, j_invariant
from .klein import Line, line_from_pencil, line_nature, point_classify
from .incidence import IncidenceProfile, brute_decompose, decompose, d_quartic
from .elliptic import coeffs, count_points, torsion_witness
from .census import line_census, point_census, verify_all

__all__ = [
    "GF",
    "FieldElem",
    "field_make",
    "parse_field",
    "BinaryForm",
    "GL2El",
    "act",
    "inv_I",
    "inv_J",
    "j_invariant",
    "Line",
    "line_from_pencil",
    "line_nature",
    "point_classify",
    "IncidenceProfile",
    "brute_decompose",
    "decompose",
    "d_quartic",
    "coeffs",
    "count_points",
    "torsion_witness",
    "line_census",
    "point_census",
    "verify_all",
]
