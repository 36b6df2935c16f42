"""Homotopy types of components of the space of long knots."""

from .abelian import H1Result
from .catalog import catalog_get, catalog_names
from .dsl import parse_knot, print_knot
from .errors import (DslSyntaxError, IndexTooLarge, InvalidTree, KspaceError, LimitExceeded, NonConcreteAction,
                     NotFiniteOrder, NotInvertible, SchemaError, SemanticError, SizeMismatch, UnknownName)
from .homology import I_star, gramain_class, gramain_cocycle, gramain_pairing, h1, h1_presentation
from .homotopy import (Circle, Config2ModYoung, MonodromyDatum, Point, Product, TwistedProduct, dimension,
                       expr_render, homotopy_type, simplify)
from .intmatrix import IntMatrix, snf
from .knot_model import (Cable, HypKnot, HypSplice, KglDatum, Sum, Torus, Unknot, ValidationReport, Violation,
                         normalize, validate)
from .pi1 import pi1_presentation, pi1_structure, render_structure
from .serialize import deserialize, dumps, serialize, to_document
from .signed_perm import SignedPerm
from .symmetry import canonical_form, classes_equal, compute_Af, invert_class, is_invertible

__version__ = "0.1.0"
