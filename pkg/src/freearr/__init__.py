"""freearr: exact computational workbench for line arrangements in P^2.

Central plane arrangements in C^3 — equivalently line arrangements in the
projective plane — over Q, quadratic extensions Q(sqrt(d)), and their
rational function fields Q(sqrt(d))(t).  Everything is exact: intersection
lattices, characteristic polynomials, freeness certificates, inductive- and
recursive-freeness searches, and one-parameter family scans.
"""

from .scalar import (
    RATIONAL,
    FieldCtx,
    FieldMismatchError,
    Poly,
    QuadElem,
    QuadraticRootPair,
    RatFn,
    RootReport,
    roots_low_degree,
)
from .geometry import (
    Arrangement,
    GeometryError,
    Line,
    Point,
    cone,
    incident,
    join,
    meet,
)
from .lattice import (
    AutomorphismGroup,
    CharPoly,
    FlatPoint,
    LatticeData,
    char_poly,
    compute_lattice,
    exponents_from_charpoly,
    extend_lattice,
    lattice_automorphisms,
    lattice_isomorphic,
    restrict_lattice,
)
from .freeness import (
    Derivation2,
    ExponentPair,
    FreenessError,
    FreenessResult,
    MultiArr2,
    abt_test,
    is_free,
    multi_exponents,
    s_membership,
    saito_verify_rank2,
    yoshinaga_test,
    ziegler_restriction,
)
from .search import (
    Chain,
    Move,
    RecursiveVerdict,
    SearchCache,
    SearchError,
    free_additions,
    free_deletions,
    is_inductively_free,
    recursive_freeness_bounded,
    verify_chain,
)
from .catalog import (
    CatalogError,
    CatalogMismatchError,
    catalog_family,
    catalog_get,
    catalog_names,
    catalog_selfcheck,
    dual_hesse,
    eleven_if,
    family13,
    family13_family,
    family15,
    family15_family,
    g443,
    pentagonal,
)
from .moduli import (
    ExceptionalReport,
    ExceptionalValue,
    Family,
    FamilyCondition,
    GenericLattice,
    ProfileTriple,
    ScanRow,
    ScanTable,
    classify_profiles,
    exceptional_values,
    generic_lattice,
    scan_family,
)
from .arrio import (
    ArrIOError,
    decode_arrangement,
    encode_arrangement,
    parse_param,
)
from .svg import NotDrawableError, render_svg

__version__ = "0.1.0"
