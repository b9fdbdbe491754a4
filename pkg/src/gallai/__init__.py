"""Exact constructions of Gallai witness sets and extraction of monochromatic
homothetic copies from their colorings."""

from .coloring import (
    Coloring,
    dumps_coloring,
    enumerate_colorings,
    induced_supercoloring,
    loads_coloring,
    random_coloring,
    restrict,
)
from .construction import (
    DEFAULT_BUDGET,
    BaseSequence,
    ResourceBudget,
    clear_cache,
    default_base,
    delta,
    e_n_closure,
    enumerate_homotheties,
    phi,
    phi_2,
    prefix_set,
)
from .errors import (
    DomainMismatch,
    FormatError,
    GallaiError,
    InternalProofError,
    MissingPoint,
    NoRepeat,
    ResourceLimit,
)
from .geometry import (
    Homothety,
    Point,
    PointSet,
    apply_homothety,
    complex_sum,
    dumps_pointset,
    image_of_set,
    loads_pointset,
    pt,
    solve_anchored_homothety,
)
from .proof import LemmaTrace, extract_delta, extract_phi, extract_phi2, witness_homothety
from .sweep import SweepReport, exhaustive_sweep, random_sweep
from .verify import CheckReport, check_delta_witness, check_phi_witness, find_mono_copies
from .witness import Witness, WitnessSystem, dumps_witness, loads_witness

__version__ = "0.1.0"
