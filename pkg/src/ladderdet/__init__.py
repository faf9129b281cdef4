"""Exact computational algebra for ladder determinantal ideals.

Constructs ladder, Schubert and poset-of-minors determinantal ideals,
builds the Frobenius-splitting witness polynomials and Knutson derivation
trees, and verifies the Groebner, height, intersection, symbolic-power
and F-purity identities they satisfy at desk scale.
"""

from importlib import resources

from .fields import GF, QQ, Field, parse_field
from .groebner import (
    Ideal,
    InstanceTooLarge,
    MonomialIdeal,
    Ring,
    buchberger,
    frobenius_bracket,
    ideal_colon,
    ideal_equal,
    ideal_intersect,
    initial_ideal,
    is_groebner_basis,
    monomial_dim,
    monomial_min_primes,
    monomial_symbolic_power,
    normal_form,
    saturate,
    time_limit,
)
from .ideals import (
    PartialPermutation,
    PosetIdealSpec,
    corner_ideal,
    f_of_matrix,
    f_witness,
    g_witness,
    grid_ring,
    ladder_ring,
    minors_in_ladder,
    mixed_ladder_ideal,
    omega_delta_ideal,
    poset_ideal,
    schubert_ideal,
)
from .knutson import (
    KnutsonDerivation,
    corner_derivation,
    derivation_from_json,
    derivation_to_json,
    ladder_derivation,
    verify as verify_derivation,
)
from .ladders import (
    Ladder,
    LadderError,
    antidiagonal_profile,
    chamfer,
    height,
    reduce_to_unmixed,
    total_width,
    unchamfer,
    validate,
)
from .oracle import (
    SymbolicCertificate,
    fedder_check,
    initial_symbolic_compare,
    minor_product_symbolic_degree,
    symbolic_fsplit_certificate,
    symbolic_power_saturation,
)
from .poly import (
    ANTIDIAG,
    GREVLEX,
    Minor,
    Polynomial,
    TermOrder,
    compare_monomials,
    expand_minor,
    grid_var,
    parse_polynomial,
    poly_to_str,
)

__version__ = "0.1.0"


def load_fixture(name: str):
    """A bundled ladder fixture by name, e.g. 'staircase10' or 'full3x3'."""
    text = resources.files(__package__).joinpath("fixtures").joinpath(f"{name}.json").read_text()
    return Ladder.from_json(text)


def fixture_names() -> list[str]:
    root = resources.files(__package__).joinpath("fixtures")
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))
