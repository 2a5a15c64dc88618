"""Exact block diagonalization of symmetrized tensor algebras (M_p^{(x)n})^{S_n}
and of (B^{(x)n})^{S_n} for a block-diagonalized base algebra B."""

from .algebra import (
    AlgebraElement,
    OracleCapExceeded,
    apply_word,
    decompose_lower_triangular,
    elementary,
    multiply,
    structure_constant,
    weight_idempotent,
)
from .blockdiag import (
    BlockImage,
    InnerProductTable,
    block_sizes,
    gram,
    inner_product_table,
    inner_product_tables,
    orthonormalizer,
    psi,
    psi_prime,
)
from .combinatorics import (
    Partition,
    Profile,
    Tableau,
    compositions,
    dual_partition,
    enum_partitions,
    enum_profiles,
    enum_ssyt,
)
from .general import (
    BaseAlgebra,
    GeneralElement,
    compose_blockdiag,
    validate_base_algebra,
    y_coefficients,
)
from .polyring import Poly, apply_d, apply_d_star, p_lambda, q_poly
from .scalars import Quad
from .terwilliger import (
    binary_beta,
    binary_beta_schrijver,
    binary_blockdiag,
    nonbinary_base,
    nonbinary_psi,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement",
    "BaseAlgebra",
    "BlockImage",
    "GeneralElement",
    "InnerProductTable",
    "OracleCapExceeded",
    "Partition",
    "Poly",
    "Profile",
    "Quad",
    "Tableau",
    "apply_d",
    "apply_d_star",
    "apply_word",
    "binary_beta",
    "binary_beta_schrijver",
    "binary_blockdiag",
    "block_sizes",
    "compose_blockdiag",
    "compositions",
    "decompose_lower_triangular",
    "dual_partition",
    "elementary",
    "enum_partitions",
    "enum_profiles",
    "enum_ssyt",
    "gram",
    "inner_product_table",
    "inner_product_tables",
    "multiply",
    "nonbinary_base",
    "nonbinary_psi",
    "orthonormalizer",
    "p_lambda",
    "psi",
    "psi_prime",
    "q_poly",
    "structure_constant",
    "validate_base_algebra",
    "weight_idempotent",
    "y_coefficients",
]
