from .errors import (
    NumericalRadiusError,
    MatrixParseError,
    DimensionMismatchError,
    SizeLimitError,
    NotHermitianError,
    NotPSDError,
    NotUnitError,
    InvalidToleranceError,
    DimensionTooSmallError,
    UnknownBoundError,
    NoConvergenceError,
    BudgetExceededError,
    error_code,
)
from .jacobi import EigDecomposition, hermitian_eig, solve_hermitian, symmetrize
from .core import (
    as_matrix,
    identity,
    matmul,
    add,
    sub,
    scale,
    frobenius_norm,
    adjoint,
    kron,
    re_part,
    im_part,
    rotate,
    gram,
    cogram,
    operator_norm,
    hermitian_norm,
    abs_op,
    psd_power,
    ensure_psd,
    is_hermitian,
    is_normal,
    is_square_zero,
)
from .matrix_io import parse_matrix, matrix_to_doc, load_matrix, save_matrix
