//! Crate-wide error type.
//!
//! Every fallible operation returns a typed variant; degenerate inputs are
//! surfaced as errors, never as silently wrong answers.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    // numerics
    #[error("zero denominator in rational constructor")]
    ZeroDenominator,
    #[error("operands mix scalar kinds (exact rational vs complex float) or precisions")]
    MixedScalarKinds,
    #[error("vector length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("projective comparison of two all-zero vectors")]
    AllZeroVectors,
    #[error("equality policy {0} is not applicable to this scalar kind")]
    PolicyKindMismatch(&'static str),

    // linalg
    #[error("index out of bounds: ({row}, {col}) in {rows}x{cols} matrix")]
    IndexOutOfBounds {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),

    // condensation
    #[error("invalid split r = {r} for an n x n matrix with n = {n}")]
    BadSplit { r: usize, n: usize },
    #[error("singular core minor at window starting at row {window}")]
    SingularCoreMinor { window: usize },
    #[error("matrix too small: need at least {need} rows, got {got}")]
    TooSmall { need: usize, got: usize },

    // series
    #[error("invalid period lattice: Im(omega2/omega1) must be positive")]
    InvalidLattice,
    #[error("series does not terminate: no upper parameter is a nonpositive integer multiple of the step")]
    NonTerminating,
    #[error("pole before termination: factor {factor} vanishes at term index {k}")]
    PoleBeforeTermination { k: usize, factor: String },
    #[error("very-well-poised kernel undefined: [a0] = 0")]
    A0Zero,
    #[error("balancing condition violated: a1 + ... + a5 != 2 a0 + delta")]
    BalancingViolated,
    #[error("generalized series needs |upper| = |lower| + 1, got {upper} and {lower}")]
    BadSeriesShape { upper: usize, lower: usize },

    // detformulas
    #[error("zero denominator entry at (i, k) = ({i}, {k})")]
    ZeroDenominatorEntry { i: usize, k: usize },
    #[error("pole in denominator product")]
    PoleInDenominator,
    #[error("factorization condition violated at (i, j, k, l) = ({i}, {j}, {k}, {l})")]
    FactorizationViolated {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
    },
    #[error("p must be antisymmetric: p[{i}][{j}] + p[{j}][{i}] != 0")]
    NotAntisymmetric { i: usize, j: usize },
    #[error("not enough rows/columns to form the shifted minors (need m + 1 <= {max})")]
    InsufficientData { max: usize },

    // pade
    #[error("basis function has a pole at node index {k}")]
    PoleAtNode { k: usize },
    #[error("weight at node index {k} is zero")]
    ZeroWeight { k: usize },
    #[error("degenerate solution: (P(u_k), Q(u_k)) = (0, 0) at node index {k}")]
    DegenerateSolution { k: usize },
    #[error("reference points are not pairwise distinct (indices {0} and {1})")]
    DuplicatePoints(usize, usize),
    #[error("pole in explicit route constant")]
    PoleInConstant,
    #[error("pole in L-matrix entry at ({i}, {j})")]
    PoleInL { i: usize, j: usize },
    #[error("anti-triangularity violated: (LG)[{i}][{j}] != 0 with i + j < N")]
    AntiTriangularityViolated { i: usize, j: usize },
    #[error("route {route} requires a {family} problem")]
    WrongFamily {
        route: &'static str,
        family: &'static str,
    },
    #[error("step delta must be nonzero")]
    ZeroDelta,

    // cli / io
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
