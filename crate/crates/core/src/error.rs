use thiserror::Error;

/// Errors from exact scalar arithmetic.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumError {
    #[error("radicand mismatch: cannot combine sqrt({0}) with sqrt({1})")]
    RadicandMismatch(i64, i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("radicand {0} is not a squarefree integer distinct from 0 and 1")]
    BadRadicand(i64),
    #[error("precision must be at least 64 bits, got {0}")]
    PrecisionTooLow(u32),
    #[error("cannot parse scalar from {0:?}")]
    Parse(String),
}

/// Errors from binary-form operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error("transvection index {r} exceeds operand degree {deg}")]
    TransvectionIndex { r: usize, deg: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("polynomial of degree {actual} does not fit target degree {target}")]
    DegreeOverflow { actual: usize, target: usize },
    #[error("form has odd or too small degree {0}; need an even degree of at least 6")]
    BadDegree(usize),
}

/// Errors from curve construction and family generation.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("form is not squarefree: branch points collide")]
    NotSquarefree,
    #[error("degree {0} is too small for genus >= 2")]
    DegreeTooSmall(usize),
    #[error("declared genus {declared} does not match inferred genus {inferred}")]
    GenusMismatch { declared: usize, inferred: usize },
    #[error("inadmissible family parameters: {0}")]
    Inadmissible(String),
    #[error("parameter constraint violated: {0}")]
    BadParameter(String),
}

/// Errors from the branch-point / symmetry oracle.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("roots could not be separated at {bits} bits of precision")]
    PrecisionExhausted { bits: u32 },
    #[error("tolerance too coarse: two candidate maps are indistinguishable")]
    ToleranceTooCoarse,
    #[error("group closure verification failed at tolerance 2^-{tol_exp}")]
    ClosureFailed { tol_exp: u32 },
    #[error("element order census matches no finite Moebius group: {0}")]
    UnknownCensus(String),
    #[error("no registry row matches the observed symmetry data: {0}")]
    NoRowMatch(String),
    #[error("branch set needs at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error(transparent)]
    Num(#[from] NumError),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// Errors from normal decomposition and dihedral invariants.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DihedralError {
    #[error("normalization requires a root extraction outside the scalar domain: {0}")]
    NeedsFieldTower(String),
    #[error("residual gamma exponent {0} is not a multiple of n*t = {1}")]
    GammaExponent(i64, i64),
    #[error("all inner coefficients vanish; input form is corrupted")]
    AllCoefficientsZero,
    #[error("dihedral tuple has {got} components, need at least {need}")]
    TupleTooShort { got: usize, need: usize },
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Errors from the classification pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("genus {0} is outside the invariant-based range")]
    GenusOutOfRange(usize),
    #[error("moduli point undefined: {0}; defer to oracle")]
    ModuliUndefined(String),
    #[error("classification routes disagree: {0}")]
    RouteDisagreement(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Dihedral(#[from] DihedralError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Form(#[from] FormError),
}
