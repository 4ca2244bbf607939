use thiserror::Error;

use crate::correspondence::GhResult;

/// Errors produced by the library and surfaced by the CLI.
#[derive(Debug, Error)]
pub enum Error {
    // -- metric construction and subsets
    #[error("distance matrix is not square (row {row} has {len} entries, expected {expected})")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("distance matrix is empty")]
    EmptySpace,
    #[error("non-finite entry at ({0}, {1})")]
    NonFiniteEntry(usize, usize),
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("negative entry at ({0}, {1})")]
    NegativeEntry(usize, usize),
    #[error("nonzero diagonal entry at index {0}")]
    NonzeroDiagonal(usize),
    #[error("zero distance between distinct points ({0}, {1})")]
    ZeroOffDiagonal(usize, usize),
    #[error("triangle inequality fails: d({i},{k}) = {direct} > d({i},{j}) + d({j},{k}) = {via}")]
    TriangleViolation {
        i: usize,
        j: usize,
        k: usize,
        direct: f64,
        via: f64,
    },
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("non-finite coordinate at point {0}")]
    NonFiniteCoordinate(usize),
    #[error("label count {labels} does not match point count {points}")]
    LabelCountMismatch { labels: usize, points: usize },
    #[error("subset is empty")]
    EmptySubset,
    #[error("index {index} out of range for space of size {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("scale factor must be positive, got {0}")]
    NonpositiveLambda(f64),

    // -- relations and the GH solver
    #[error("relation is empty")]
    EmptyRelation,
    #[error("relation is not a correspondence: {0}")]
    NotACorrespondence(String),
    #[error("subset has empty image under the relation")]
    EmptyImage,
    #[error("enumeration of {nx}x{ny} relations exceeds the cap of {cap} cells")]
    SizeCapExceeded { nx: usize, ny: usize, cap: usize },
    #[error("node budget exhausted; best known upper bound d_GH <= {}", .best.value)]
    BudgetExceeded { best: Box<GhResult> },

    // -- covers and certificates
    #[error("family contains duplicate member at positions {0} and {1}")]
    DuplicateMember(usize, usize),
    #[error("family '{family}' is not disjoint at the requested level: members {pair:?} have gap {gap}")]
    NotDisjoint {
        family: String,
        pair: (usize, usize),
        gap: f64,
    },
    #[error("families do not cover the target; {} uncovered points", .indices.len())]
    NotCovering { indices: Vec<usize> },
    #[error("certificate needs at least one family")]
    EmptyFamilyList,
    #[error("separation parameter r must be positive and finite, got {0}")]
    InvalidSeparation(f64),
    #[error("theorem inapplicable: {k} families exceed asdim lower bound {n} of the model space")]
    TooManyFamilies { k: usize, n: usize },
    #[error("theorem inapplicable: model space '{0}' has trivial stabilizer")]
    TrivialStabilizer(String),
    #[error("unknown model space '{0}'")]
    UnknownModel(String),
    #[error("ambient space is not a Euclidean point set")]
    NonEuclideanAmbient,

    // -- constructions
    #[error("window is degenerate or inverted")]
    InvalidWindow,
    #[error("window contains no lattice point")]
    EmptyWindow,
    #[error("grid would have {count} points, above the cap of {cap}")]
    TooManyPoints { count: usize, cap: usize },
    #[error("point {0} does not have integer coordinates")]
    NonIntegerPoint(usize),
    #[error("sample spacing {0} does not divide 1")]
    DeltaNotDividingOne(f64),
    #[error("piece height {0} is below sqrt(3); same-colour pieces would be closer than 1")]
    HTooSmall(f64),
    #[error("block length {l} must be at least 2r = {}", 2.0 * .r)]
    LTooSmall { l: f64, r: f64 },
    #[error("point {0} does not lie on the comb set")]
    NotOnComb(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    // -- I/O
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("stage '{stage}' failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Process exit code for this error: 3 for theorem-gate failures,
    /// 4 for an exhausted solver budget, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::TooManyFamilies { .. } | Error::TrivialStabilizer(_) => 3,
            Error::BudgetExceeded { .. } => 4,
            Error::Stage { source, .. } => source.exit_code(),
            _ => 2,
        }
    }
}

impl Error {
    /// Tags the error with the pipeline stage it came from.
    pub fn in_stage(self, stage: &'static str) -> Error {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
