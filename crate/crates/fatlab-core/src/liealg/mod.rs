//! Matrix Lie algebras with bi-invariant metrics, homogeneous pairs and triples,
//! and the fatness invariants computed on them.

use thiserror::Error;

use crate::exactnum::ExactError;

pub mod builders;
mod intmat;
pub mod hints;
pub mod invariants;
pub mod presets;
mod presentation;

pub use hints::{HintKind, HintTarget, SliceSpec, WitnessHint};
pub use intmat::IntMat;
pub use invariants::{DEFAULT_SEED, 
    centralizer_basis, centralizer_dim, compute_b, compute_f, dimension_obstruction, ideal_split,
    jacobi_holds, sample_max, BReport, DimensionObstruction, FReport, InvariantReport, Route,
    SampleOptions, Status,
};
pub use presets::{PairPreset, PresetFile, PresetStore, TriplePreset, PAIR_IDS, TRIPLE_IDS};
pub use presentation::{
    bracket, flatten, primitive, unflatten, AlgebraData, AlgebraPresentation, IdealBlock,
    PairPresentation, Subspace, TriplePresentation,
};

#[derive(Debug, Error)]
pub enum LieError {
    #[error("invalid presentation: {0}")]
    Invalid(String),
    #[error("{name} is not closed under the bracket: [{i}, {j}] leaves the span")]
    NotClosed { name: String, i: usize, j: usize },
    #[error("not a subspace: {0}")]
    NotSubspace(String),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("the zero vector has no centralizer dimension")]
    ZeroVector,
    #[error("unknown preset '{0}'")]
    UnknownPreset(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("hint vector does not lie in {0}")]
    HintOutsideSpace(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
