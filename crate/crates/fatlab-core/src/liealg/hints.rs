//! Orbit information supplied as data: explicit witness vectors, polynomial
//! slices and transitivity claims. Hints are never inferred.

use serde::{Deserialize, Serialize};

use super::LieError;
use crate::exactnum::{MatQ, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HintKind {
    /// The vectors are witnesses; they only bound the maximum from below.
    ExplicitVector,
    /// Every nonzero orbit meets the slice; the maximum is read off a case split.
    Slice,
    /// The vectors represent every nonzero orbit up to scale.
    TransitivityClaim,
}

/// Which maximum a hint speaks about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HintTarget {
    /// `x ∈ h⊥`, centralizer taken in `h⊥` (the b-invariant).
    Perp,
    /// `x ∈ p`, centralizer taken in `m`.
    P,
    /// `y ∈ m`, centralizer taken in `p`.
    M,
}

impl HintTarget {
    pub fn label(self) -> &'static str {
        match self {
            HintTarget::Perp => "h-perp",
            HintTarget::P => "p",
            HintTarget::M => "m",
        }
    }
}

/// `x = Σ vars[k] · generators[k]`, split projectively over `case_vars`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SliceSpec {
    pub vars: Vec<String>,
    /// Row-major ambient matrices, one per variable.
    pub generators: Vec<Vec<Rational>>,
    pub case_vars: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessHint {
    pub kind: HintKind,
    pub target: HintTarget,
    /// Row-major ambient matrices.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vectors: Vec<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slice: Option<SliceSpec>,
    pub provenance: String,
}

impl WitnessHint {
    pub fn explicit(target: HintTarget, vectors: &[MatQ], provenance: impl Into<String>) -> Self {
        WitnessHint {
            kind: HintKind::ExplicitVector,
            target,
            vectors: vectors.iter().map(row_major).collect(),
            slice: None,
            provenance: provenance.into(),
        }
    }

    pub fn transitive(target: HintTarget, reps: &[MatQ], provenance: impl Into<String>) -> Self {
        WitnessHint {
            kind: HintKind::TransitivityClaim,
            ..WitnessHint::explicit(target, reps, provenance)
        }
    }

    /// A slice in which every variable is a case variable (at most two).
    pub fn slice(
        target: HintTarget,
        vars: &[&str],
        generators: &[MatQ],
        provenance: impl Into<String>,
    ) -> Self {
        WitnessHint {
            kind: HintKind::Slice,
            target,
            vectors: Vec::new(),
            slice: Some(SliceSpec {
                vars: vars.iter().map(|s| s.to_string()).collect(),
                generators: generators.iter().map(row_major).collect(),
                case_vars: vars.iter().map(|s| s.to_string()).collect(),
            }),
            provenance: provenance.into(),
        }
    }

    pub fn vector_matrices(&self, n: usize) -> Result<Vec<MatQ>, LieError> {
        self.vectors.iter().map(|v| to_matrix(n, v)).collect()
    }

    pub fn certifies(&self) -> bool {
        !matches!(self.kind, HintKind::ExplicitVector)
    }

    /// Structural checks that do not need the ambient algebra.
    pub fn validate_shape(&self) -> Result<(), LieError> {
        match self.kind {
            HintKind::ExplicitVector | HintKind::TransitivityClaim => {
                if self.vectors.is_empty() {
                    return Err(LieError::Invalid("hint carries no vectors".into()));
                }
            }
            HintKind::Slice => {
                let s = self
                    .slice
                    .as_ref()
                    .ok_or_else(|| LieError::Invalid("slice hint without slice".into()))?;
                if s.vars.is_empty() || s.vars.len() != s.generators.len() {
                    return Err(LieError::Invalid("one generator per slice variable".into()));
                }
                if s.case_vars != s.vars || s.vars.len() > 2 {
                    return Err(LieError::Invalid(
                        "slice variables must all be case variables (at most two)".into(),
                    ));
                }
            }
        }
        if self.provenance.trim().is_empty() {
            return Err(LieError::Invalid("hint without provenance".into()));
        }
        Ok(())
    }
}

pub(crate) fn to_matrix(n: usize, v: &[Rational]) -> Result<MatQ, LieError> {
    if v.len() != n * n {
        return Err(LieError::Dimension(format!(
            "matrix with {} entries in a {n}x{n} ambient",
            v.len()
        )));
    }
    let m = MatQ::new(n, n, v.to_vec())?;
    if !m.is_skew() {
        return Err(LieError::Invalid("hint matrix is not skew".into()));
    }
    Ok(m)
}

pub(crate) fn row_major(m: &MatQ) -> Vec<Rational> {
    m.entries().to_vec()
}
