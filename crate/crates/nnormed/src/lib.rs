//! A computational toolkit for linear n-normed spaces: concrete n-norms
//! with axiom checking, b-linear functionals with exact and sampled norm
//! computation, boundedness analysis for functional families, and
//! constructive norm-preserving extension machinery.

pub mod cli;
pub mod element;
pub mod error;
pub mod functional;
pub mod hahn_banach;
pub mod linalg;
pub mod nnorm;
pub mod polynomial;
pub mod sampling;
pub mod sequences;
pub mod subspace;
pub mod ubp;
pub mod vector;

pub use element::{Element, ProductPair};
pub use error::{Error, Result};
pub use functional::{Action, BAnchors, BLinearFunctional, NormEstimate};
pub use nnorm::{check_axioms, is_linearly_dependent, AxiomReport, NNorm, NNormKind};
pub use polynomial::Polynomial;
pub use subspace::Subspace;
pub use vector::Vector;
