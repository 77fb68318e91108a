//! Desk-scale verification of the span and ideal identities satisfied by the
//! quantum-inequality tensors `m_p = p ⊗ (1 − p)` in finite multi-matrix
//! algebras.
//!
//! The crate is organised bottom-up:
//!
//! - [`algebra`]: multi-matrix algebras, their tensor squares and the maps
//!   `μ`, `μ°`, `σ`, partial traces and the enveloping-algebra product.
//! - [`subspace`]: tolerance-aware subspace arithmetic in the τ-weighted
//!   inner product.
//! - [`qrel`]: projection families, `m_p`, multiplication kernels, the
//!   saturated span of the `m_p` and the special elements used in the
//!   constructive lemmas.
//! - [`rep`]: the conjugation action of the unitary group through its Lie
//!   algebra: invariants, orbit spans, weights and Weyl dimensions.
//! - [`verify`]: one report-producing check per claim.

pub mod algebra;
pub mod error;
pub(crate) mod linalg;
pub mod qrel;
pub mod rep;
pub mod subspace;
pub mod verify;

pub use algebra::{Algebra, CMatrix, CVector, Element, Side, Tensor, C64};
pub use error::{Error, Result};
pub use qrel::{Projection, ProjectionFamily, SaturationResult};
pub use rep::{DerivationSet, Weight};
pub use verify::{Claim, Provenance, Report, Status, VerifyConfig};
pub use subspace::{Relation, Subspace, TolerancePolicy, Verdict};

