//! Normalized Laplace operators on chemical hypergraphs.
//!
//! A chemical hypergraph is a vertex set together with oriented hyperedges,
//! each hyperedge carrying a nonempty set of inputs and a nonempty set of
//! outputs (the two may overlap; shared vertices are catalysts). Two
//! self-adjoint, nonnegative operators live on such a structure:
//!
//! ```text
//! L^V = δ*δ   acting on functions over vertices    (N × N)
//! L^H = δδ*   acting on functions over hyperedges  (M × M)
//! ```
//!
//! where `δf(h) = Σ_inputs f − Σ_outputs f` and `δ*` is its adjoint under the
//! degree-weighted vertex inner product. This crate assembles both operators
//! as exact rational matrices, computes their spectra with a cyclic Jacobi
//! solver, and takes the multiplicity of the eigenvalue zero from the exact
//! rank of the signed incidence matrix, never from floating point.
//!
//! Eigenvalues are reported in **descending** order (`μ₁ ≥ μ₂ ≥ …`).
//!
//! ```
//! use hyperlap::{model::HypergraphBuilder, spectra::{spectrum, Operator}};
//!
//! let g = HypergraphBuilder::new(["v1", "v2", "v3", "v4"])
//!     .hyperedge("h1", ["v1", "v2"], ["v3"])
//!     .hyperedge("h2", ["v1"], ["v4"])
//!     .build()
//!     .unwrap();
//! let s = spectrum(&g, Operator::Hyperedge).unwrap();
//! assert!((s.eigenvalues[0] - (2.0 + 0.5f64.sqrt())).abs() < 1e-12);
//! assert_eq!(s.zero_multiplicity, 0);
//! ```

pub mod batch;
pub mod catalog;
pub mod document;
pub mod exec;
pub mod matrix;
pub mod model;
pub mod operators;
pub mod random;
pub mod report;
pub mod spectra;
pub mod structure;
mod unionfind;
pub mod verify;

pub use exec::Execution;
pub use matrix::Matrix;
pub use model::{ChemicalHypergraph, Hyperedge, ModelError, VertexId};

/// Exact rational scalar used by every operator matrix.
pub type Rational = num_rational::BigRational;
