//! Spectra of the vertex and hyperedge Laplacians, exact zero
//! multiplicities, and Rayleigh quotients.
//!
//! Eigenvalues are listed in descending order: `μ₁ ≥ μ₂ ≥ … ≥ μ_N` for the
//! vertex Laplacian and `μ₁^H ≥ … ≥ μ_M^H` for the hyperedge Laplacian.
//! This is the reverse of the usual ascending convention of linear algebra
//! libraries.
//!
//! The multiplicity of the eigenvalue 0 is always the exact nullity of the
//! incidence matrix (`m_H = M − rank 𝓘`, `m_V = N − rank 𝓘`). Floating point
//! eigenvalues inside `[−ZERO_TOL, ZERO_TOL]` are snapped to zero only if
//! their count agrees with the exact value.

mod jacobi;
mod kernel;

pub use jacobi::{eigenvalues_symmetric, symmetric_eigen, SymmetricEigen, DEFAULT_TOL, MAX_SWEEPS};
pub use kernel::{exact_rank, exact_rank_and_kernel, KernelBasis, KernelSource};

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::matrix::Matrix;
use crate::model::ChemicalHypergraph;
use crate::operators::{
    boundary_apply, incidence_matrix, laplacian_hyperedge, laplacian_vertex_symmetrized,
    OperatorError,
};

/// Classification threshold for numerically zero eigenvalues.
pub const ZERO_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("matrix is not symmetric (max asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_diagonal:e})")]
    NoConvergence { sweeps: usize, off_diagonal: f64 },
    #[error("{operator} spectrum has {numeric} eigenvalues within the zero window but the exact multiplicity is {exact}")]
    MultiplicityMismatch { operator: Operator, exact: usize, numeric: usize },
    #[error("Rayleigh quotient of the zero function is undefined")]
    ZeroFunction,
    #[error(transparent)]
    Dimension(#[from] OperatorError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Operator {
    Vertex,
    Hyperedge,
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Operator::Vertex => "vertex",
            Operator::Hyperedge => "hyperedge",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    pub operator: Operator,
    /// Descending.
    pub eigenvalues: Vec<f64>,
    /// Exact `m_V` or `m_H`.
    pub zero_multiplicity: usize,
}

impl Spectrum {
    pub fn largest(&self) -> Option<f64> {
        self.eigenvalues.first().copied()
    }

    pub fn smallest(&self) -> Option<f64> {
        self.eigenvalues.last().copied()
    }

    /// Eigenvalues above [`ZERO_TOL`], descending.
    pub fn nonzero(&self) -> Vec<f64> {
        self.eigenvalues.iter().copied().filter(|&x| x > ZERO_TOL).collect()
    }
}

/// Spectrum together with eigenfunctions, one per column, in the
/// coordinates of the operator itself (for the vertex Laplacian these are
/// `D^(-1/2)` times the symmetric-form eigenvectors).
#[derive(Clone, Debug)]
pub struct Eigenpairs {
    pub spectrum: Spectrum,
    pub functions: Matrix<f64>,
}

impl Eigenpairs {
    pub fn function(&self, k: usize) -> Vec<f64> {
        (0..self.functions.rows()).map(|i| self.functions[(i, k)]).collect()
    }
}

/// `(m_V, m_H)`, both exact.
pub fn zero_multiplicities(g: &ChemicalHypergraph) -> (usize, usize) {
    let r = exact_rank(incidence_matrix(g).entries());
    (g.vertex_count() - r, g.hyperedge_count() - r)
}

/// Basis of `ker 𝓘` (hyperedge functions annihilated by `δ*`).
pub fn incidence_kernel(g: &ChemicalHypergraph) -> KernelBasis {
    let mut k = exact_rank_and_kernel(&incidence_matrix(g).to_rational());
    k.source = KernelSource::Incidence;
    k
}

/// Basis of `ker 𝓘ᵀ` (vertex functions annihilated by `δ`).
pub fn incidence_transpose_kernel(g: &ChemicalHypergraph) -> KernelBasis {
    let mut k = exact_rank_and_kernel(&incidence_matrix(g).transpose().to_rational());
    k.source = KernelSource::IncidenceTranspose;
    k
}

fn numeric_matrix(g: &ChemicalHypergraph, which: Operator) -> Matrix<f64> {
    match which {
        Operator::Vertex => laplacian_vertex_symmetrized(g).to_f64(),
        Operator::Hyperedge => laplacian_hyperedge(g).to_f64(),
    }
}

fn snap(values: &mut [f64], exact: usize, which: Operator) -> Result<(), SpectralError> {
    let numeric = values.iter().filter(|x| x.abs() <= ZERO_TOL).count();
    if numeric != exact {
        return Err(SpectralError::MultiplicityMismatch { operator: which, exact, numeric });
    }
    for x in values.iter_mut().filter(|x| x.abs() <= ZERO_TOL) {
        *x = 0.0;
    }
    Ok(())
}

pub fn eigenpairs(g: &ChemicalHypergraph, which: Operator) -> Result<Eigenpairs, SpectralError> {
    let eig = symmetric_eigen(&numeric_matrix(g, which), DEFAULT_TOL)?;
    let (m_v, m_h) = zero_multiplicities(g);
    let exact = match which {
        Operator::Vertex => m_v,
        Operator::Hyperedge => m_h,
    };
    let mut values = eig.values.clone();
    snap(&mut values, exact, which)?;
    let functions = match which {
        Operator::Vertex => {
            let w = g.weights();
            let n = w.len();
            Matrix::from_fn(n, n, |i, k| eig.vectors[(i, k)] / (w[i] as f64).sqrt())
        }
        Operator::Hyperedge => eig.vectors,
    };
    Ok(Eigenpairs {
        spectrum: Spectrum { operator: which, eigenvalues: values, zero_multiplicity: exact },
        functions,
    })
}

/// Spectrum of `L^V` (through its symmetric form) or of `L^H`.
pub fn spectrum(g: &ChemicalHypergraph, which: Operator) -> Result<Spectrum, SpectralError> {
    let mut values = eigenvalues_symmetric(&numeric_matrix(g, which), DEFAULT_TOL)?;
    let (m_v, m_h) = zero_multiplicities(g);
    let exact = match which {
        Operator::Vertex => m_v,
        Operator::Hyperedge => m_h,
    };
    snap(&mut values, exact, which)?;
    Ok(Spectrum { operator: which, eigenvalues: values, zero_multiplicity: exact })
}

/// `Σ_h (δf(h))² / Σ_v deg v · f(v)²`.
pub fn rayleigh_vertex(g: &ChemicalHypergraph, f: &[f64]) -> Result<f64, SpectralError> {
    let df = boundary_apply(g, f)?;
    let den: f64 = g.weights().iter().zip(f).map(|(&w, x)| w as f64 * x * x).sum();
    if den == 0.0 {
        return Err(SpectralError::ZeroFunction);
    }
    Ok(df.iter().map(|x| x * x).sum::<f64>() / den)
}

/// `Σ_v (1/deg v)(Σ_{h: v input} γ − Σ_{h: v output} γ)² / Σ_h γ(h)²`.
pub fn rayleigh_hyperedge(g: &ChemicalHypergraph, gamma: &[f64]) -> Result<f64, SpectralError> {
    if gamma.len() != g.hyperedge_count() {
        return Err(OperatorError::DimensionMismatch {
            expected: g.hyperedge_count(),
            found: gamma.len(),
        }
        .into());
    }
    let den: f64 = gamma.iter().map(|x| x * x).sum();
    if den == 0.0 {
        return Err(SpectralError::ZeroFunction);
    }
    let mut flow = vec![0.0; g.vertex_count()];
    for (h, x) in g.hyperedges().iter().zip(gamma) {
        for &v in h.inputs() {
            flow[v] += x;
        }
        for &v in h.outputs() {
            flow[v] -= x;
        }
    }
    let num: f64 = flow.iter().zip(g.weights()).map(|(s, w)| s * s / w as f64).sum();
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::HypergraphBuilder;

    fn four_vertex() -> ChemicalHypergraph {
        HypergraphBuilder::new(["v1", "v2", "v3", "v4"])
            .hyperedge("h1", ["v1", "v2"], ["v3"])
            .hyperedge("h2", ["v1"], ["v4"])
            .build()
            .unwrap()
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn catalyst_hyperedge_spectra() {
        let g = HypergraphBuilder::new(["v1", "v2", "v3"])
            .hyperedge("h", ["v1", "v2", "v3"], ["v3"])
            .build()
            .unwrap();
        let h = spectrum(&g, Operator::Hyperedge).unwrap();
        assert!(close(&h.eigenvalues, &[2.0], 1e-12));
        let v = spectrum(&g, Operator::Vertex).unwrap();
        assert!(close(&v.eigenvalues, &[2.0, 0.0, 0.0], 1e-12));
        assert_eq!(v.zero_multiplicity, 2);
    }

    #[test]
    fn four_vertex_vertex_spectrum() {
        let r = 0.5f64.sqrt();
        let v = spectrum(&four_vertex(), Operator::Vertex).unwrap();
        assert!(close(&v.eigenvalues, &[2.0 + r, 2.0 - r, 0.0, 0.0], 1e-12));
        assert_eq!(v.nonzero().len(), 2);
    }

    #[test]
    fn single_edge() {
        let g = HypergraphBuilder::new(["v1", "v2"]).hyperedge("e", ["v1"], ["v2"]).build().unwrap();
        assert!(close(&spectrum(&g, Operator::Vertex).unwrap().eigenvalues, &[2.0, 0.0], 1e-12));
    }

    #[test]
    fn multiplicities() {
        let branching = HypergraphBuilder::new(["v1", "v2", "v3", "v4"])
            .hyperedge("h1", ["v1"], ["v2"])
            .hyperedge("h2", ["v3"], ["v1", "v3"])
            .hyperedge("h3", ["v1", "v2", "v4"], ["v4"])
            .build()
            .unwrap();
        assert_eq!(zero_multiplicities(&branching), (2, 1));
        let single = HypergraphBuilder::new(["a", "b", "c", "d"])
            .hyperedge("h", ["a", "b"], ["b", "c"])
            .build()
            .unwrap();
        assert_eq!(zero_multiplicities(&single), (3, 0));
        let edgeless = HypergraphBuilder::new(["a", "b", "c"]).build().unwrap();
        assert_eq!(zero_multiplicities(&edgeless), (3, 0));
    }

    #[test]
    fn degenerate_sizes() {
        let empty = HypergraphBuilder::new(Vec::<String>::new()).build().unwrap();
        assert!(spectrum(&empty, Operator::Vertex).unwrap().eigenvalues.is_empty());
        assert!(spectrum(&empty, Operator::Hyperedge).unwrap().eigenvalues.is_empty());
        let edgeless = HypergraphBuilder::new(["a", "b"]).build().unwrap();
        assert_eq!(spectrum(&edgeless, Operator::Vertex).unwrap().eigenvalues, vec![0.0, 0.0]);
    }

    #[test]
    fn kernels_are_labelled() {
        let g = four_vertex();
        let k = incidence_transpose_kernel(&g);
        assert_eq!(k.source, KernelSource::IncidenceTranspose);
        assert_eq!((k.rank, k.dimension()), (2, 2));
        assert_eq!(incidence_kernel(&g).dimension(), 0);
    }

    #[test]
    fn rayleigh_examples() {
        let g = four_vertex();
        let t = std::f64::consts::PI / 8.0;
        let r = rayleigh_hyperedge(&g, &[t.cos(), t.sin()]).unwrap();
        assert!((r - (2.0 + 0.5f64.sqrt())).abs() < 1e-12);

        let bal = HypergraphBuilder::new(["a", "b", "c", "d"])
            .hyperedge("h1", ["a", "b"], ["c", "d"])
            .hyperedge("h2", ["c"], ["a"])
            .build()
            .unwrap();
        assert_eq!(rayleigh_vertex(&bal, &[1.0; 4]).unwrap(), 0.0);

        // ±1/√Σdeg by block on the two-block example
        let two_block = HypergraphBuilder::new(["v1", "v2", "v3", "v4", "v5", "v6"])
            .hyperedge("h1", ["v1", "v2"], ["v4", "v5"])
            .hyperedge("h2", ["v5", "v6"], ["v2", "v3"])
            .build()
            .unwrap();
        let c = 1.0 / 8f64.sqrt();
        let f = [c, c, c, -c, -c, -c];
        assert!((rayleigh_vertex(&two_block, &f).unwrap() - 4.0).abs() < 1e-12);

        assert_eq!(rayleigh_vertex(&g, &[0.0; 4]), Err(SpectralError::ZeroFunction));
        assert_eq!(rayleigh_hyperedge(&g, &[0.0; 2]), Err(SpectralError::ZeroFunction));
        assert!(matches!(rayleigh_hyperedge(&g, &[1.0]), Err(SpectralError::Dimension(_))));
    }

    #[test]
    fn vertex_eigenfunctions_are_in_operator_coordinates() {
        use crate::operators::laplacian_vertex_apply;
        let g = four_vertex();
        let e = eigenpairs(&g, Operator::Vertex).unwrap();
        for k in 0..4 {
            let f = e.function(k);
            let lf = laplacian_vertex_apply(&g, &f).unwrap();
            for i in 0..4 {
                assert!((lf[i] - e.spectrum.eigenvalues[k] * f[i]).abs() < 1e-10);
            }
        }
    }
}
