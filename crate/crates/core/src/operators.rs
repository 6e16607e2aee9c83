//! Signed incidence matrix, boundary and coboundary maps, and the two
//! Laplacians as explicit exact matrices.
//!
//! With `𝓘` the `N × M` incidence matrix and `D = diag(max(deg v, 1))`:
//!
//! ```text
//! δ   = 𝓘ᵀ            (M × N)
//! δ*  = D⁻¹𝓘          (N × M)
//! L^V = D⁻¹𝓘𝓘ᵀ        (N × N)
//! L^H = 𝓘ᵀD⁻¹𝓘        (M × M, symmetric)
//! ```
//!
//! The eigensolver works on the symmetric form `D^(-1/2)𝓘𝓘ᵀD^(-1/2)`, which is
//! similar to `L^V`. Its square-root scaling is the only place floating point
//! enters this module.

use num_bigint::BigInt;
use num_traits::{FromPrimitive, Num, Zero};
use thiserror::Error;

use crate::matrix::Matrix;
use crate::model::ChemicalHypergraph;
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OperatorError {
    #[error("expected a vector of length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Scalars the boundary maps can act on: `f64` for numerics, [`Rational`]
/// for exact identities.
pub trait Scalar: Clone + Num + FromPrimitive {}

impl<T: Clone + Num + FromPrimitive> Scalar for T {}

/// `N × M` matrix with `+1` for input-only, `−1` for output-only and `0`
/// otherwise (catalyst or absent). Rows follow vertex order, columns
/// hyperedge order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceMatrix {
    entries: Matrix<i32>,
}

impl IncidenceMatrix {
    pub fn entries(&self) -> &Matrix<i32> {
        &self.entries
    }

    pub fn rows(&self) -> usize {
        self.entries.rows()
    }

    pub fn cols(&self) -> usize {
        self.entries.cols()
    }

    pub fn to_rational(&self) -> Matrix<Rational> {
        self.entries.map(|&x| Rational::from_integer(BigInt::from(x)))
    }

    pub fn transpose(&self) -> IncidenceMatrix {
        IncidenceMatrix { entries: self.entries.transpose() }
    }
}

pub fn incidence_matrix(g: &ChemicalHypergraph) -> IncidenceMatrix {
    let hs = g.hyperedges();
    IncidenceMatrix { entries: Matrix::from_fn(g.vertex_count(), hs.len(), |v, j| hs[j].sign(v)) }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    Boundary,
    Coboundary,
    LaplacianVertex,
    LaplacianHyperedge,
    LaplacianVertexSymmetrized,
}

/// An operator as an exact matrix.
///
/// For [`OperatorKind::LaplacianVertexSymmetrized`] the stored entries are the
/// integer Gram matrix `𝓘𝓘ᵀ`; the `D^(-1/2)` scaling on both sides is applied
/// by [`OperatorMatrix::to_f64`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorMatrix {
    pub kind: OperatorKind,
    pub entries: Matrix<Rational>,
    weights: Vec<usize>,
}

impl OperatorMatrix {
    pub fn to_f64(&self) -> Matrix<f64> {
        let m = self.entries.to_f64();
        if self.kind != OperatorKind::LaplacianVertexSymmetrized {
            return m;
        }
        let n = m.rows();
        let inv_sqrt: Vec<f64> = self.weights.iter().map(|&w| 1.0 / (w as f64).sqrt()).collect();
        let mut s = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let x = m[(i, j)] * inv_sqrt[i] * inv_sqrt[j];
                s[(i, j)] = x;
                s[(j, i)] = x;
            }
        }
        s
    }
}

fn weights_rational(g: &ChemicalHypergraph) -> Vec<Rational> {
    g.weights().into_iter().map(|w| Rational::from_integer(BigInt::from(w))).collect()
}

/// `δ = 𝓘ᵀ`.
pub fn boundary_matrix(g: &ChemicalHypergraph) -> OperatorMatrix {
    OperatorMatrix {
        kind: OperatorKind::Boundary,
        entries: incidence_matrix(g).transpose().to_rational(),
        weights: g.weights(),
    }
}

/// `δ* = D⁻¹𝓘`.
pub fn coboundary_matrix(g: &ChemicalHypergraph) -> OperatorMatrix {
    let inc = incidence_matrix(g).to_rational();
    let w = weights_rational(g);
    OperatorMatrix {
        kind: OperatorKind::Coboundary,
        entries: Matrix::from_fn(inc.rows(), inc.cols(), |v, j| &inc[(v, j)] / &w[v]),
        weights: g.weights(),
    }
}

// 𝓘𝓘ᵀ as integers.
fn vertex_gram(g: &ChemicalHypergraph) -> Matrix<i64> {
    let inc = incidence_matrix(g);
    let e = inc.entries();
    let (n, m) = (e.rows(), e.cols());
    let mut out = Matrix::zeros(n, n);
    for v in 0..n {
        for w in 0..=v {
            let s: i64 = (0..m).map(|j| i64::from(e[(v, j)] * e[(w, j)])).sum();
            out[(v, w)] = s;
            out[(w, v)] = s;
        }
    }
    out
}

/// `L^V = D⁻¹𝓘𝓘ᵀ`. Rows of isolated vertices are zero.
pub fn laplacian_vertex(g: &ChemicalHypergraph) -> OperatorMatrix {
    let gram = vertex_gram(g);
    let w = g.weights();
    let n = gram.rows();
    OperatorMatrix {
        kind: OperatorKind::LaplacianVertex,
        entries: Matrix::from_fn(n, n, |v, u| {
            Rational::new(BigInt::from(gram[(v, u)]), BigInt::from(w[v]))
        }),
        weights: w,
    }
}

/// `L^H = 𝓘ᵀD⁻¹𝓘`.
pub fn laplacian_hyperedge(g: &ChemicalHypergraph) -> OperatorMatrix {
    let inc = incidence_matrix(g);
    let e = inc.entries();
    let w = weights_rational(g);
    let (n, m) = (e.rows(), e.cols());
    let mut out = Matrix::zeros(m, m);
    for a in 0..m {
        for b in 0..=a {
            let mut s = Rational::zero();
            for v in 0..n {
                let p = e[(v, a)] * e[(v, b)];
                if p != 0 {
                    s += Rational::from_integer(BigInt::from(p)) / &w[v];
                }
            }
            out[(b, a)] = s.clone();
            out[(a, b)] = s;
        }
    }
    OperatorMatrix { kind: OperatorKind::LaplacianHyperedge, entries: out, weights: g.weights() }
}

/// `D^(-1/2)𝓘𝓘ᵀD^(-1/2)`, stored as the exact Gram matrix plus weights.
pub fn laplacian_vertex_symmetrized(g: &ChemicalHypergraph) -> OperatorMatrix {
    let gram = vertex_gram(g);
    OperatorMatrix {
        kind: OperatorKind::LaplacianVertexSymmetrized,
        entries: gram.map(|&x| Rational::from_integer(BigInt::from(x))),
        weights: g.weights(),
    }
}

fn check_len(expected: usize, found: usize) -> Result<(), OperatorError> {
    if expected == found {
        Ok(())
    } else {
        Err(OperatorError::DimensionMismatch { expected, found })
    }
}

fn from_count<T: Scalar>(n: usize) -> T {
    T::from_usize(n).expect("small integers are representable")
}

/// `(δf)(h) = Σ_{inputs} f − Σ_{outputs} f`.
pub fn boundary_apply<T: Scalar>(g: &ChemicalHypergraph, f: &[T]) -> Result<Vec<T>, OperatorError> {
    check_len(g.vertex_count(), f.len())?;
    Ok(g.hyperedges()
        .iter()
        .map(|h| {
            let ins = h.inputs().iter().fold(T::zero(), |acc, &v| acc + f[v].clone());
            let outs = h.outputs().iter().fold(T::zero(), |acc, &v| acc + f[v].clone());
            ins - outs
        })
        .collect())
}

/// `(δ*γ)(v) = (Σ_{h: v input} γ − Σ_{h: v output} γ) / deg v`, and 0 for
/// isolated vertices.
pub fn coboundary_apply<T: Scalar>(
    g: &ChemicalHypergraph,
    gamma: &[T],
) -> Result<Vec<T>, OperatorError> {
    check_len(g.hyperedge_count(), gamma.len())?;
    let mut acc = vec![T::zero(); g.vertex_count()];
    for (h, x) in g.hyperedges().iter().zip(gamma) {
        for &v in h.inputs() {
            acc[v] = acc[v].clone() + x.clone();
        }
        for &v in h.outputs() {
            acc[v] = acc[v].clone() - x.clone();
        }
    }
    Ok(acc.into_iter().zip(g.weights()).map(|(a, w)| a / from_count::<T>(w)).collect())
}

/// `(f, g)_V = Σ_v deg v · f(v) g(v)`, weight 1 for isolated vertices.
pub fn vertex_inner<T: Scalar>(
    g: &ChemicalHypergraph,
    f: &[T],
    h: &[T],
) -> Result<T, OperatorError> {
    check_len(g.vertex_count(), f.len())?;
    check_len(g.vertex_count(), h.len())?;
    Ok(g.weights()
        .into_iter()
        .zip(f.iter().zip(h))
        .fold(T::zero(), |acc, (w, (a, b))| acc + from_count::<T>(w) * a.clone() * b.clone()))
}

/// `(ω, γ)_H = Σ_h ω(h) γ(h)`.
pub fn hyperedge_inner<T: Scalar>(
    g: &ChemicalHypergraph,
    omega: &[T],
    gamma: &[T],
) -> Result<T, OperatorError> {
    check_len(g.hyperedge_count(), omega.len())?;
    check_len(g.hyperedge_count(), gamma.len())?;
    Ok(omega.iter().zip(gamma).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
}

/// Both sides of the adjointness identity: `((δf, γ)_H, (f, δ*γ)_V)`.
pub fn adjointness_check<T: Scalar>(
    g: &ChemicalHypergraph,
    f: &[T],
    gamma: &[T],
) -> Result<(T, T), OperatorError> {
    let df = boundary_apply(g, f)?;
    let dsg = coboundary_apply(g, gamma)?;
    Ok((hyperedge_inner(g, &df, gamma)?, vertex_inner(g, f, &dsg)?))
}

/// `L^V f` computed as `δ*(δf)`.
pub fn laplacian_vertex_apply<T: Scalar>(
    g: &ChemicalHypergraph,
    f: &[T],
) -> Result<Vec<T>, OperatorError> {
    coboundary_apply(g, &boundary_apply(g, f)?)
}

/// `L^H γ` computed as `δ(δ*γ)`.
pub fn laplacian_hyperedge_apply<T: Scalar>(
    g: &ChemicalHypergraph,
    gamma: &[T],
) -> Result<Vec<T>, OperatorError> {
    boundary_apply(g, &coboundary_apply(g, gamma)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::HypergraphBuilder;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn branching() -> ChemicalHypergraph {
        HypergraphBuilder::new(["v1", "v2", "v3", "v4"])
            .hyperedge("h1", ["v1"], ["v2"])
            .hyperedge("h2", ["v3"], ["v1", "v3"])
            .hyperedge("h3", ["v1", "v2", "v4"], ["v4"])
            .build()
            .unwrap()
    }

    fn four_vertex() -> ChemicalHypergraph {
        HypergraphBuilder::new(["v1", "v2", "v3", "v4"])
            .hyperedge("h1", ["v1", "v2"], ["v3"])
            .hyperedge("h2", ["v1"], ["v4"])
            .build()
            .unwrap()
    }

    #[test]
    fn incidence_of_branching_example() {
        let inc = incidence_matrix(&branching());
        assert_eq!(
            inc.entries().to_rows(),
            vec![vec![1, -1, 1], vec![-1, 0, 1], vec![0, 0, 0], vec![0, 0, 0]]
        );
    }

    #[test]
    fn incidence_catalyst_and_all_catalyst_columns() {
        let catalyst_edge = HypergraphBuilder::new(["v1", "v2", "v3"])
            .hyperedge("h", ["v1", "v2", "v3"], ["v3"])
            .build()
            .unwrap();
        assert_eq!(incidence_matrix(&catalyst_edge).entries().to_rows(), vec![vec![1], vec![1], vec![0]]);
        let cat = HypergraphBuilder::new(["a", "b"]).hyperedge("h", ["a", "b"], ["a", "b"]).build().unwrap();
        assert_eq!(incidence_matrix(&cat).entries().to_rows(), vec![vec![0], vec![0]]);
    }

    #[test]
    fn boundary_examples() {
        let g = four_vertex();
        assert_eq!(boundary_apply(&g, &[1.0, 1.0, 1.0, 1.0]).unwrap(), vec![1.0, 0.0]);
        // balanced hyperedge kills constants
        let bal = HypergraphBuilder::new(["a", "b", "c", "d"])
            .hyperedge("h", ["a", "b"], ["c", "d"])
            .build()
            .unwrap();
        assert_eq!(boundary_apply(&bal, &[3.0; 4]).unwrap(), vec![0.0]);
        // indicator of an always-catalyst vertex
        let g = branching();
        assert_eq!(boundary_apply(&g, &[0, 0, 1, 0]).unwrap(), vec![0, 0, 0]);
        assert_eq!(
            boundary_apply(&g, &[1.0]),
            Err(OperatorError::DimensionMismatch { expected: 4, found: 1 })
        );
    }

    #[test]
    fn coboundary_examples() {
        let g = branching();
        let gamma = vec![q(1, 2), q(1, 1), q(1, 2)];
        assert!(coboundary_apply(&g, &gamma).unwrap().iter().all(Zero::is_zero));
        let source_sink = HypergraphBuilder::new(["v1", "v2", "v3"])
            .hyperedge("h1", ["v1"], ["v1", "v2"])
            .hyperedge("h2", ["v2", "v3"], ["v3"])
            .build()
            .unwrap();
        assert_eq!(coboundary_apply(&source_sink, &[1.0, 1.0]).unwrap(), vec![0.0; 3]);
        assert_eq!(coboundary_apply(&g, &[0.0; 3]).unwrap(), vec![0.0; 4]);
        assert!(coboundary_apply(&g, &[0.0; 2]).is_err());
    }

    #[test]
    fn hyperedge_laplacian_four_vertex() {
        let lh = laplacian_hyperedge(&four_vertex());
        assert_eq!(lh.entries.to_rows(), vec![vec![q(5, 2), q(1, 2)], vec![q(1, 2), q(3, 2)]]);
        assert!(lh.entries.is_symmetric());
    }

    #[test]
    fn single_hyperedge_laplacian_is_2n_minus_k_minus_m() {
        // N = 4, inputs {a,b,c}, outputs {c,d}: k = 3, m = 2
        let g = HypergraphBuilder::new(["a", "b", "c", "d"])
            .hyperedge("h", ["a", "b", "c"], ["c", "d"])
            .build()
            .unwrap();
        assert_eq!(laplacian_hyperedge(&g).entries[(0, 0)], q(8 - 3 - 2, 1));
    }

    #[test]
    fn all_catalyst_laplacians_vanish() {
        let g = HypergraphBuilder::new(["a", "b", "c"])
            .hyperedge("h1", ["a", "b"], ["a", "b"])
            .hyperedge("h2", ["c"], ["c"])
            .build()
            .unwrap();
        assert!(laplacian_vertex(&g).entries.iter().all(Zero::is_zero));
        assert!(laplacian_hyperedge(&g).entries.iter().all(Zero::is_zero));
    }

    #[test]
    fn vertex_laplacian_matches_composition() {
        let g = four_vertex();
        let lv = laplacian_vertex(&g);
        let f = vec![q(1, 3), q(-2, 1), q(5, 7), q(0, 1)];
        assert_eq!(lv.entries.mul_vec_exact(&f), laplacian_vertex_apply(&g, &f).unwrap());
        let gamma = vec![q(2, 5), q(-1, 4)];
        let lh = laplacian_hyperedge(&g);
        assert_eq!(lh.entries.mul_vec_exact(&gamma), laplacian_hyperedge_apply(&g, &gamma).unwrap());
    }

    #[test]
    fn boundary_and_coboundary_matrices() {
        let g = four_vertex();
        let f = vec![q(1, 1), q(2, 1), q(3, 1), q(4, 1)];
        assert_eq!(boundary_matrix(&g).entries.mul_vec_exact(&f), boundary_apply(&g, &f).unwrap());
        let gamma = vec![q(1, 1), q(3, 1)];
        assert_eq!(
            coboundary_matrix(&g).entries.mul_vec_exact(&gamma),
            coboundary_apply(&g, &gamma).unwrap()
        );
    }

    #[test]
    fn symmetrized_form() {
        let g = four_vertex();
        let s = laplacian_vertex_symmetrized(&g).to_f64();
        assert_eq!(s.asymmetry(), 0.0);
        // (v1, v1): gram 2, degree 2
        assert!((s[(0, 0)] - 1.0).abs() < 1e-15);
        // (v1, v2): gram 1, degrees 2 and 1
        assert!((s[(0, 1)] - 1.0 / 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn adjointness_zero_function() {
        let g = four_vertex();
        let (a, b) = adjointness_check(&g, &[0.0; 4], &[1.0, 2.0]).unwrap();
        assert_eq!((a, b), (0.0, 0.0));
    }

    #[test]
    fn isolated_vertex_rows_are_zero() {
        let g = HypergraphBuilder::new(["a", "b", "c"]).hyperedge("e", ["a"], ["b"]).build().unwrap();
        let lv = laplacian_vertex(&g);
        assert!(lv.entries.row(2).iter().all(Zero::is_zero));
        assert_eq!(coboundary_apply(&g, &[5.0]).unwrap()[2], 0.0);
    }
}
