//! Closed systems of reactions and their linear independence.
//!
//! A nonempty hyperedge subset is a closed system when every vertex it
//! touches occurs equally often as input and as output within the subset.
//! Equivalently, its indicator vector lies in `ker 𝓘`. Closed systems
//! generalize oriented cycles of graphs, and `l` linearly independent ones
//! force `m_H ≥ l`.

use thiserror::Error;

use crate::exec::Execution;
use crate::matrix::Matrix;
use crate::model::ChemicalHypergraph;
use crate::spectra::{exact_rank, zero_multiplicities};

/// Default limit on `M` for exhaustive enumeration (`2^20` subsets).
pub const DEFAULT_CAP: usize = 20;

// Hard limit from the 64-bit subset masks.
const MASK_LIMIT: usize = 63;

// Subset bits handled inside one Gray-code run.
const LOW_BITS: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("unknown hyperedge `{0}`")]
    UnknownHyperedge(String),
    #[error("a closed system needs at least one hyperedge")]
    EmptySubset,
    #[error("{hyperedges} hyperedges exceed the enumeration cap of {cap}")]
    TooManyHyperedges { hyperedges: usize, cap: usize },
}

/// A closed system, stored as its hyperedge indices in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClosedSystem {
    hyperedges: Vec<usize>,
}

impl ClosedSystem {
    pub fn hyperedges(&self) -> &[usize] {
        &self.hyperedges
    }

    /// `{v ∈ h : h ∈ H′}`, sorted.
    pub fn induced_vertices(&self, g: &ChemicalHypergraph) -> Vec<usize> {
        let mut vs: Vec<usize> =
            self.hyperedges.iter().flat_map(|&j| g.hyperedges()[j].members()).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn ids<'g>(&self, g: &'g ChemicalHypergraph) -> Vec<&'g str> {
        self.hyperedges.iter().map(|&j| g.hyperedges()[j].id()).collect()
    }

    /// Indicator vector over all `m` hyperedges.
    pub fn indicator(&self, m: usize) -> Vec<i32> {
        let mut x = vec![0; m];
        for &j in &self.hyperedges {
            x[j] = 1;
        }
        x
    }
}

/// Balance test on hyperedge indices.
pub fn is_closed_indices(g: &ChemicalHypergraph, subset: &[usize]) -> bool {
    if subset.is_empty() {
        return false;
    }
    let mut net = vec![0i64; g.vertex_count()];
    for &j in subset {
        let h = &g.hyperedges()[j];
        for &v in h.inputs() {
            net[v] += 1;
        }
        for &v in h.outputs() {
            net[v] -= 1;
        }
    }
    net.iter().all(|&x| x == 0)
}

pub fn is_closed_system(g: &ChemicalHypergraph, ids: &[&str]) -> Result<bool, StructureError> {
    if ids.is_empty() {
        return Err(StructureError::EmptySubset);
    }
    let mut subset = Vec::with_capacity(ids.len());
    for id in ids {
        let j = g.hyperedge_index(id).ok_or_else(|| StructureError::UnknownHyperedge(id.to_string()))?;
        subset.push(j);
    }
    subset.sort_unstable();
    subset.dedup();
    Ok(is_closed_indices(g, &subset))
}

fn mask_to_indices(mask: u64) -> Vec<usize> {
    (0..64).filter(|&b| mask >> b & 1 == 1).collect()
}

// Sparse signed columns of 𝓘.
fn columns(g: &ChemicalHypergraph) -> Vec<Vec<(usize, i64)>> {
    g.hyperedges()
        .iter()
        .map(|h| h.members().into_iter().map(|v| (v, h.sign(v) as i64)).filter(|&(_, s)| s != 0).collect())
        .collect()
}

struct Balance {
    net: Vec<i64>,
    nonzero: usize,
}

impl Balance {
    fn add(&mut self, col: &[(usize, i64)], sign: i64) {
        for &(v, s) in col {
            let before = self.net[v] != 0;
            self.net[v] += sign * s;
            let after = self.net[v] != 0;
            match (before, after) {
                (false, true) => self.nonzero += 1,
                (true, false) => self.nonzero -= 1,
                _ => {}
            }
        }
    }
}

/// All closed systems, in lexicographic order of their sorted index lists.
pub fn enumerate_closed_systems(
    g: &ChemicalHypergraph,
    cap: usize,
) -> Result<Vec<ClosedSystem>, StructureError> {
    enumerate_closed_systems_with(g, cap, Execution::default())
}

pub fn enumerate_closed_systems_with(
    g: &ChemicalHypergraph,
    cap: usize,
    exec: Execution,
) -> Result<Vec<ClosedSystem>, StructureError> {
    let m = g.hyperedge_count();
    if m > cap || m > MASK_LIMIT {
        return Err(StructureError::TooManyHyperedges { hyperedges: m, cap: cap.min(MASK_LIMIT) });
    }
    if m == 0 {
        return Ok(Vec::new());
    }
    let cols = columns(g);
    let low = m.min(LOW_BITS);
    let high = m - low;

    // Each block fixes the high bits and walks the low bits in Gray-code
    // order, touching one column per step.
    let blocks = exec.map_range(1usize << high, |hi| {
        let mut bal = Balance { net: vec![0; g.vertex_count()], nonzero: 0 };
        for b in 0..high {
            if hi >> b & 1 == 1 {
                bal.add(&cols[low + b], 1);
            }
        }
        let base = (hi as u64) << low;
        let mut found = Vec::new();
        let mut gray = 0u64;
        if bal.nonzero == 0 && base != 0 {
            found.push(base);
        }
        for i in 1u64..(1u64 << low) {
            let bit = i.trailing_zeros() as usize;
            let sign = if gray >> bit & 1 == 0 { 1 } else { -1 };
            gray ^= 1 << bit;
            bal.add(&cols[bit], sign);
            if bal.nonzero == 0 {
                found.push(base | gray);
            }
        }
        found
    });

    let mut systems: Vec<ClosedSystem> = blocks
        .into_iter()
        .flatten()
        .map(|mask| ClosedSystem { hyperedges: mask_to_indices(mask) })
        .collect();
    systems.sort();
    Ok(systems)
}

/// `K × M` 0/1 matrix with one row per system.
pub fn system_matrix(systems: &[ClosedSystem], m: usize) -> Matrix<i32> {
    Matrix::from_rows(systems.iter().map(|s| s.indicator(m)).collect())
}

/// Exact rank of the system matrix.
pub fn independence_rank(systems: &[ClosedSystem], m: usize) -> usize {
    if systems.is_empty() {
        return 0;
    }
    exact_rank(&system_matrix(systems, m))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuralReport {
    pub closed_systems: Vec<ClosedSystem>,
    pub independence_rank: usize,
    pub m_h: usize,
    /// `independence_rank ≤ m_H`.
    pub bound_satisfied: bool,
    /// `|E| − |V| + components`, for graphs only.
    pub cycle_space_dimension: Option<usize>,
}

pub fn structural_report(g: &ChemicalHypergraph, cap: usize) -> Result<StructuralReport, StructureError> {
    let systems = enumerate_closed_systems(g, cap)?;
    Ok(structural_report_from(g, systems))
}

/// Report over an explicitly supplied list of closed systems.
pub fn structural_report_from(g: &ChemicalHypergraph, closed_systems: Vec<ClosedSystem>) -> StructuralReport {
    let (_, m_h) = zero_multiplicities(g);
    let l = independence_rank(&closed_systems, g.hyperedge_count());
    let cycle_space_dimension = g.is_graph().then(|| {
        g.hyperedge_count() + g.connected_components().len() - g.vertex_count()
    });
    StructuralReport {
        closed_systems,
        independence_rank: l,
        m_h,
        bound_satisfied: l <= m_h,
        cycle_space_dimension,
    }
}
