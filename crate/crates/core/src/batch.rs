//! Evaluating many independent instances at once.

use crate::exec::Execution;
use crate::model::ChemicalHypergraph;
use crate::spectra::{spectrum, Operator, SpectralError, Spectrum};
use crate::verify::{verify, Check, VerifyOptions};

/// Vertex and hyperedge spectra of one instance.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumPair {
    pub vertex: Spectrum,
    pub hyperedge: Spectrum,
}

pub fn spectra(graphs: &[ChemicalHypergraph], exec: Execution) -> Vec<Result<SpectrumPair, SpectralError>> {
    exec.map(graphs, |g| {
        Ok(SpectrumPair { vertex: spectrum(g, Operator::Vertex)?, hyperedge: spectrum(g, Operator::Hyperedge)? })
    })
}

pub fn verify_all(
    graphs: &[ChemicalHypergraph],
    opts: &VerifyOptions,
    exec: Execution,
) -> Vec<Result<Vec<Check>, SpectralError>> {
    exec.map(graphs, |g| verify(g, opts))
}
