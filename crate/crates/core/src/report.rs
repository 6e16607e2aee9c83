//! Everything known about one instance, as text or JSON.

use std::fmt::{self, Write as _};

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::model::{Bipartiteness, ChemicalHypergraph};
use crate::spectra::{spectrum, Operator, SpectralError, Spectrum};
use crate::structure::{structural_report, StructureError, DEFAULT_CAP};
use crate::verify::{spectral_checks, Check};

/// Environment variable overriding the closed-system enumeration cap.
pub const CAP_ENV: &str = "HYPERLAP_CLOSED_SYSTEM_CAP";

/// The cap from [`CAP_ENV`], or [`DEFAULT_CAP`] when unset.
pub fn cap_from_env() -> Result<usize, String> {
    match std::env::var(CAP_ENV) {
        Ok(raw) => raw.trim().parse().map_err(|_| format!("{CAP_ENV} must be a nonnegative integer, got `{raw}`")),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeEntry {
    pub vertex: String,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComponentEntry {
    pub vertices: Vec<String>,
    pub hyperedges: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BipartitenessEntry {
    pub bipartite: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub second: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conflict_vertex: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conflict_chain: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HPrime {
    pub exact: String,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClosedSystemsEntry {
    pub enumerated: bool,
    pub cap: usize,
    /// Hyperedge ids of each system; absent when `M` exceeds the cap.
    pub systems: Option<Vec<Vec<String>>>,
    pub independence_rank: Option<usize>,
    pub bound_satisfied: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub notice: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub vertices: usize,
    pub hyperedges: usize,
    pub degrees: Vec<DegreeEntry>,
    pub components: Vec<ComponentEntry>,
    pub bipartiteness: BipartitenessEntry,
    pub h_prime: Option<HPrime>,
    pub m_v: usize,
    pub m_h: usize,
    pub vertex_spectrum: Vec<f64>,
    pub hyperedge_spectrum: Vec<f64>,
    pub closed_systems: ClosedSystemsEntry,
    /// `M − N + components`, graphs only.
    pub cycle_space_dimension: Option<usize>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

/// Formats with 9 significant digits; exact zeros print as `0`.
pub fn fmt_eigenvalue(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let digits = 9 - 1 - x.abs().log10().floor() as i32;
    let s = format!("{:.*}", digits.max(0) as usize, x);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn fmt_spectrum(values: &[f64]) -> String {
    values.iter().map(|&x| fmt_eigenvalue(x)).collect::<Vec<_>>().join(", ")
}

/// One line per operator: `eigenvalues; m_X = k`.
pub fn spectrum_line(s: &Spectrum) -> String {
    let tag = match s.operator {
        Operator::Vertex => "m_V",
        Operator::Hyperedge => "m_H",
    };
    format!("{}; {tag} = {}", fmt_spectrum(&s.eigenvalues), s.zero_multiplicity)
}

fn ids(g: &ChemicalHypergraph, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| g.vertex_name(v).to_string()).collect()
}

fn edge_ids(g: &ChemicalHypergraph, hs: &[usize]) -> Vec<String> {
    hs.iter().map(|&j| g.hyperedges()[j].id().to_string()).collect()
}

pub fn build_report(g: &ChemicalHypergraph, cap: usize) -> Result<Report, SpectralError> {
    let vspec = spectrum(g, Operator::Vertex)?;
    let hspec = spectrum(g, Operator::Hyperedge)?;

    let degrees = g
        .vertices()
        .iter()
        .zip(g.degrees())
        .map(|(v, degree)| DegreeEntry { vertex: v.as_str().to_string(), degree })
        .collect();
    let components = g
        .connected_components()
        .into_iter()
        .map(|c| ComponentEntry { vertices: ids(g, &c.vertices), hyperedges: edge_ids(g, &c.hyperedges) })
        .collect();
    let bipartiteness = match g.bipartition() {
        Bipartiteness::Partition { first, second } => BipartitenessEntry {
            bipartite: true,
            first: Some(ids(g, &first)),
            second: Some(ids(g, &second)),
            conflict_vertex: None,
            conflict_chain: None,
        },
        Bipartiteness::Conflict { vertex, chain } => BipartitenessEntry {
            bipartite: false,
            first: None,
            second: None,
            conflict_vertex: Some(g.vertex_name(vertex).to_string()),
            conflict_chain: Some(edge_ids(g, &chain)),
        },
    };
    let h_prime = g.h_prime().ok().map(|r| HPrime { exact: r.to_string(), value: r.to_f64().unwrap_or(f64::NAN) });

    let (closed_systems, cycle_space_dimension) = match structural_report(g, cap) {
        Ok(s) => (
            ClosedSystemsEntry {
                enumerated: true,
                cap,
                systems: Some(s.closed_systems.iter().map(|c| edge_ids(g, c.hyperedges())).collect()),
                independence_rank: Some(s.independence_rank),
                bound_satisfied: Some(s.bound_satisfied),
                notice: None,
            },
            s.cycle_space_dimension,
        ),
        Err(e @ StructureError::TooManyHyperedges { .. }) => (
            ClosedSystemsEntry {
                enumerated: false,
                cap,
                systems: None,
                independence_rank: None,
                bound_satisfied: None,
                notice: Some(format!("{e}; closed systems not enumerated")),
            },
            g.is_graph().then(|| g.hyperedge_count() + g.connected_components().len() - g.vertex_count()),
        ),
        Err(e) => unreachable!("enumeration only fails on the cap: {e}"),
    };

    let mut checks = Vec::new();
    let lhs = vspec.zero_multiplicity as f64 - hspec.zero_multiplicity as f64;
    let rhs = g.vertex_count() as f64 - g.hyperedge_count() as f64;
    checks.push(Check {
        name: "multiplicity-identity".into(),
        passed: lhs == rhs,
        lhs,
        rhs,
        detail: Some("m_V - m_H vs N - M".into()),
    });
    spectral_checks(&mut checks, &vspec, &hspec);

    Ok(Report {
        vertices: g.vertex_count(),
        hyperedges: g.hyperedge_count(),
        degrees,
        components,
        bipartiteness,
        h_prime,
        m_v: vspec.zero_multiplicity,
        m_h: hspec.zero_multiplicity,
        vertex_spectrum: vspec.eigenvalues,
        hyperedge_spectrum: hspec.eigenvalues,
        closed_systems,
        cycle_space_dimension,
        checks,
    })
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        writeln!(s, "N = {}, M = {}", self.vertices, self.hyperedges)?;
        let degs: Vec<_> = self.degrees.iter().map(|d| format!("{}:{}", d.vertex, d.degree)).collect();
        writeln!(s, "degrees: {}", degs.join(" "))?;
        writeln!(s, "components: {}", self.components.len())?;
        for (i, c) in self.components.iter().enumerate() {
            writeln!(s, "  [{}] vertices {{{}}} hyperedges {{{}}}", i + 1, c.vertices.join(","), c.hyperedges.join(","))?;
        }
        let b = &self.bipartiteness;
        if b.bipartite {
            writeln!(
                s,
                "bipartite: yes {{{}}} / {{{}}}",
                b.first.as_deref().unwrap_or_default().join(","),
                b.second.as_deref().unwrap_or_default().join(",")
            )?;
        } else {
            writeln!(
                s,
                "bipartite: no (vertex {} forced into both blocks by {{{}}})",
                b.conflict_vertex.as_deref().unwrap_or("?"),
                b.conflict_chain.as_deref().unwrap_or_default().join(",")
            )?;
        }
        match &self.h_prime {
            Some(h) => writeln!(s, "h' = {} ({})", h.exact, fmt_eigenvalue(h.value))?,
            None => writeln!(s, "h' = undefined (no hyperedges)")?,
        }
        writeln!(s, "m_V = {}, m_H = {}", self.m_v, self.m_h)?;
        writeln!(s, "vertex spectrum: [{}]", fmt_spectrum(&self.vertex_spectrum))?;
        writeln!(s, "hyperedge spectrum: [{}]", fmt_spectrum(&self.hyperedge_spectrum))?;
        let cs = &self.closed_systems;
        match &cs.systems {
            Some(list) => {
                let shown: Vec<_> = list.iter().map(|x| format!("{{{}}}", x.join(","))).collect();
                writeln!(s, "closed systems: {} [{}]", list.len(), shown.join(" "))?;
                writeln!(
                    s,
                    "independence rank l = {} <= m_H = {}: {}",
                    cs.independence_rank.unwrap_or(0),
                    self.m_h,
                    if cs.bound_satisfied == Some(true) { "yes" } else { "no" }
                )?;
            }
            None => writeln!(s, "closed systems: {}", cs.notice.as_deref().unwrap_or("not enumerated"))?,
        }
        if let Some(c) = self.cycle_space_dimension {
            writeln!(s, "cycle space dimension: {c}")?;
        }
        writeln!(s, "checks:")?;
        for c in &self.checks {
            writeln!(
                s,
                "  {} {}: {} vs {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                fmt_eigenvalue(c.lhs),
                fmt_eigenvalue(c.rhs)
            )?;
        }
        f.write_str(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::model::HypergraphBuilder;

    #[test]
    fn formatting() {
        assert_eq!(fmt_eigenvalue(2.0 + 0.5f64.sqrt()), "2.70710678");
        assert_eq!(fmt_eigenvalue(2.0), "2");
        assert_eq!(fmt_eigenvalue(0.0), "0");
        assert_eq!(fmt_eigenvalue(0.125), "0.125");
        assert_eq!(fmt_eigenvalue(-1e-9), "-0.000000001");
        assert_eq!(fmt_eigenvalue(123456.0), "123456");
    }

    #[test]
    fn branching_report() {
        let r = build_report(&catalog::branching_no_closed_system(), DEFAULT_CAP).unwrap();
        assert_eq!((r.m_v, r.m_h), (2, 1));
        assert_eq!(r.closed_systems.systems, Some(vec![]));
        let mult = &r.checks[0];
        assert!(mult.passed);
        assert_eq!((mult.lhs, mult.rhs), (1.0, 1.0));
        assert!(r.all_passed());
    }

    #[test]
    fn two_block_report() {
        let r = build_report(&catalog::bipartite_two_block(), DEFAULT_CAP).unwrap();
        assert_eq!(r.bipartiteness.first, Some(vec!["v1".into(), "v2".into(), "v3".into()]));
        assert_eq!(r.bipartiteness.second, Some(vec!["v4".into(), "v5".into(), "v6".into()]));
        assert_eq!(r.h_prime.as_ref().unwrap().exact, "4");
        assert!(r.to_string().contains("h' = 4"));
    }

    #[test]
    fn cap_notice_and_components() {
        let g = HypergraphBuilder::new(["a", "b", "c", "d"])
            .hyperedge("e1", ["a"], ["b"])
            .hyperedge("e2", ["c"], ["d"])
            .build()
            .unwrap();
        let r = build_report(&g, 1).unwrap();
        assert_eq!(r.components.len(), 2);
        assert!(!r.closed_systems.enumerated);
        assert!(r.closed_systems.notice.is_some());
        assert_eq!(r.cycle_space_dimension, Some(0));
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["closed_systems"]["systems"], serde_json::Value::Null);
    }
}
