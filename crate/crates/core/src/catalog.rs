//! Small named instances with known spectral and structural values, and the
//! table that checks them.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::model::{ChemicalHypergraph, HypergraphBuilder};
use crate::operators::laplacian_hyperedge;
use crate::spectra::{spectrum, zero_multiplicities, Operator, SpectralError};
use crate::structure::enumerate_closed_systems;
use crate::Rational;

/// Tolerance for floating-point rows of the table.
pub const TABLE_TOL: f64 = 1e-9;

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// One hyperedge: inputs `{v1,v2,v3}`, output `{v3}` (a catalyst).
pub fn single_hyperedge_catalyst() -> ChemicalHypergraph {
    HypergraphBuilder::new(["v1", "v2", "v3"]).hyperedge("h", ["v1", "v2", "v3"], ["v3"]).build().unwrap()
}

/// `v1 + v2 → v3 → v4 + v5`.
pub fn two_hyperedge_chain() -> ChemicalHypergraph {
    HypergraphBuilder::new(names("v", 5))
        .hyperedge("h1", ["v1", "v2"], ["v3"])
        .hyperedge("h2", ["v3"], ["v4", "v5"])
        .build()
        .unwrap()
}

/// Three hyperedges forming one closed system.
pub fn closed_triple() -> ChemicalHypergraph {
    HypergraphBuilder::new(names("v", 4))
        .hyperedge("h1", ["v1", "v2"], ["v1"])
        .hyperedge("h2", ["v3"], ["v2"])
        .hyperedge("h3", ["v4"], ["v3", "v4"])
        .build()
        .unwrap()
}

/// `v2` is created with the help of `v1` and destroyed with the help of `v3`.
pub fn source_sink() -> ChemicalHypergraph {
    HypergraphBuilder::new(names("v", 3))
        .hyperedge("h1", ["v1"], ["v1", "v2"])
        .hyperedge("h2", ["v2", "v3"], ["v3"])
        .build()
        .unwrap()
}

/// Branches and reunites; contains no closed system although `m_H = 1`.
pub fn branching_no_closed_system() -> ChemicalHypergraph {
    HypergraphBuilder::new(names("v", 4))
        .hyperedge("h1", ["v1"], ["v2"])
        .hyperedge("h2", ["v3"], ["v1", "v3"])
        .hyperedge("h3", ["v1", "v2", "v4"], ["v4"])
        .build()
        .unwrap()
}

/// Bipartite with blocks `{v1,v2,v3}` / `{v4,v5,v6}`.
pub fn bipartite_two_block() -> ChemicalHypergraph {
    HypergraphBuilder::new(names("v", 6))
        .hyperedge("h1", ["v1", "v2"], ["v4", "v5"])
        .hyperedge("h2", ["v5", "v6"], ["v2", "v3"])
        .build()
        .unwrap()
}

/// Bipartite, hyperedge spectrum `2 ± 1/√2`, `h′ = 13/5`.
pub fn bipartite_four_vertex() -> ChemicalHypergraph {
    HypergraphBuilder::new(names("v", 4))
        .hyperedge("h1", ["v1", "v2"], ["v3"])
        .hyperedge("h2", ["v1"], ["v4"])
        .build()
        .unwrap()
}

/// A single hyperedge on `n` vertices with `k` inputs and `m` outputs:
/// inputs `v1..vk`, outputs `v(n−m+1)..vn`, so `k + m − n` catalysts.
///
/// # Panics
/// Unless `1 ≤ k, m ≤ n ≤ k + m`.
pub fn single_hyperedge(n: usize, k: usize, m: usize) -> ChemicalHypergraph {
    assert!(k >= 1 && m >= 1 && k <= n && m <= n && n <= k + m, "invalid (N, k, m) = ({n}, {k}, {m})");
    let vs = names("v", n);
    HypergraphBuilder::new(vs.clone())
        .hyperedge("h", vs[..k].to_vec(), vs[n - m..].to_vec())
        .build()
        .unwrap()
}

/// Star `K_{1,3}` oriented centre → leaves.
pub fn star_k13() -> ChemicalHypergraph {
    HypergraphBuilder::new(["c", "a", "b", "d"])
        .hyperedge("e1", ["c"], ["a"])
        .hyperedge("e2", ["c"], ["b"])
        .hyperedge("e3", ["c"], ["d"])
        .build()
        .unwrap()
}

/// Four-cycle `K_{2,2}` with every edge oriented from `{a, c}` to `{b, d}`.
pub fn cycle_k22() -> ChemicalHypergraph {
    HypergraphBuilder::new(["a", "b", "c", "d"])
        .hyperedge("e1", ["a"], ["b"])
        .hyperedge("e2", ["c"], ["b"])
        .hyperedge("e3", ["c"], ["d"])
        .hyperedge("e4", ["a"], ["d"])
        .build()
        .unwrap()
}

/// `n` hyperedges; `h_i` has input `v_i` and every other vertex as output.
pub fn one_in_rest_out(n: usize) -> ChemicalHypergraph {
    let vs = names("v", n);
    let mut b = HypergraphBuilder::new(vs.clone());
    for i in 0..n {
        let outs: Vec<String> = vs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, v)| v.clone()).collect();
        b = b.hyperedge(&format!("h{}", i + 1), [vs[i].clone()], outs);
    }
    b.build().unwrap()
}

/// Every built-in instance by name.
pub fn named() -> Vec<(&'static str, ChemicalHypergraph)> {
    vec![
        ("single-hyperedge-catalyst", single_hyperedge_catalyst()),
        ("two-hyperedge-chain", two_hyperedge_chain()),
        ("closed-triple", closed_triple()),
        ("source-sink", source_sink()),
        ("branching-no-closed-system", branching_no_closed_system()),
        ("bipartite-two-block", bipartite_two_block()),
        ("bipartite-four-vertex", bipartite_four_vertex()),
        ("star-k13", star_k13()),
        ("cycle-k22", cycle_k22()),
    ]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExampleRow {
    pub instance: String,
    pub quantity: String,
    pub expected: String,
    pub computed: String,
    pub delta: f64,
    /// `true` when the comparison is exact rather than within [`TABLE_TOL`].
    pub exact: bool,
    pub pass: bool,
}

struct Table(Vec<ExampleRow>);

impl Table {
    fn approx(&mut self, instance: &str, quantity: &str, expected: f64, computed: f64) {
        let delta = (expected - computed).abs();
        self.0.push(ExampleRow {
            instance: instance.into(),
            quantity: quantity.into(),
            expected: format!("{expected:.10}"),
            computed: format!("{computed:.10}"),
            delta,
            exact: false,
            pass: delta <= TABLE_TOL,
        });
    }

    fn exact<T: PartialEq + std::fmt::Display + ToPrimitive>(&mut self, instance: &str, quantity: &str, expected: T, computed: T) {
        let delta = match (expected.to_f64(), computed.to_f64()) {
            (Some(a), Some(b)) => (a - b).abs(),
            _ => f64::NAN,
        };
        self.0.push(ExampleRow {
            instance: instance.into(),
            quantity: quantity.into(),
            pass: expected == computed,
            expected: expected.to_string(),
            computed: computed.to_string(),
            delta,
            exact: true,
        });
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn closed_count(g: &ChemicalHypergraph) -> usize {
    enumerate_closed_systems(g, crate::structure::DEFAULT_CAP).expect("catalog instances are small").len()
}

/// Expected-versus-computed rows for every built-in instance.
pub fn examples_table() -> Result<Vec<ExampleRow>, SpectralError> {
    let mut t = Table(Vec::new());
    let r = 0.5f64.sqrt();

    let g = bipartite_four_vertex();
    let name = "bipartite-four-vertex";
    let h = spectrum(&g, Operator::Hyperedge)?;
    let v = spectrum(&g, Operator::Vertex)?;
    t.approx(name, "mu1^H", 2.0 + r, h.eigenvalues[0]);
    t.approx(name, "mu2^H", 2.0 - r, h.eigenvalues[1]);
    t.approx(name, "mu1^V", 2.0 + r, v.eigenvalues[0]);
    let hp = g.h_prime().unwrap();
    t.exact(name, "h'", q(13, 5), hp.clone());
    t.exact(name, "mu1 > h'", 1u8, (h.eigenvalues[0] > hp.to_f64().unwrap()) as u8);
    t.exact(name, "m_H", 0usize, h.zero_multiplicity);
    t.exact(name, "m_V", 2usize, v.zero_multiplicity);

    let g = branching_no_closed_system();
    let name = "branching-no-closed-system";
    let (m_v, m_h) = zero_multiplicities(&g);
    t.exact(name, "m_H", 1usize, m_h);
    t.exact(name, "m_V", 2usize, m_v);
    t.exact(name, "closed systems", 0usize, closed_count(&g));

    for (n, k, m) in [(3, 3, 1), (3, 2, 1), (4, 4, 4), (4, 2, 3), (5, 3, 2)] {
        let g = single_hyperedge(n, k, m);
        let entry = laplacian_hyperedge(&g).entries[(0, 0)].clone();
        let name = format!("single-hyperedge(N={n},k={k},m={m})");
        t.exact(&name, "mu^H", q((2 * n - k - m) as i64, 1), entry);
    }

    let g = single_hyperedge_catalyst();
    let name = "single-hyperedge-catalyst";
    let v = spectrum(&g, Operator::Vertex)?;
    t.approx(name, "mu1^V", 2.0, v.eigenvalues[0]);
    t.exact(name, "m_V", 2usize, v.zero_multiplicity);

    let g = two_hyperedge_chain();
    let (m_v, m_h) = zero_multiplicities(&g);
    t.exact("two-hyperedge-chain", "components", 1usize, g.connected_components().len());
    t.exact("two-hyperedge-chain", "m_H", 0usize, m_h);
    t.exact("two-hyperedge-chain", "m_V", 3usize, m_v);

    for (name, g) in [("closed-triple", closed_triple()), ("source-sink", source_sink())] {
        t.exact(name, "closed systems", 1usize, closed_count(&g));
        t.exact(name, "m_H", 1usize, zero_multiplicities(&g).1);
    }

    let g = bipartite_two_block();
    let name = "bipartite-two-block";
    t.exact(name, "bipartite", 1u8, g.bipartition().is_bipartite() as u8);
    let hp = g.h_prime().unwrap();
    t.exact(name, "h'", q(4, 1), hp.clone());
    let mu1 = spectrum(&g, Operator::Vertex)?.eigenvalues[0];
    t.exact(name, "mu1 >= h'", 1u8, (mu1 >= hp.to_f64().unwrap() - TABLE_TOL) as u8);

    let star = spectrum(&star_k13(), Operator::Vertex)?;
    let cyc = spectrum(&cycle_k22(), Operator::Vertex)?;
    for (i, expected) in [2.0, 1.0, 1.0, 0.0].into_iter().enumerate() {
        t.approx("star-k13", &format!("mu{}^V", i + 1), expected, star.eigenvalues[i]);
        t.approx("cycle-k22", &format!("mu{}^V", i + 1), expected, cyc.eigenvalues[i]);
    }
    t.exact("star-k13", "m_H", 0usize, zero_multiplicities(&star_k13()).1);
    t.exact("cycle-k22", "m_H", 1usize, zero_multiplicities(&cycle_k22()).1);

    for n in 3..=5 {
        t.exact(&format!("one-in-rest-out(N={n})"), "m_V", 0usize, zero_multiplicities(&one_in_rest_out(n)).0);
    }

    Ok(t.0)
}
