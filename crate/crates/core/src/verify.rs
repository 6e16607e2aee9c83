//! Structural and spectral identities checked on a single instance.
//!
//! Every check records the two values it compared. Exact identities are
//! evaluated over the rationals; spectral ones use the tolerances below.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::document::HypergraphDocument;
use crate::matrix::Matrix;
use crate::model::{Bipartiteness, ChemicalHypergraph};
use crate::operators::{
    adjointness_check, boundary_apply, coboundary_apply, hyperedge_inner, incidence_matrix,
    laplacian_hyperedge, laplacian_hyperedge_apply, laplacian_vertex, laplacian_vertex_apply,
    vertex_inner,
};
use crate::spectra::{
    eigenpairs, exact_rank, incidence_kernel, incidence_transpose_kernel, rayleigh_hyperedge,
    rayleigh_vertex, spectrum, zero_multiplicities, Operator, Spectrum, ZERO_TOL,
};
use crate::structure::{enumerate_closed_systems, independence_rank};
use crate::Rational;

/// Lower bound on eigenvalues accepted as nonnegative.
pub const NONNEG_TOL: f64 = 1e-9;
/// Agreement of the nonzero spectra of the two Laplacians.
pub const SHARED_SPECTRUM_TOL: f64 = 1e-8;
/// `‖L^H(δf) − μ·δf‖` for a vertex eigenpair `(μ, f)`.
pub const TRANSFER_TOL: f64 = 1e-7;
/// Spectra before and after a vertex flip.
pub const FLIP_TOL: f64 = 1e-9;
/// Rayleigh quotients against the extreme eigenvalues.
pub const RAYLEIGH_TOL: f64 = 1e-9;
/// `‖L^V 1‖` on balanced hypergraphs.
pub const CONSTANT_RESIDUAL_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub lhs: f64,
    pub rhs: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn new(name: &str, passed: bool, lhs: f64, rhs: f64) -> Self {
        Check { name: name.to_string(), passed, lhs, rhs, detail: None }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Limit on `M` for closed-system enumeration.
    pub closed_system_cap: usize,
    /// Random trials for adjointness, quadratic forms and Rayleigh bounds.
    pub trials: usize,
    pub seed: u64,
    /// Flip invariance is checked for every vertex when `N` is at most this.
    pub flip_limit: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            closed_system_cap: crate::structure::DEFAULT_CAP,
            trials: 20,
            seed: 0,
            flip_limit: 64,
        }
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn random_rationals<R: Rng>(rng: &mut R, n: usize) -> Vec<Rational> {
    (0..n).map(|_| q(rng.gen_range(-20..=20), rng.gen_range(1..=9))).collect()
}

fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Largest elementwise deviation of two equally long lists, or `∞`.
pub fn max_deviation(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// `L^V` for a graph built from `f(v) − (1/deg v) Σ_{edges v–w} f(w)`,
/// without the incidence matrix. Rows of isolated vertices are zero.
pub fn graph_laplacian_direct(g: &ChemicalHypergraph) -> Matrix<Rational> {
    assert!(g.is_graph(), "direct graph Laplacian needs one input and one output per edge");
    let n = g.vertex_count();
    let deg = g.degrees();
    let mut m: Matrix<Rational> = Matrix::zeros(n, n);
    for v in 0..n {
        if deg[v] > 0 {
            m[(v, v)] = q(1, 1);
        }
    }
    for h in g.hyperedges() {
        let (a, b) = (h.inputs()[0], h.outputs()[0]);
        m[(a, b)] -= q(1, deg[a] as i64);
        m[(b, a)] -= q(1, deg[b] as i64);
    }
    m
}

/// True when some component with at least one hyperedge is bipartite.
/// For graphs this is exactly when the largest vertex eigenvalue is 2.
pub fn has_bipartite_component_with_edge(g: &ChemicalHypergraph) -> bool {
    let doc = g.to_document();
    g.connected_components().into_iter().filter(|c| !c.hyperedges.is_empty()).any(|c| {
        let sub = HypergraphDocument {
            vertices: c.vertices.iter().map(|&v| doc.vertices[v].clone()).collect(),
            hyperedges: c.hyperedges.iter().map(|&j| doc.hyperedges[j].clone()).collect(),
        };
        ChemicalHypergraph::validate_relaxed(&sub)
            .map(|s| s.bipartition().is_bipartite())
            .unwrap_or(false)
    })
}

/// Checks a bipartiteness result against its own definition.
pub fn certificate_holds(g: &ChemicalHypergraph, result: &Bipartiteness) -> bool {
    match result {
        Bipartiteness::Partition { first, second } => {
            let mut block = vec![None; g.vertex_count()];
            for &v in first {
                block[v] = Some(false);
            }
            for &v in second {
                if block[v].is_some() {
                    return false;
                }
                block[v] = Some(true);
            }
            if block.iter().any(Option::is_none) {
                return false;
            }
            g.hyperedges().iter().all(|h| {
                let side = |vs: &[usize]| -> Option<Option<bool>> {
                    let mut it = vs.iter().map(|&v| block[v].unwrap());
                    match it.next() {
                        None => Some(None),
                        Some(b) => it.all(|x| x == b).then_some(Some(b)),
                    }
                };
                match (side(h.inputs()), side(h.outputs())) {
                    (Some(Some(a)), Some(Some(b))) => a != b,
                    (Some(_), Some(_)) => true,
                    _ => false,
                }
            })
        }
        Bipartiteness::Conflict { vertex, chain } => {
            let doc = g.to_document();
            let sub = HypergraphDocument {
                vertices: doc.vertices.clone(),
                hyperedges: chain.iter().map(|&j| doc.hyperedges[j].clone()).collect(),
            };
            let touches = chain.iter().any(|&j| g.hyperedges()[j].contains(*vertex));
            touches
                && ChemicalHypergraph::validate_relaxed(&sub)
                    .map(|s| !s.bipartition().is_bipartite())
                    .unwrap_or(false)
        }
    }
}

/// Runs the full invariant suite. Fails only on numerical solver errors;
/// violated invariants are reported as failed checks.
pub fn verify(g: &ChemicalHypergraph, opts: &VerifyOptions) -> Result<Vec<Check>, crate::spectra::SpectralError> {
    let mut checks = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let (n, m) = (g.vertex_count(), g.hyperedge_count());

    // degrees and components
    let deg_sum: usize = g.degrees().iter().sum();
    let size_sum: usize = g.hyperedges().iter().map(|h| h.size()).sum();
    checks.push(Check::new("degree-sum", deg_sum == size_sum, deg_sum as f64, size_sum as f64));
    let comps = g.connected_components();
    let mut covered: Vec<usize> = comps.iter().flat_map(|c| c.vertices.clone()).collect();
    covered.sort_unstable();
    let partition_ok = covered == (0..n).collect::<Vec<_>>()
        && comps.iter().all(|c| {
            c.hyperedges.iter().all(|&j| g.hyperedges()[j].members().iter().all(|v| c.vertices.contains(v)))
        });
    checks.push(Check::new("components-partition", partition_ok, covered.len() as f64, n as f64));

    let bip = g.bipartition();
    checks.push(Check::new("bipartition-certificate", certificate_holds(g, &bip), bip.is_bipartite() as u8 as f64, 1.0));

    // exact multiplicities
    let (m_v, m_h) = zero_multiplicities(g);
    let lhs = m_v as i64 - m_h as i64;
    let rhs = n as i64 - m as i64;
    checks.push(Check::new("multiplicity-identity", lhs == rhs, lhs as f64, rhs as f64));

    let ker_h = incidence_kernel(g);
    let ker_v = incidence_transpose_kernel(g);
    let inc = incidence_matrix(g).to_rational();
    let ker_h_exact = ker_h.basis.iter().all(|x| inc.mul_vec_exact(x).iter().all(Zero::is_zero));
    checks.push(
        Check::new("kernel-hyperedge", ker_h_exact && ker_h.dimension() == m_h, ker_h.dimension() as f64, m_h as f64)
            .with_detail("basis of ker I annihilated exactly; dimension equals m_H"),
    );
    let ker_v_exact = ker_v.basis.iter().all(|f| boundary_apply(g, f).unwrap().iter().all(Zero::is_zero));
    checks.push(
        Check::new("kernel-vertex", ker_v_exact && ker_v.dimension() == m_v, ker_v.dimension() as f64, m_v as f64)
            .with_detail("every basis vector of ker I^T balances inputs against outputs"),
    );

    // exact operator identities
    let lh = laplacian_hyperedge(g);
    checks.push(Check::new("hyperedge-laplacian-symmetric", lh.entries.is_symmetric(), 0.0, 0.0));
    let lv = laplacian_vertex(g);
    let mut adj_ok = true;
    let mut quad_v_ok = true;
    let mut quad_h_ok = true;
    let (mut last_a, mut last_b) = (0.0, 0.0);
    for _ in 0..opts.trials {
        let f = random_rationals(&mut rng, n);
        let gamma = random_rationals(&mut rng, m);
        let (a, b) = adjointness_check(g, &f, &gamma).unwrap();
        adj_ok &= a == b;
        (last_a, last_b) = (to_f64(&a), to_f64(&b));

        let df = boundary_apply(g, &f).unwrap();
        let energy = df.iter().fold(Rational::zero(), |acc, x| acc + x * x);
        let lvf = lv.entries.mul_vec_exact(&f);
        let form = vertex_inner(g, &lvf, &f).unwrap();
        quad_v_ok &= form == energy && form >= Rational::zero();

        let dsg = coboundary_apply(g, &gamma).unwrap();
        let energy_h = vertex_inner(g, &dsg, &dsg).unwrap();
        let form_h = hyperedge_inner(g, &lh.entries.mul_vec_exact(&gamma), &gamma).unwrap();
        quad_h_ok &= form_h == energy_h && form_h >= Rational::zero();
    }
    checks.push(Check::new("adjointness", adj_ok, last_a, last_b));
    checks.push(Check::new("quadratic-form-vertex", quad_v_ok, 0.0, 0.0));
    checks.push(Check::new("quadratic-form-hyperedge", quad_h_ok, 0.0, 0.0));

    // spectra
    let vpairs = eigenpairs(g, Operator::Vertex)?;
    let hspec = spectrum(g, Operator::Hyperedge)?;
    let vspec = &vpairs.spectrum;
    spectral_checks(&mut checks, vspec, &hspec);

    let lv_f = lv.entries.to_f64();
    let mut similarity = 0.0f64;
    let mut transfer = 0.0f64;
    for k in 0..n {
        let f = vpairs.function(k);
        let mu = vspec.eigenvalues[k];
        let r: Vec<f64> = lv_f.mul_vec(&f).iter().zip(&f).map(|(a, b)| a - mu * b).collect();
        similarity = similarity.max(norm(&r));
        if mu > ZERO_TOL {
            let df = boundary_apply(g, &f).unwrap();
            let l = laplacian_hyperedge_apply(g, &df).unwrap();
            let r: Vec<f64> = l.iter().zip(&df).map(|(a, b)| a - mu * b).collect();
            transfer = transfer.max(norm(&r));
        }
    }
    checks.push(Check::new("symmetrized-similarity", similarity <= 1e-9, similarity, 1e-9));
    checks.push(Check::new("eigenfunction-transfer", transfer <= TRANSFER_TOL, transfer, TRANSFER_TOL));

    // Rayleigh bounds
    let mut ray_ok = true;
    let mut worst = 0.0f64;
    if let (Some(top), Some(bottom)) = (vspec.largest(), vspec.smallest()) {
        for _ in 0..opts.trials {
            let f: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            if let Ok(r) = rayleigh_vertex(g, &f) {
                ray_ok &= r <= top + RAYLEIGH_TOL && r >= bottom - RAYLEIGH_TOL;
                worst = worst.max(r - top);
            }
        }
    }
    if let (Some(top), Some(bottom)) = (hspec.largest(), hspec.smallest()) {
        for _ in 0..opts.trials {
            let gamma: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
            if let Ok(r) = rayleigh_hyperedge(g, &gamma) {
                ray_ok &= r <= top + RAYLEIGH_TOL && r >= bottom - RAYLEIGH_TOL;
                worst = worst.max(r - top);
            }
        }
    }
    checks.push(Check::new("rayleigh-bounds", ray_ok, worst, RAYLEIGH_TOL));

    // largest eigenvalue zero iff everything is a catalyst iff 𝓘 = 0
    let mu1 = vspec.largest().unwrap_or(0.0);
    let inc_zero = incidence_matrix(g).entries().iter().all(|&x| x == 0);
    let all_cat = g.all_vertices_always_catalysts();
    checks.push(Check::new(
        "top-eigenvalue-zero-iff-all-catalysts",
        (mu1 == 0.0) == all_cat && all_cat == inc_zero,
        mu1,
        all_cat as u8 as f64,
    ));

    if g.is_graph() {
        let direct = graph_laplacian_direct(g);
        checks.push(Check::new("graph-reduction", direct == lv.entries, 0.0, 0.0));
        checks.push(Check::new("graph-top-eigenvalue-at-most-2", mu1 <= 2.0 + 1e-9, mu1, 2.0));
        let expect_two = has_bipartite_component_with_edge(g);
        let is_two = (mu1 - 2.0).abs() <= 1e-8;
        checks.push(
            Check::new("graph-top-eigenvalue-2-iff-bipartite", expect_two == is_two, mu1, 2.0)
                .with_detail(if expect_two { "has a bipartite component" } else { "no bipartite component" }),
        );
    }

    if bip.is_bipartite() && m > 0 {
        let hp = to_f64(&g.h_prime().expect("m > 0"));
        checks.push(Check::new("bipartite-lower-bound", mu1 >= hp - 1e-9, mu1, hp));
    }

    if g.is_balanced() && n > 0 {
        let ones = vec![1.0; n];
        let residual = norm(&laplacian_vertex_apply(g, &ones).unwrap());
        let has_zero = vspec.eigenvalues.contains(&0.0);
        checks.push(Check::new(
            "balanced-constant-kernel",
            has_zero && residual <= CONSTANT_RESIDUAL_TOL,
            residual,
            CONSTANT_RESIDUAL_TOL,
        ));
    }

    // catalyst removal keeps the incidence rank
    let rank = exact_rank(incidence_matrix(g).entries());
    let mut removal_ok = true;
    for (j, h) in g.hyperedges().iter().enumerate() {
        let cats = h.catalysts();
        let Some(&c) = cats.first() else { continue };
        if h.members().len() == 1 {
            continue;
        }
        let mut doc = g.to_document();
        let name = g.vertex_name(c).to_string();
        doc.hyperedges[j].inputs.retain(|x| *x != name);
        doc.hyperedges[j].outputs.retain(|x| *x != name);
        if let Ok(reduced) = ChemicalHypergraph::validate_relaxed(&doc) {
            removal_ok &= exact_rank(incidence_matrix(&reduced).entries()) == rank;
        }
    }
    checks.push(Check::new("catalyst-removal-rank", removal_ok, rank as f64, rank as f64));

    // closed systems
    match enumerate_closed_systems(g, opts.closed_system_cap) {
        Ok(systems) => {
            let inc = incidence_matrix(g);
            let in_kernel = systems.iter().all(|s| {
                let x = s.indicator(m);
                (0..n).all(|v| (0..m).map(|j| inc.entries()[(v, j)] * x[j]).sum::<i32>() == 0)
            });
            checks.push(Check::new("closed-systems-in-kernel", in_kernel, systems.len() as f64, systems.len() as f64));
            let l = independence_rank(&systems, m);
            checks.push(Check::new("closed-system-bound", l <= m_h, l as f64, m_h as f64));
            if m == 1 {
                let all_cat = g.hyperedges()[0].inputs() == g.hyperedges()[0].outputs();
                checks.push(Check::new(
                    "single-hyperedge-closed-iff-all-catalysts",
                    (systems.len() == 1) == all_cat,
                    systems.len() as f64,
                    all_cat as u8 as f64,
                ));
            }
        }
        Err(e) => {
            checks.push(Check::new("closed-system-bound", true, f64::NAN, m_h as f64).with_detail(e.to_string()));
        }
    }

    // flip invariance
    if n <= opts.flip_limit {
        let mut worst = 0.0f64;
        for v in g.vertices() {
            let flipped = g.flip_vertex(v.as_str()).expect("vertex exists");
            let fv = spectrum(&flipped, Operator::Vertex)?;
            let fh = spectrum(&flipped, Operator::Hyperedge)?;
            worst = worst
                .max(max_deviation(&fv.eigenvalues, &vspec.eigenvalues))
                .max(max_deviation(&fh.eigenvalues, &hspec.eigenvalues));
        }
        checks.push(Check::new("flip-invariance", worst <= FLIP_TOL, worst, FLIP_TOL));
    }

    Ok(checks)
}

/// Identity checks that only need the two spectra.
pub fn spectral_checks(checks: &mut Vec<Check>, vspec: &Spectrum, hspec: &Spectrum) {
    let vmin = vspec.smallest().unwrap_or(0.0);
    let hmin = hspec.smallest().unwrap_or(0.0);
    checks.push(Check::new("nonnegative-vertex-spectrum", vmin >= -NONNEG_TOL, vmin, -NONNEG_TOL));
    checks.push(Check::new("nonnegative-hyperedge-spectrum", hmin >= -NONNEG_TOL, hmin, -NONNEG_TOL));
    let (a, b) = (vspec.nonzero(), hspec.nonzero());
    checks.push(Check::new("shared-nonzero-count", a.len() == b.len(), a.len() as f64, b.len() as f64));
    let dev = max_deviation(&a, &b);
    checks.push(Check::new("shared-nonzero-spectra", dev <= SHARED_SPECTRUM_TOL, dev, SHARED_SPECTRUM_TOL));
}
