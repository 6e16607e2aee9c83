//! Seeded random hypergraphs from a few structural families.
//!
//! Output is a pure function of `(N, M, seed, family)`; the generator is
//! ChaCha8 so results are stable across platforms. Vertices are named
//! `v1..vN` and hyperedges `h1..hM`.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::document::{HyperedgeDocument, HypergraphDocument};
use crate::model::ChemicalHypergraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Independent random nonempty input and output sets; catalysts allowed.
    Generic,
    /// A random two-block split; each hyperedge takes its inputs from one
    /// block and its outputs from the other.
    Bipartite,
    /// `|inputs| = |outputs|` in every hyperedge.
    Balanced,
    /// `inputs = outputs` in every hyperedge.
    AllCatalyst,
    /// One input and one distinct output per hyperedge.
    Graph,
}

impl Family {
    pub const ALL: [Family; 5] =
        [Family::Generic, Family::Bipartite, Family::Balanced, Family::AllCatalyst, Family::Graph];

    fn min_vertices(self) -> usize {
        match self {
            Family::Bipartite | Family::Graph => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Generic => "generic",
            Family::Bipartite => "bipartite",
            Family::Balanced => "balanced",
            Family::AllCatalyst => "all-catalyst",
            Family::Graph => "graph",
        })
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.to_string() == s)
            .ok_or_else(|| format!("unknown family `{s}` (expected one of generic, bipartite, balanced, all-catalyst, graph)"))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RandomError {
    #[error("family {family} needs at least {needed} vertices, got {vertices}")]
    InfeasibleFamily { family: Family, vertices: usize, needed: usize },
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn nonempty_subset<R: Rng>(rng: &mut R, pool: &[usize]) -> Vec<usize> {
    let k = rng.gen_range(1..=pool.len());
    sized_subset(rng, pool, k)
}

fn sized_subset<R: Rng>(rng: &mut R, pool: &[usize], k: usize) -> Vec<usize> {
    let mut out: Vec<usize> = sample(rng, pool.len(), k).into_iter().map(|i| pool[i]).collect();
    out.sort_unstable();
    out
}

pub fn generate_document(
    vertices: usize,
    hyperedges: usize,
    seed: u64,
    family: Family,
) -> Result<HypergraphDocument, RandomError> {
    let needed = family.min_vertices();
    if vertices < needed {
        return Err(RandomError::InfeasibleFamily { family, vertices, needed });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all: Vec<usize> = (0..vertices).collect();

    let (block_a, block_b) = if family == Family::Bipartite {
        let mut shuffled = all.clone();
        shuffled.shuffle(&mut rng);
        let cut = rng.gen_range(1..vertices);
        let (a, b) = shuffled.split_at(cut);
        (a.to_vec(), b.to_vec())
    } else {
        (Vec::new(), Vec::new())
    };

    let vnames = names("v", vertices);
    let mut docs = Vec::with_capacity(hyperedges);
    for id in names("h", hyperedges) {
        let (inputs, outputs) = match family {
            Family::Generic => (nonempty_subset(&mut rng, &all), nonempty_subset(&mut rng, &all)),
            Family::Bipartite => {
                let a = nonempty_subset(&mut rng, &block_a);
                let b = nonempty_subset(&mut rng, &block_b);
                if rng.gen_bool(0.5) {
                    (a, b)
                } else {
                    (b, a)
                }
            }
            Family::Balanced => {
                let k = rng.gen_range(1..=vertices);
                (sized_subset(&mut rng, &all, k), sized_subset(&mut rng, &all, k))
            }
            Family::AllCatalyst => {
                let s = nonempty_subset(&mut rng, &all);
                (s.clone(), s)
            }
            Family::Graph => {
                let pair = sized_subset(&mut rng, &all, 2);
                if rng.gen_bool(0.5) {
                    (vec![pair[0]], vec![pair[1]])
                } else {
                    (vec![pair[1]], vec![pair[0]])
                }
            }
        };
        let pick = |side: Vec<usize>| side.into_iter().map(|v| vnames[v].clone()).collect();
        docs.push(HyperedgeDocument { id, inputs: pick(inputs), outputs: pick(outputs) });
    }
    Ok(HypergraphDocument { vertices: vnames.clone(), hyperedges: docs })
}

pub fn generate(
    vertices: usize,
    hyperedges: usize,
    seed: u64,
    family: Family,
) -> Result<ChemicalHypergraph, RandomError> {
    let doc = generate_document(vertices, hyperedges, seed, family)?;
    Ok(ChemicalHypergraph::validate(&doc).expect("generated documents are valid by construction"))
}

/// Random connected oriented graph: a random spanning tree on `vertices`
/// nodes plus `extra` random edges (parallel edges allowed).
pub fn connected_graph(vertices: usize, extra: usize, seed: u64) -> ChemicalHypergraph {
    assert!(vertices >= 2, "a connected graph with an edge needs two vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vnames = names("v", vertices);
    let mut order: Vec<usize> = (0..vertices).collect();
    order.shuffle(&mut rng);
    let mut pairs = Vec::new();
    for i in 1..vertices {
        let j = rng.gen_range(0..i);
        pairs.push((order[i], order[j]));
    }
    for _ in 0..extra {
        let p = sample(&mut rng, vertices, 2);
        pairs.push((p.index(0), p.index(1)));
    }
    let hyperedges = pairs
        .into_iter()
        .enumerate()
        .map(|(k, (a, b))| {
            let (a, b) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
            HyperedgeDocument {
                id: format!("e{}", k + 1),
                inputs: vec![vnames[a].clone()],
                outputs: vec![vnames[b].clone()],
            }
        })
        .collect();
    ChemicalHypergraph::validate(&HypergraphDocument { vertices: vnames, hyperedges })
        .expect("generated graphs are valid by construction")
}
