//! Chemical hypergraphs: validation, degrees, connectivity, bipartiteness,
//! the `h′` statistic and the vertex-role flip.
//!
//! Vertices and hyperedges are addressed by their position in declaration
//! order. Input and output sets are stored sorted by vertex index, so two
//! hypergraphs that declare the same sets in a different order compare equal.
//!
//! The stored `(inputs, outputs)` pair of a hyperedge *is* its `+`
//! orientation. The opposite orientation is never materialized.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::document::{HyperedgeDocument, HypergraphDocument};
use crate::unionfind::{ParityUnionFind, Union};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("hyperedge `{0}` has no inputs")]
    EmptyInputSet(String),
    #[error("hyperedge `{0}` has no outputs")]
    EmptyOutputSet(String),
    #[error("hyperedge `{0}` has neither inputs nor outputs")]
    EmptyHyperedge(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("vertex `{vertex}` listed twice on one side of hyperedge `{hyperedge}`")]
    DuplicateMember { hyperedge: String, vertex: String },
    #[error("invalid id {0:?}: ids must be nonempty and contain no whitespace")]
    InvalidId(String),
    #[error("hypergraph has no hyperedges")]
    NoHyperedges,
}

/// Vertex label: nonempty, no whitespace.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(token: impl Into<String>) -> Result<Self, ModelError> {
        let token = token.into();
        if token.is_empty() || token.chars().any(char::is_whitespace) {
            return Err(ModelError::InvalidId(token));
        }
        Ok(VertexId(token))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// One oriented hyperedge. Members are vertex indices, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperedge {
    id: String,
    inputs: Vec<usize>,
    outputs: Vec<usize>,
}

impl Hyperedge {
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn inputs(&self) -> &[usize] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[usize] {
        &self.outputs
    }

    pub fn is_input(&self, v: usize) -> bool {
        self.inputs.binary_search(&v).is_ok()
    }

    pub fn is_output(&self, v: usize) -> bool {
        self.outputs.binary_search(&v).is_ok()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.is_input(v) || self.is_output(v)
    }

    /// Vertices that are both input and output.
    pub fn catalysts(&self) -> Vec<usize> {
        self.inputs.iter().copied().filter(|&v| self.is_output(v)).collect()
    }

    /// `inputs ∪ outputs`, sorted.
    pub fn members(&self) -> Vec<usize> {
        let mut m: Vec<usize> = self.inputs.iter().chain(&self.outputs).copied().collect();
        m.sort_unstable();
        m.dedup();
        m
    }

    /// `|h|`, catalysts counted once.
    pub fn size(&self) -> usize {
        self.inputs.len() + self.outputs.len() - self.catalysts().len()
    }

    /// Sign of `v` in this hyperedge: +1 input only, −1 output only, 0 otherwise.
    pub fn sign(&self, v: usize) -> i32 {
        match (self.is_input(v), self.is_output(v)) {
            (true, false) => 1,
            (false, true) => -1,
            _ => 0,
        }
    }
}

/// A validated chemical hypergraph.
#[derive(Clone, Debug)]
pub struct ChemicalHypergraph {
    vertices: Vec<VertexId>,
    index: HashMap<String, usize>,
    hyperedges: Vec<Hyperedge>,
}

impl PartialEq for ChemicalHypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.hyperedges == other.hyperedges
    }
}

impl Eq for ChemicalHypergraph {}

/// A block of the connectivity partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<usize>,
    pub hyperedges: Vec<usize>,
}

/// Result of the bipartiteness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bipartiteness {
    /// `V = first ⊔ second`; every hyperedge has its inputs in one block and
    /// its outputs in the other.
    Partition { first: Vec<usize>, second: Vec<usize> },
    /// The hyperedges in `chain` force `vertex` into both blocks.
    Conflict { vertex: usize, chain: Vec<usize> },
}

impl Bipartiteness {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartiteness::Partition { .. })
    }
}

impl ChemicalHypergraph {
    /// Builds a hypergraph from its document form, enforcing every model
    /// invariant.
    pub fn validate(doc: &HypergraphDocument) -> Result<Self, ModelError> {
        Self::build(doc, false)
    }

    /// Like [`validate`](Self::validate), but tolerates hyperedges with one
    /// empty side. Such hyperedges only arise from [`flip_vertex`]
    /// (`Self::flip_vertex`); use this to reload a flipped document.
    pub fn validate_relaxed(doc: &HypergraphDocument) -> Result<Self, ModelError> {
        Self::build(doc, true)
    }

    fn build(doc: &HypergraphDocument, relaxed: bool) -> Result<Self, ModelError> {
        let mut vertices = Vec::with_capacity(doc.vertices.len());
        let mut index = HashMap::with_capacity(doc.vertices.len());
        for (i, raw) in doc.vertices.iter().enumerate() {
            let id = VertexId::new(raw.clone())?;
            if index.insert(raw.clone(), i).is_some() {
                return Err(ModelError::DuplicateId(raw.clone()));
            }
            vertices.push(id);
        }

        let mut seen = HashMap::new();
        let mut hyperedges = Vec::with_capacity(doc.hyperedges.len());
        for raw in &doc.hyperedges {
            if raw.id.is_empty() || raw.id.chars().any(char::is_whitespace) {
                return Err(ModelError::InvalidId(raw.id.clone()));
            }
            if seen.insert(raw.id.clone(), ()).is_some() {
                return Err(ModelError::DuplicateId(raw.id.clone()));
            }
            let resolve = |side: &[String]| -> Result<Vec<usize>, ModelError> {
                let mut out = Vec::with_capacity(side.len());
                for name in side {
                    let &v =
                        index.get(name).ok_or_else(|| ModelError::UnknownVertex(name.clone()))?;
                    out.push(v);
                }
                out.sort_unstable();
                if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
                    return Err(ModelError::DuplicateMember {
                        hyperedge: raw.id.clone(),
                        vertex: doc.vertices[w[0]].clone(),
                    });
                }
                Ok(out)
            };
            let inputs = resolve(&raw.inputs)?;
            let outputs = resolve(&raw.outputs)?;
            match (inputs.is_empty(), outputs.is_empty()) {
                (true, true) => return Err(ModelError::EmptyHyperedge(raw.id.clone())),
                (true, false) if !relaxed => {
                    return Err(ModelError::EmptyInputSet(raw.id.clone()))
                }
                (false, true) if !relaxed => {
                    return Err(ModelError::EmptyOutputSet(raw.id.clone()))
                }
                _ => {}
            }
            hyperedges.push(Hyperedge { id: raw.id.clone(), inputs, outputs });
        }
        Ok(ChemicalHypergraph { vertices, index, hyperedges })
    }

    pub fn to_document(&self) -> HypergraphDocument {
        let names = |side: &[usize]| -> Vec<String> {
            side.iter().map(|&v| self.vertices[v].0.clone()).collect()
        };
        HypergraphDocument {
            vertices: self.vertices.iter().map(|v| v.0.clone()).collect(),
            hyperedges: self
                .hyperedges
                .iter()
                .map(|h| HyperedgeDocument {
                    id: h.id.clone(),
                    inputs: names(&h.inputs),
                    outputs: names(&h.outputs),
                })
                .collect(),
        }
    }

    /// Number of vertices, `N`.
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Number of hyperedges, `M`.
    pub fn hyperedge_count(&self) -> usize {
        self.hyperedges.len()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn hyperedges(&self) -> &[Hyperedge] {
        &self.hyperedges
    }

    pub fn vertex_index(&self, v: &str) -> Result<usize, ModelError> {
        self.index.get(v).copied().ok_or_else(|| ModelError::UnknownVertex(v.to_string()))
    }

    pub fn hyperedge_index(&self, id: &str) -> Option<usize> {
        self.hyperedges.iter().position(|h| h.id == id)
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        self.vertices[v].as_str()
    }

    /// Number of hyperedges containing `v`; a catalyst counts once.
    pub fn degree(&self, v: &str) -> Result<usize, ModelError> {
        let i = self.vertex_index(v)?;
        Ok(self.hyperedges.iter().filter(|h| h.contains(i)).count())
    }

    /// All vertex degrees in declaration order.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for h in &self.hyperedges {
            for v in h.members() {
                deg[v] += 1;
            }
        }
        deg
    }

    /// Degrees with isolated vertices weighted 1, i.e. the diagonal of the
    /// vertex inner product.
    pub fn weights(&self) -> Vec<usize> {
        self.degrees().into_iter().map(|d| d.max(1)).collect()
    }

    /// True when every hyperedge has both sides nonempty.
    pub fn is_strict(&self) -> bool {
        self.hyperedges.iter().all(|h| !h.inputs.is_empty() && !h.outputs.is_empty())
    }

    /// Every hyperedge has exactly one input and one distinct output.
    pub fn is_graph(&self) -> bool {
        self.hyperedges
            .iter()
            .all(|h| h.inputs.len() == 1 && h.outputs.len() == 1 && h.inputs[0] != h.outputs[0])
    }

    /// `|inputs(h)| = |outputs(h)|` for every hyperedge.
    pub fn is_balanced(&self) -> bool {
        self.hyperedges.iter().all(|h| h.inputs.len() == h.outputs.len())
    }

    /// Every vertex is a catalyst in every hyperedge that contains it.
    pub fn all_vertices_always_catalysts(&self) -> bool {
        self.hyperedges.iter().all(|h| h.inputs == h.outputs)
    }

    pub fn connected_components(&self) -> Vec<Component> {
        let n = self.vertices.len();
        let mut uf = ParityUnionFind::new(n);
        for h in &self.hyperedges {
            let m = h.members();
            for w in m.windows(2) {
                uf.union(w[0], w[1], false);
            }
        }
        let mut slot: HashMap<usize, usize> = HashMap::new();
        let mut comps: Vec<Component> = Vec::new();
        for v in 0..n {
            let root = uf.find(v).0;
            let k = *slot.entry(root).or_insert_with(|| {
                comps.push(Component { vertices: Vec::new(), hyperedges: Vec::new() });
                comps.len() - 1
            });
            comps[k].vertices.push(v);
        }
        for (j, h) in self.hyperedges.iter().enumerate() {
            let first = h.members()[0];
            let root = uf.find(first).0;
            comps[slot[&root]].hyperedges.push(j);
        }
        comps
    }

    /// Two-block partition with inputs and outputs of every hyperedge on
    /// opposite sides, or a witness that none exists.
    ///
    /// Within each component the lexicographically least vertex id is put in
    /// the first block.
    pub fn bipartition(&self) -> Bipartiteness {
        let n = self.vertices.len();
        let mut uf = ParityUnionFind::new(n);
        // accepted merges form a spanning forest; used to explain conflicts
        let mut forest: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];

        for (j, h) in self.hyperedges.iter().enumerate() {
            if let Some(&c) = h.catalysts().first() {
                return Bipartiteness::Conflict { vertex: c, chain: vec![j] };
            }
            let mut constraints = Vec::new();
            if let Some(&a) = h.inputs.first() {
                constraints.extend(h.inputs[1..].iter().map(|&b| (a, b, false)));
            }
            if let Some(&a) = h.outputs.first() {
                constraints.extend(h.outputs[1..].iter().map(|&b| (a, b, false)));
            }
            if let (Some(&a), Some(&b)) = (h.inputs.first(), h.outputs.first()) {
                constraints.push((a, b, true));
            }
            for (a, b, odd) in constraints {
                match uf.union(a, b, odd) {
                    Union::Merged => {
                        forest[a].push((b, j));
                        forest[b].push((a, j));
                    }
                    Union::AlreadyConsistent => {}
                    Union::Conflict => {
                        let mut chain = forest_path(&forest, a, b);
                        if !chain.contains(&j) {
                            chain.push(j);
                        }
                        return Bipartiteness::Conflict { vertex: a, chain };
                    }
                }
            }
        }

        let mut anchor: HashMap<usize, usize> = HashMap::new();
        for v in 0..n {
            let root = uf.find(v).0;
            anchor
                .entry(root)
                .and_modify(|best| {
                    if self.vertices[v] < self.vertices[*best] {
                        *best = v;
                    }
                })
                .or_insert(v);
        }
        let (mut first, mut second) = (Vec::new(), Vec::new());
        for v in 0..n {
            let (root, pv) = uf.find(v);
            let (_, pa) = uf.find(anchor[&root]);
            if pv == pa {
                first.push(v);
            } else {
                second.push(v);
            }
        }
        Bipartiteness::Partition { first, second }
    }

    /// Exchanges the input and output membership of `v` in every hyperedge.
    ///
    /// The result may contain hyperedges with an empty side; it is not
    /// revalidated.
    pub fn flip_vertex(&self, v: &str) -> Result<ChemicalHypergraph, ModelError> {
        let i = self.vertex_index(v)?;
        let mut out = self.clone();
        for h in &mut out.hyperedges {
            let (is_in, is_out) = (h.is_input(i), h.is_output(i));
            if is_in == is_out {
                continue;
            }
            if is_in {
                h.inputs.retain(|&x| x != i);
                insert_sorted(&mut h.outputs, i);
            } else {
                h.outputs.retain(|&x| x != i);
                insert_sorted(&mut h.inputs, i);
            }
        }
        Ok(out)
    }

    /// `Σ_h |h|² / Σ_h |h|` with `|h| = |inputs ∪ outputs|`.
    pub fn h_prime(&self) -> Result<Rational, ModelError> {
        if self.hyperedges.is_empty() {
            return Err(ModelError::NoHyperedges);
        }
        let (sq, lin) = self.hyperedges.iter().fold((0u64, 0u64), |(sq, lin), h| {
            let s = h.size() as u64;
            (sq + s * s, lin + s)
        });
        Ok(Rational::new(BigInt::from(sq), BigInt::from(lin)))
    }
}

fn insert_sorted(side: &mut Vec<usize>, v: usize) {
    if let Err(pos) = side.binary_search(&v) {
        side.insert(pos, v);
    }
}

// Hyperedge labels along the unique forest path from `from` to `to`.
fn forest_path(forest: &[Vec<(usize, usize)>], from: usize, to: usize) -> Vec<usize> {
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; forest.len()];
    let mut seen = vec![false; forest.len()];
    let mut queue = VecDeque::from([from]);
    seen[from] = true;
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for &(y, j) in &forest[x] {
            if !seen[y] {
                seen[y] = true;
                prev[y] = Some((x, j));
                queue.push_back(y);
            }
        }
    }
    let mut chain = Vec::new();
    let mut cur = to;
    while let Some((p, j)) = prev[cur] {
        if !chain.contains(&j) {
            chain.push(j);
        }
        cur = p;
    }
    chain.reverse();
    chain
}

/// Convenience constructor used by tests, the catalog and the generators.
#[derive(Clone, Debug, Default)]
pub struct HypergraphBuilder {
    doc: HypergraphDocument,
}

impl HypergraphBuilder {
    pub fn new<I, S>(vertices: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        HypergraphBuilder {
            doc: HypergraphDocument {
                vertices: vertices.into_iter().map(Into::into).collect(),
                hyperedges: Vec::new(),
            },
        }
    }

    pub fn hyperedge<I, O, S, T>(mut self, id: &str, inputs: I, outputs: O) -> Self
    where
        I: IntoIterator<Item = S>,
        O: IntoIterator<Item = T>,
        S: Into<String>,
        T: Into<String>,
    {
        self.doc.hyperedges.push(HyperedgeDocument {
            id: id.to_string(),
            inputs: inputs.into_iter().map(Into::into).collect(),
            outputs: outputs.into_iter().map(Into::into).collect(),
        });
        self
    }

    pub fn document(&self) -> &HypergraphDocument {
        &self.doc
    }

    pub fn build(self) -> Result<ChemicalHypergraph, ModelError> {
        ChemicalHypergraph::validate(&self.doc)
    }

    pub fn build_relaxed(self) -> Result<ChemicalHypergraph, ModelError> {
        ChemicalHypergraph::validate_relaxed(&self.doc)
    }
}
