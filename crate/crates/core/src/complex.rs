//! Finite simplicial complexes on the vertex set `1..=n`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A non-empty set of vertices, stored sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Simplex(Vec<u32>);

impl Simplex {
    pub fn new(mut vertices: Vec<u32>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Simplex(vertices)
    }

    pub fn vertex(v: u32) -> Self {
        Simplex(vec![v])
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    /// Number of vertices minus one.
    pub fn rank(&self) -> usize {
        self.0.len() - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min_vertex(&self) -> u32 {
        self.0[0]
    }

    pub fn max_vertex(&self) -> u32 {
        *self.0.last().expect("simplex is non-empty")
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|&v| other.contains(v))
    }

    pub fn without(&self, v: u32) -> Simplex {
        Simplex(self.0.iter().copied().filter(|&w| w != v).collect())
    }

    pub fn with(&self, v: u32) -> Simplex {
        let mut vs = self.0.clone();
        vs.push(v);
        Simplex::new(vs)
    }

    /// Faces `τ_1, .., τ_k` where `τ_j` drops the `j`-th smallest vertex.
    pub fn boundary(&self) -> Vec<Simplex> {
        if self.0.len() < 2 {
            return Vec::new();
        }
        self.0.iter().map(|&v| self.without(v)).collect()
    }

    /// The least maximal face: drop the smallest vertex.
    pub fn bar(&self) -> Result<Simplex> {
        if self.0.len() < 2 {
            return Err(Error::RankZero(self.to_string()));
        }
        Ok(Simplex(self.0[1..].to_vec()))
    }

    /// Parses the comma-joined key form, e.g. `"1,2"`.
    pub fn parse(key: &str) -> Result<Self> {
        let vs: std::result::Result<Vec<u32>, _> = key.split(',').map(|s| s.trim().parse::<u32>()).collect();
        match vs {
            Ok(vs) if !vs.is_empty() => Ok(Simplex::new(vs)),
            _ => Err(Error::Input(format!("bad simplex key {key:?}"))),
        }
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Simplex {
    /// Comma-joined form used as a key in input and report files.
    pub fn key(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        parts.join(",")
    }
}

impl From<&[u32]> for Simplex {
    fn from(vs: &[u32]) -> Self {
        Simplex::new(vs.to_vec())
    }
}

impl<const N: usize> From<[u32; N]> for Simplex {
    fn from(vs: [u32; N]) -> Self {
        Simplex::new(vs.to_vec())
    }
}

/// A connected, downward closed family of simplices containing every vertex.
///
/// Simplices are listed by rank, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: u32,
    simplices: Vec<Simplex>,
    index: HashMap<Simplex, usize>,
}

impl SimplicialComplex {
    /// Downward closure of the declared simplices on vertices `1..=n`.
    pub fn build(n: u32, declared: &[Vec<u32>]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyComplex);
        }
        let mut all = BTreeSet::new();
        for v in 1..=n {
            all.insert(Simplex::vertex(v));
        }
        for d in declared {
            if d.is_empty() {
                return Err(Error::Input("empty simplex declared".into()));
            }
            if let Some(&v) = d.iter().find(|&&v| v == 0 || v > n) {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            let s = Simplex::new(d.clone());
            if s.len() > 24 {
                return Err(Error::Input(format!("simplex {s} is too large")));
            }
            let vs = s.vertices();
            for mask in 1u32..(1 << vs.len()) {
                let face: Vec<u32> = (0..vs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| vs[i]).collect();
                all.insert(Simplex(face));
            }
        }
        let c = Self::from_set(n, all);
        if !c.is_connected() {
            return Err(Error::NotConnected);
        }
        Ok(c)
    }

    fn from_set(n: u32, set: BTreeSet<Simplex>) -> Self {
        let mut simplices: Vec<Simplex> = set.into_iter().collect();
        simplices.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        let index = simplices.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        SimplicialComplex { n, simplices, index }
    }

    /// The full simplex on `1..=n`.
    pub fn full(n: u32) -> Result<Self> {
        Self::build(n, &[(1..=n).collect()])
    }

    fn is_connected(&self) -> bool {
        let mut parent: Vec<u32> = (0..=self.n).collect();
        fn find(p: &mut [u32], x: u32) -> u32 {
            let mut r = x;
            while p[r as usize] != r {
                r = p[r as usize];
            }
            p[x as usize] = r;
            r
        }
        for e in self.of_rank(1) {
            let (a, b) = (find(&mut parent, e.min_vertex()), find(&mut parent, e.max_vertex()));
            parent[a as usize] = b;
        }
        let root = find(&mut parent, 1);
        (1..=self.n).all(|v| find(&mut parent, v) == root)
    }

    pub fn n_vertices(&self) -> u32 {
        self.n
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.simplices.last().map_or(0, Simplex::rank)
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index.contains_key(s)
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn require(&self, s: &Simplex) -> Result<usize> {
        self.index_of(s).ok_or_else(|| Error::UnknownSimplex(s.to_string()))
    }

    pub fn of_rank(&self, k: usize) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter().filter(move |s| s.rank() == k)
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Simplex> {
        self.of_rank(0)
    }

    pub fn edges(&self) -> impl Iterator<Item = &Simplex> {
        self.of_rank(1)
    }

    pub fn triangles(&self) -> impl Iterator<Item = &Simplex> {
        self.of_rank(2)
    }

    /// All covering pairs `(σ, τ)` with `σ` a facet of `τ`.
    pub fn cover_pairs(&self) -> Vec<(Simplex, Simplex)> {
        let mut out = Vec::new();
        for t in &self.simplices {
            for s in t.boundary() {
                out.push((s, t.clone()));
            }
        }
        out
    }

    /// All pairs `σ ⊆ τ`, including `σ = τ`.
    pub fn face_pairs(&self) -> Vec<(Simplex, Simplex)> {
        let mut out = Vec::new();
        for t in &self.simplices {
            for s in &self.simplices {
                if s.len() <= t.len() && s.is_face_of(t) {
                    out.push((s.clone(), t.clone()));
                }
            }
        }
        out
    }

    /// Simplices strictly containing `s`.
    pub fn cofaces(&self, s: &Simplex) -> Vec<Simplex> {
        self.simplices
            .iter()
            .filter(|t| t.len() > s.len() && s.is_face_of(t))
            .cloned()
            .collect()
    }

    /// Every subset of at most `k` vertices added as a simplex.
    pub fn extend_with_small_subsets(&self, k: usize) -> SimplicialComplex {
        let mut set: BTreeSet<Simplex> = self.simplices.iter().cloned().collect();
        let verts: Vec<u32> = (1..=self.n).collect();
        let mut stack: Vec<Vec<u32>> = vec![Vec::new()];
        while let Some(cur) = stack.pop() {
            if !cur.is_empty() {
                set.insert(Simplex(cur.clone()));
            }
            if cur.len() < k {
                let start = cur.last().map_or(1, |&v| v + 1);
                for &v in verts.iter().filter(|&&v| v >= start) {
                    let mut next = cur.clone();
                    next.push(v);
                    stack.push(next);
                }
            }
        }
        Self::from_set(self.n, set)
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.n <= other.n && self.simplices.iter().all(|s| other.contains(s))
    }

    /// True for the complex of the full simplex on `1..=3`.
    pub fn is_triangle(&self) -> bool {
        self.n == 3 && self.simplices.len() == 7
    }

    /// True for the complex `{1}, {2}, {1,2}`.
    pub fn is_edge(&self) -> bool {
        self.n == 2 && self.simplices.len() == 3
    }
}
