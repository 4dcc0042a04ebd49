//! The commutation graph of a graph product.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),
    #[error("edge endpoint {0:?} is not a vertex")]
    UnknownEndpoint(String),
    #[error("loop edge at {0:?}")]
    LoopEdge(String),
}

/// A finite simplicial graph. The construction order of the vertices is the
/// total order used for canonical words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialGraph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adjacency: Vec<Vec<bool>>,
    edges: BTreeSet<(usize, usize)>,
}

impl SimplicialGraph {
    pub fn new<V, E, S>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = S>,
        E: IntoIterator<Item = (S, S)>,
        S: Into<String>,
    {
        let mut names = Vec::new();
        let mut index = HashMap::new();
        for v in vertices {
            let v = v.into();
            if index.contains_key(&v) {
                return Err(GraphError::DuplicateVertex(v));
            }
            index.insert(v.clone(), names.len());
            names.push(v);
        }
        let n = names.len();
        let mut adjacency = vec![vec![false; n]; n];
        let mut edge_set = BTreeSet::new();
        for (a, b) in edges {
            let (a, b) = (a.into(), b.into());
            let i = *index
                .get(&a)
                .ok_or_else(|| GraphError::UnknownEndpoint(a.clone()))?;
            let j = *index
                .get(&b)
                .ok_or_else(|| GraphError::UnknownEndpoint(b.clone()))?;
            if i == j {
                return Err(GraphError::LoopEdge(a));
            }
            adjacency[i][j] = true;
            adjacency[j][i] = true;
            edge_set.insert((i.min(j), i.max(j)));
        }
        Ok(SimplicialGraph {
            names,
            index,
            adjacency,
            edges: edge_set,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    #[inline]
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a][b]
    }

    pub fn adjacency(&self) -> &[Vec<bool>] {
        &self.adjacency
    }

    /// Edges as index pairs `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        self.non_adjacent_pair(vertices).is_none()
    }

    /// First pair of distinct, non-adjacent vertices in `vertices`.
    pub fn non_adjacent_pair(&self, vertices: &[usize]) -> Option<(usize, usize)> {
        vertices.iter().enumerate().find_map(|(k, &a)| {
            vertices[k + 1..]
                .iter()
                .find(|&&b| a != b && !self.adjacency[a][b])
                .map(|&b| (a, b))
        })
    }

    /// All maximal cliques as sorted index sets, ordered by size and then by
    /// vertex names.
    pub fn maximal_clique_indices(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let all: Vec<usize> = (0..self.vertex_count()).collect();
        self.bron_kerbosch(&mut Vec::new(), all, Vec::new(), &mut out);
        for c in &mut out {
            c.sort_unstable();
        }
        out.sort_by(|a, b| {
            a.len().cmp(&b.len()).then_with(|| {
                let an: Vec<&str> = a.iter().map(|&v| self.name(v)).collect();
                let bn: Vec<&str> = b.iter().map(|&v| self.name(v)).collect();
                an.cmp(&bn)
            })
        });
        out
    }

    /// All maximal cliques as vertex-name sets.
    pub fn maximal_cliques(&self) -> Vec<Vec<String>> {
        self.maximal_clique_indices()
            .into_iter()
            .map(|c| c.into_iter().map(|v| self.names[v].clone()).collect())
            .collect()
    }

    fn bron_kerbosch(
        &self,
        r: &mut Vec<usize>,
        p: Vec<usize>,
        x: Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() {
            if x.is_empty() {
                out.push(r.clone());
            }
            return;
        }
        // pivot with the most neighbours in p
        let pivot = p
            .iter()
            .chain(&x)
            .copied()
            .max_by_key(|&u| p.iter().filter(|&&v| self.adjacency[u][v]).count())
            .expect("p is nonempty");
        let mut p = p;
        let mut x = x;
        let candidates: Vec<usize> = p
            .iter()
            .copied()
            .filter(|&v| !self.adjacency[pivot][v])
            .collect();
        for v in candidates {
            let np = p
                .iter()
                .copied()
                .filter(|&w| self.adjacency[v][w])
                .collect();
            let nx = x
                .iter()
                .copied()
                .filter(|&w| self.adjacency[v][w])
                .collect();
            r.push(v);
            self.bron_kerbosch(r, np, nx, out);
            r.pop();
            p.retain(|&w| w != v);
            x.push(v);
        }
    }
}
