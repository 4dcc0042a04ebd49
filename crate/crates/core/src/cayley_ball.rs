//! Finite balls in the Cayley graph of a graph product.
//!
//! Vertices are canonical words, so deduplication is exact. Vertices are
//! numbered breadth-first; inside a layer by (parent index, generator
//! order), which makes every export byte-stable.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::word_engine::{CanonicalWord, Presentation, Syllable};

pub const DEFAULT_MAX_BALL: usize = 1_000_000;

/// Edge colours, indexed by vertex order.
pub const PALETTE: [&str; 8] = [
    "red",
    "blue",
    "darkgreen",
    "orange",
    "purple",
    "brown",
    "magenta",
    "gray40",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BallError {
    #[error("ball of radius {radius} would exceed {cap} vertices (projected {projected})")]
    BallTooLarge {
        radius: u32,
        cap: usize,
        projected: usize,
    },
}

/// The symmetric generating set `S`, the union of the vertex generating
/// sets, as single syllables in vertex order.
pub fn generating_set(p: &Presentation) -> Vec<Syllable> {
    (0..p.vertex_count())
        .flat_map(|v| p.genset(v).iter().map(move |&x| Syllable::new(v, x)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BallEdge {
    pub a: usize,
    pub b: usize,
    /// `vertex[a] * generator = vertex[b]`, with `a < b`.
    pub generator: Syllable,
}

#[derive(Debug, Clone)]
pub struct CayleyBall {
    presentation: Presentation,
    radius: u32,
    vertices: Vec<CanonicalWord>,
    distance: Vec<u32>,
    index: HashMap<CanonicalWord, usize>,
    edges: Vec<BallEdge>,
    neighbours: Vec<Vec<usize>>,
    saturated: bool,
}

impl CayleyBall {
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn vertices(&self) -> &[CanonicalWord] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn distance(&self, i: usize) -> u32 {
        self.distance[i]
    }

    pub fn distances(&self) -> &[u32] {
        &self.distance
    }

    pub fn index_of(&self, w: &CanonicalWord) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Edges sorted by endpoint pair.
    pub fn edges(&self) -> &[BallEdge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbours(&self, i: usize) -> &[usize] {
        &self.neighbours[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbours[i].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.neighbours[a].binary_search(&b).is_ok()
    }

    /// True when no element lies outside the ball, i.e. the group is finite
    /// and the ball is all of it.
    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    /// Number of vertices at each distance `0..=radius`.
    pub fn sphere_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.radius as usize + 1];
        for &d in &self.distance {
            sizes[d as usize] += 1;
        }
        sizes
    }

    /// `distance -> (degree -> count)`.
    pub fn degree_profile(&self) -> BTreeMap<u32, BTreeMap<usize, usize>> {
        let mut profile: BTreeMap<u32, BTreeMap<usize, usize>> = BTreeMap::new();
        for i in 0..self.vertices.len() {
            *profile
                .entry(self.distance[i])
                .or_default()
                .entry(self.degree(i))
                .or_insert(0) += 1;
        }
        profile
    }

    pub fn summary(&self) -> BallSummary {
        BallSummary {
            radius: self.radius,
            vertex_count: self.vertex_count(),
            vertex_counts_per_distance: self.sphere_sizes(),
            degree_profile: self
                .degree_profile()
                .into_iter()
                .map(|(d, degs)| {
                    (
                        d.to_string(),
                        degs.into_iter().map(|(k, c)| (k.to_string(), c)).collect(),
                    )
                })
                .collect(),
            edge_count: self.edge_count(),
            generator_count: generating_set(&self.presentation).len(),
            saturated: self.saturated,
        }
    }

    pub fn label(&self, i: usize) -> String {
        if self.vertices[i].is_identity() {
            "e".to_string()
        } else {
            self.presentation.format_word(&self.vertices[i])
        }
    }

    /// Undirected DOT rendering. With `color_by_vertex_group` every edge is
    /// coloured by the vertex group of its generator, using [`PALETTE`].
    pub fn to_dot(&self, color_by_vertex_group: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph cayley {{");
        for i in 0..self.vertices.len() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", escape(&self.label(i)));
        }
        for e in &self.edges {
            if color_by_vertex_group {
                let color = PALETTE[e.generator.vertex % PALETTE.len()];
                let _ = writeln!(out, "  n{} -- n{} [color={color}];", e.a, e.b);
            } else {
                let _ = writeln!(out, "  n{} -- n{};", e.a, e.b);
            }
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Ball report with string keys so it serializes as plain JSON objects.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BallSummary {
    pub radius: u32,
    pub vertex_count: usize,
    pub vertex_counts_per_distance: Vec<usize>,
    pub degree_profile: BTreeMap<String, BTreeMap<String, usize>>,
    pub edge_count: usize,
    pub generator_count: usize,
    pub saturated: bool,
}

pub fn ball(p: &Presentation, radius: u32) -> Result<CayleyBall, BallError> {
    ball_with_cap(p, radius, DEFAULT_MAX_BALL)
}

/// Breadth-first ball of the given radius around the identity.
///
/// Successors of each layer are computed in parallel and merged in layer
/// order, so the result matches a sequential run exactly.
pub fn ball_with_cap(p: &Presentation, radius: u32, cap: usize) -> Result<CayleyBall, BallError> {
    let gens = generating_set(p);
    let mut vertices = vec![p.identity()];
    let mut distance = vec![0u32];
    let mut index = HashMap::from([(p.identity(), 0usize)]);
    let mut edge_map: BTreeMap<(usize, usize), Syllable> = BTreeMap::new();
    let mut layer_start = 0;
    let mut previous_layer = 1usize;
    let mut saturated = false;

    for d in 0..=radius {
        let layer_end = vertices.len();
        if layer_start == layer_end {
            break;
        }
        let layer = layer_end - layer_start;
        if d < radius {
            let projected = project(vertices.len(), layer, previous_layer, gens.len());
            if projected > cap {
                return Err(BallError::BallTooLarge {
                    radius,
                    cap,
                    projected,
                });
            }
        }
        let successors: Vec<Vec<CanonicalWord>> = vertices[layer_start..layer_end]
            .par_iter()
            .map(|w| {
                gens.iter()
                    .map(|&s| p.multiply_syllable(w, s).expect("generators belong to p"))
                    .collect()
            })
            .collect();
        let mut grew = false;
        let mut escaped = false;
        for (offset, succ) in successors.into_iter().enumerate() {
            let from = layer_start + offset;
            for (w, &s) in succ.into_iter().zip(&gens) {
                let to = match index.get(&w) {
                    Some(&to) => to,
                    None if d < radius => {
                        if vertices.len() >= cap {
                            return Err(BallError::BallTooLarge {
                                radius,
                                cap,
                                projected: vertices.len() + 1,
                            });
                        }
                        let to = vertices.len();
                        index.insert(w.clone(), to);
                        vertices.push(w);
                        distance.push(d + 1);
                        grew = true;
                        to
                    }
                    None => {
                        escaped = true;
                        continue;
                    }
                };
                let key = (from.min(to), from.max(to));
                let generator = if from < to {
                    s
                } else {
                    Syllable::new(s.vertex, p.group(s.vertex).inv(s.element))
                };
                edge_map.entry(key).or_insert(generator);
            }
        }
        if (d < radius && !grew) || (d == radius && !escaped) {
            saturated = true;
            break;
        }
        previous_layer = layer;
        layer_start = layer_end;
    }

    let mut neighbours = vec![Vec::new(); vertices.len()];
    for &(a, b) in edge_map.keys() {
        neighbours[a].push(b);
        neighbours[b].push(a);
    }
    for n in &mut neighbours {
        n.sort_unstable();
    }
    let edges = edge_map
        .into_iter()
        .map(|((a, b), generator)| BallEdge { a, b, generator })
        .collect();
    Ok(CayleyBall {
        presentation: p.clone(),
        radius,
        vertices,
        distance,
        index,
        edges,
        neighbours,
        saturated,
    })
}

/// Vertex count after the next layer, extrapolating the last growth ratio.
fn project(total: usize, layer: usize, previous_layer: usize, generators: usize) -> usize {
    let next = if total == 1 {
        generators
    } else {
        (layer as f64 * layer as f64 / previous_layer as f64).ceil() as usize
    };
    total.saturating_add(next)
}
