//! Cayley-graph isomorphisms of graph products.
//!
//! A family of identity-preserving Cayley-graph isomorphisms
//! `f_v: Cay(G_v, S_v) -> Cay(H_v, T_v)` lifts syllable-wise to a bijection
//! between the graph products that preserves adjacency in
//! `Cay(G, S) -> Cay(H, T)`. The lift is defined once on canonical words;
//! [`verify_iso_on_ball`] re-checks adjacency mechanically.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::cayley_ball::{ball_with_cap, generating_set, BallError, CayleyBall, DEFAULT_MAX_BALL};
use crate::finite_group::{FiniteGroup, GroupId, DEFAULT_ISO_ORDER_BOUND};
use crate::word_engine::{CanonicalWord, Presentation, Syllable, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("map is not a bijection between groups of orders {domain} and {codomain}")]
    NotABijection { domain: usize, codomain: usize },
    #[error("not a Cayley-graph isomorphism: edge {{{from}, {to}}} maps to a non-edge")]
    NotAGraphIso { from: usize, to: usize },
    #[error("generating sets have sizes {domain} and {codomain}")]
    DegreeMismatch { domain: usize, codomain: usize },
    #[error("source and target use different graphs")]
    GraphMismatch,
    #[error("no Cayley-graph isomorphism exists at vertex {0:?}")]
    NoVertexIso(String),
    #[error("family entry for unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("vertex {vertex:?}: {source}")]
    AtVertex {
        vertex: String,
        source: Box<IsoError>,
    },
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Ball(#[from] BallError),
}

/// An identity-preserving Cayley-graph isomorphism between two finite
/// groups, as images by element index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyMap {
    pub domain: GroupId,
    pub codomain: GroupId,
    pub mapping: Vec<usize>,
}

impl CayleyMap {
    pub fn apply(&self, x: usize) -> usize {
        self.mapping[x]
    }

    pub fn inverse(&self) -> CayleyMap {
        let mut inv = vec![0; self.mapping.len()];
        for (x, &y) in self.mapping.iter().enumerate() {
            inv[y] = x;
        }
        CayleyMap {
            domain: self.codomain,
            codomain: self.domain,
            mapping: inv,
        }
    }
}

/// A [`CayleyMap`] attached to a vertex of the common graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexIso {
    pub vertex: String,
    pub map: CayleyMap,
}

fn check_bijection(h: &[usize], g: &FiniteGroup, target: &FiniteGroup) -> Result<(), IsoError> {
    let err = IsoError::NotABijection {
        domain: g.order(),
        codomain: target.order(),
    };
    if h.len() != g.order() || g.order() != target.order() {
        return Err(err);
    }
    let mut hit = vec![false; target.order()];
    for &y in h {
        if y >= target.order() || std::mem::replace(&mut hit[y], true) {
            return Err(err);
        }
    }
    Ok(())
}

/// Checks that `h` is a Cayley-graph isomorphism `Cay(G,S) -> Cay(H,T)`.
/// A bijection that sends every edge to an edge is an isomorphism once
/// `|S| = |T|`, since both graphs then have the same number of edges.
pub fn check_cayley_iso(
    h: &[usize],
    g: &FiniteGroup,
    s: &[usize],
    target: &FiniteGroup,
    t: &[usize],
) -> Result<(), IsoError> {
    check_bijection(h, g, target)?;
    if s.len() != t.len() {
        return Err(IsoError::DegreeMismatch {
            domain: s.len(),
            codomain: t.len(),
        });
    }
    let mut in_t = vec![false; target.order()];
    for &x in t {
        in_t[x] = true;
    }
    for x in 0..g.order() {
        for &gen in s {
            let y = g.mul(x, gen);
            if !in_t[target.mul(target.inv(h[x]), h[y])] {
                return Err(IsoError::NotAGraphIso { from: x, to: y });
            }
        }
    }
    Ok(())
}

/// Turns a Cayley-graph isomorphism into one fixing the identity by
/// composing with left translation: `f(g) = h(e)^-1 h(g)`. The result maps
/// `S` onto `T`.
pub fn normalize_iso(
    h: &[usize],
    g: &FiniteGroup,
    s: &[usize],
    target: &FiniteGroup,
    t: &[usize],
) -> Result<CayleyMap, IsoError> {
    check_cayley_iso(h, g, s, target, t)?;
    let shift = target.inv(h[g.identity()]);
    Ok(CayleyMap {
        domain: g.id(),
        codomain: target.id(),
        mapping: h.iter().map(|&y| target.mul(shift, y)).collect(),
    })
}

/// Backtracking search for an isomorphism `Cay(G,S) -> Cay(H,T)` fixing the
/// identity. Candidates are pruned by distance from the identity and by
/// adjacency to everything already placed.
pub fn find_vertex_iso(
    g: &FiniteGroup,
    s: &[usize],
    target: &FiniteGroup,
    t: &[usize],
) -> Option<CayleyMap> {
    if g.order() != target.order() || s.len() != t.len() {
        return None;
    }
    if g.order() > DEFAULT_ISO_ORDER_BOUND {
        log::warn!(
            "Cayley-graph isomorphism search on order {} exceeds bound {DEFAULT_ISO_ORDER_BOUND}",
            g.order()
        );
    }
    let dist_g: Vec<u32> = g
        .cayley_distances(s)
        .into_iter()
        .map(|d| d.unwrap_or(u32::MAX))
        .collect();
    let dist_h: Vec<u32> = target
        .cayley_distances(t)
        .into_iter()
        .map(|d| d.unwrap_or(u32::MAX))
        .collect();
    let mut sorted_g = dist_g.clone();
    let mut sorted_h = dist_h.clone();
    sorted_g.sort_unstable();
    sorted_h.sort_unstable();
    if sorted_g != sorted_h {
        return None;
    }
    let adj_g = adjacency(g, s);
    let adj_h = adjacency(target, t);

    // breadth-first placement order so each new vertex has a placed neighbour
    let mut order = Vec::with_capacity(g.order());
    let mut seen = vec![false; g.order()];
    let mut queue = VecDeque::from([g.identity()]);
    seen[g.identity()] = true;
    while let Some(x) = queue.pop_front() {
        order.push(x);
        for &gen in s {
            let y = g.mul(x, gen);
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    let mut map = vec![usize::MAX; g.order()];
    let mut used = vec![false; target.order()];
    map[g.identity()] = target.identity();
    used[target.identity()] = true;

    struct Ctx<'a> {
        adj_g: &'a [Vec<bool>],
        adj_h: &'a [Vec<bool>],
        dist_g: &'a [u32],
        dist_h: &'a [u32],
    }

    fn place(
        depth: usize,
        order: &[usize],
        map: &mut [usize],
        used: &mut [bool],
        ctx: &Ctx,
    ) -> bool {
        let Some(&x) = order.get(depth) else {
            return true;
        };
        let Ctx {
            adj_g,
            adj_h,
            dist_g,
            dist_h,
        } = *ctx;
        for y in 0..used.len() {
            if used[y] || dist_h[y] != dist_g[x] {
                continue;
            }
            let consistent = order[..depth]
                .iter()
                .all(|&z| adj_g[x][z] == adj_h[y][map[z]]);
            if !consistent {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if place(depth + 1, order, map, used, ctx) {
                return true;
            }
            used[y] = false;
            map[x] = usize::MAX;
        }
        false
    }

    let ctx = Ctx {
        adj_g: &adj_g,
        adj_h: &adj_h,
        dist_g: &dist_g,
        dist_h: &dist_h,
    };
    if !place(1, &order, &mut map, &mut used, &ctx) {
        return None;
    }
    normalize_iso(&map, g, s, target, t).ok()
}

fn adjacency(g: &FiniteGroup, s: &[usize]) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; g.order()]; g.order()];
    let edges = (0..g.order()).flat_map(|x| s.iter().map(move |&gen| (x, g.mul(x, gen))));
    for (x, y) in edges {
        adj[x][y] = true;
        adj[y][x] = true;
    }
    adj
}

/// The transported map between two graph products over the same graph.
#[derive(Debug, Clone)]
pub struct ProductIso {
    source: Presentation,
    target: Presentation,
    family: Vec<VertexIso>,
}

impl ProductIso {
    /// Assembles a product map without validating the family. Used to build
    /// deliberately broken maps for the verifier.
    pub fn from_parts_unchecked(
        source: Presentation,
        target: Presentation,
        family: Vec<VertexIso>,
    ) -> Self {
        ProductIso {
            source,
            target,
            family,
        }
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn target(&self) -> &Presentation {
        &self.target
    }

    pub fn family(&self) -> &[VertexIso] {
        &self.family
    }

    /// The map in the other direction, built from the inverse vertex maps.
    pub fn inverse(&self) -> ProductIso {
        ProductIso {
            source: self.target.clone(),
            target: self.source.clone(),
            family: self
                .family
                .iter()
                .map(|f| VertexIso {
                    vertex: f.vertex.clone(),
                    map: f.map.inverse(),
                })
                .collect(),
        }
    }

    pub fn map_syllable(&self, s: Syllable) -> Syllable {
        Syllable::new(s.vertex, self.family[s.vertex].map.apply(s.element))
    }

    /// Applies the vertex maps syllable by syllable and canonicalizes over
    /// the target.
    pub fn lift(&self, w: &CanonicalWord) -> Result<CanonicalWord, IsoError> {
        if w.presentation_id() != self.source.id() {
            return Err(WordError::PresentationMismatch.into());
        }
        let mapped = w
            .syllables()
            .iter()
            .map(|&s| self.map_syllable(s))
            .collect();
        Ok(self.target.canonical_from(mapped)?)
    }
}

/// Same as [`ProductIso::lift`].
pub fn lift_bijection(iso: &ProductIso, w: &CanonicalWord) -> Result<CanonicalWord, IsoError> {
    iso.lift(w)
}

fn same_graph(a: &Presentation, b: &Presentation) -> bool {
    a.graph().names() == b.graph().names() && a.graph().edges().eq(b.graph().edges())
}

/// Builds the product map. Vertices listed in `family` use the given image
/// arrays (normalized to fix the identity); all others get an isomorphism
/// found by search.
pub fn build_product_iso(
    source: &Presentation,
    target: &Presentation,
    family: &BTreeMap<String, Vec<usize>>,
) -> Result<ProductIso, IsoError> {
    if !same_graph(source, target) {
        return Err(IsoError::GraphMismatch);
    }
    if let Some(name) = family.keys().find(|k| source.graph().index_of(k).is_none()) {
        return Err(IsoError::UnknownVertex(name.clone()));
    }
    let mut out = Vec::with_capacity(source.vertex_count());
    for v in 0..source.vertex_count() {
        let name = source.graph().name(v).to_string();
        let (g, s) = (source.group(v), source.genset(v));
        let (h, t) = (target.group(v), target.genset(v));
        let map = match family.get(&name) {
            Some(images) => normalize_iso(images, g, s, h, t).map_err(|e| IsoError::AtVertex {
                vertex: name.clone(),
                source: Box::new(e),
            })?,
            None => {
                find_vertex_iso(g, s, h, t).ok_or_else(|| IsoError::NoVertexIso(name.clone()))?
            }
        };
        out.push(VertexIso { vertex: name, map });
    }
    Ok(ProductIso {
        source: source.clone(),
        target: target.clone(),
        family: out,
    })
}

/// Kind of a verification failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureKind {
    /// Image lies outside the target ball or at another distance.
    OutsideSphere,
    /// Two vertices share an image.
    NotInjective,
    /// A source edge maps to a non-edge.
    ForwardAdjacency,
    /// A target edge pulls back to a non-edge.
    BackwardAdjacency,
    /// A generator maps outside the target generating set.
    GeneratorImage,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub kind: FailureKind,
    /// Source-side witness, as word text (`e` for the identity).
    pub from: String,
    /// Target-side witness.
    pub to: String,
    #[serde(skip)]
    order_key: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub radius: u32,
    pub vertices_checked: usize,
    pub edges_checked: usize,
    pub bijective: bool,
    pub forward_adjacency_ok: bool,
    pub backward_adjacency_ok: bool,
    pub genset_mapped: bool,
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.bijective
            && self.forward_adjacency_ok
            && self.backward_adjacency_ok
            && self.genset_mapped
            && self.failures.is_empty()
    }
}

pub fn verify_iso_on_ball(iso: &ProductIso, radius: u32) -> Result<VerificationReport, IsoError> {
    verify_iso_on_ball_with_cap(iso, radius, DEFAULT_MAX_BALL)
}

/// Builds both balls and checks, sphere by sphere, that the lift is a
/// bijection, that edges map to edges in both directions, and that `S` maps
/// onto `T`.
pub fn verify_iso_on_ball_with_cap(
    iso: &ProductIso,
    radius: u32,
    cap: usize,
) -> Result<VerificationReport, IsoError> {
    let src = ball_with_cap(&iso.source, radius, cap)?;
    let dst = ball_with_cap(&iso.target, radius, cap)?;
    let inverse = iso.inverse();
    let mut failures = Vec::new();

    let forward_images = images(iso, &src, &dst, FailureKind::OutsideSphere, &mut failures)?;
    let backward_images = images(
        &inverse,
        &dst,
        &src,
        FailureKind::OutsideSphere,
        &mut failures,
    )?;

    let mut bijective = src.vertex_count() == dst.vertex_count()
        && failures
            .iter()
            .all(|f| f.kind != FailureKind::OutsideSphere);
    let mut owner: Vec<Option<usize>> = vec![None; dst.vertex_count()];
    for (i, img) in forward_images.iter().enumerate() {
        let Some(j) = *img else { continue };
        if let Some(prev) = owner[j] {
            bijective = false;
            failures.push(Failure {
                kind: FailureKind::NotInjective,
                from: format!("{} / {}", src.label(prev), src.label(i)),
                to: dst.label(j),
                order_key: (i, j),
            });
        } else {
            owner[j] = Some(i);
        }
    }
    // f' o f = id on the ball
    for (i, img) in forward_images.iter().enumerate() {
        if let Some(j) = *img {
            if backward_images[j] != Some(i) {
                bijective = false;
                failures.push(Failure {
                    kind: FailureKind::NotInjective,
                    from: src.label(i),
                    to: dst.label(j),
                    order_key: (i, j),
                });
            }
        }
    }

    let forward_adjacency_ok = check_edges(
        &src,
        &dst,
        &forward_images,
        FailureKind::ForwardAdjacency,
        &mut failures,
    );
    let backward_adjacency_ok = check_edges(
        &dst,
        &src,
        &backward_images,
        FailureKind::BackwardAdjacency,
        &mut failures,
    );

    let s = generating_set(&iso.source);
    let t: BTreeSet<Syllable> = generating_set(&iso.target).into_iter().collect();
    let mut mapped = BTreeSet::new();
    for (k, &gen) in s.iter().enumerate() {
        let img = iso.map_syllable(gen);
        if !t.contains(&img) {
            failures.push(Failure {
                kind: FailureKind::GeneratorImage,
                from: iso.source.format_syllables(&[gen]),
                to: iso.target.format_syllables(&[img]),
                order_key: (k, 0),
            });
        }
        mapped.insert(img);
    }
    let genset_mapped = mapped == t;

    failures.sort_by_key(|f| (f.order_key, f.kind));
    Ok(VerificationReport {
        radius,
        vertices_checked: src.vertex_count(),
        edges_checked: src.edge_count() + dst.edge_count(),
        bijective,
        forward_adjacency_ok,
        backward_adjacency_ok,
        genset_mapped,
        failures,
    })
}

/// Image index of every vertex of `from` inside `to`, recording vertices
/// whose image is missing or lies on another sphere.
fn images(
    iso: &ProductIso,
    from: &CayleyBall,
    to: &CayleyBall,
    kind: FailureKind,
    failures: &mut Vec<Failure>,
) -> Result<Vec<Option<usize>>, IsoError> {
    let mut out = Vec::with_capacity(from.vertex_count());
    for (i, w) in from.vertices().iter().enumerate() {
        let img = iso.lift(w)?;
        match to.index_of(&img) {
            Some(j) if to.distance(j) == from.distance(i) => out.push(Some(j)),
            _ => {
                failures.push(Failure {
                    kind,
                    from: from.label(i),
                    to: if img.is_identity() {
                        "e".to_string()
                    } else {
                        to.presentation().format_word(&img)
                    },
                    order_key: (i, usize::MAX),
                });
                out.push(None);
            }
        }
    }
    Ok(out)
}

fn check_edges(
    from: &CayleyBall,
    to: &CayleyBall,
    images: &[Option<usize>],
    kind: FailureKind,
    failures: &mut Vec<Failure>,
) -> bool {
    let mut ok = true;
    for e in from.edges() {
        let good = match (images[e.a], images[e.b]) {
            (Some(x), Some(y)) => to.has_edge(x, y),
            _ => false,
        };
        if !good {
            ok = false;
            let show = |img: Option<usize>| img.map_or("?".to_string(), |j| to.label(j));
            failures.push(Failure {
                kind,
                from: format!("{{{}, {}}}", from.label(e.a), from.label(e.b)),
                to: format!("{{{}, {}}}", show(images[e.a]), show(images[e.b])),
                order_key: (e.a, e.b),
            });
        }
    }
    ok
}
