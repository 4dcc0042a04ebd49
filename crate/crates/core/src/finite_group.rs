//! Finite groups given by validated multiplication tables.
//!
//! Element enumeration conventions are fixed so that serialized data stays
//! stable across runs:
//!
//! * [`FiniteGroup::cyclic`]: element `i` is the residue `i mod n`.
//! * [`FiniteGroup::symmetric`]: permutations of `{1..n}` in lexicographic
//!   order of their one-line notation; `g_i * g_j` is the permutation
//!   `x -> g_i(g_j(x))`.
//! * [`FiniteGroup::direct_product`]: row-major over the factors' index
//!   sets, the last factor varying fastest.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;
use thiserror::Error;

/// Orders above this trigger a size warning in the isomorphism search.
pub const DEFAULT_ISO_ORDER_BOUND: usize = 512;

/// Largest `n` accepted by [`FiniteGroup::symmetric`].
pub const DEFAULT_SYMMETRIC_BOUND: usize = 5;

static NEXT_GROUP_ID: AtomicU64 = AtomicU64::new(0);

/// Identity of a constructed group. Clones share it; independently
/// constructed groups never do.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupId(u64);

impl GroupId {
    fn fresh() -> Self {
        GroupId(NEXT_GROUP_ID.fetch_add(1, Ordering::Relaxed))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("element {0} is not a two-sided identity")]
    NoIdentity(usize),
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("group order must be positive")]
    ZeroOrder,
    #[error("symmetric group S_{n} exceeds the configured bound S_{bound}")]
    TooLarge { n: usize, bound: usize },
    #[error("direct product needs at least one factor")]
    EmptyFactorList,
    #[error("element belongs to a different group")]
    ForeignElement,
}

/// A finite group as a full multiplication table.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    id: GroupId,
    order: usize,
    // row-major, table[i * order + j] = g_i * g_j
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    labels: Vec<String>,
}

/// An element tagged with the group it belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub group_id: GroupId,
    pub index: usize,
}

impl FiniteGroup {
    /// Validates a square table and computes inverses.
    ///
    /// When `labels` is absent, the identity is labelled `e` and every other
    /// element `g<index>`.
    pub fn from_table(
        table: Vec<Vec<usize>>,
        identity: usize,
        labels: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        let order = table.len();
        if order == 0 {
            return Err(GroupError::MalformedTable("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(GroupError::MalformedTable(format!(
                    "row {i} has length {} but the table has {order} rows",
                    row.len()
                )));
            }
            if let Some((j, &x)) = row.iter().enumerate().find(|(_, &x)| x >= order) {
                return Err(GroupError::MalformedTable(format!(
                    "entry [{i}][{j}] = {x} is out of range"
                )));
            }
        }
        if identity >= order {
            return Err(GroupError::MalformedTable(format!(
                "identity index {identity} is out of range"
            )));
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let at = |i: usize, j: usize| flat[i * order + j];

        if (0..order).any(|j| at(identity, j) != j || at(j, identity) != j) {
            return Err(GroupError::NoIdentity(identity));
        }

        let mut inverses = Vec::with_capacity(order);
        for i in 0..order {
            match (0..order).find(|&j| at(i, j) == identity && at(j, i) == identity) {
                Some(j) => inverses.push(j),
                None => return Err(GroupError::NoInverse(i)),
            }
        }

        for i in 0..order {
            for j in 0..order {
                let ij = at(i, j);
                for k in 0..order {
                    if at(ij, k) != at(i, at(j, k)) {
                        return Err(GroupError::NotAssociative(i, j, k));
                    }
                }
            }
        }

        let labels = match labels {
            Some(labels) => {
                validate_labels(&labels, order)?;
                labels
            }
            None => (0..order)
                .map(|i| {
                    if i == identity {
                        "e".to_string()
                    } else {
                        format!("g{i}")
                    }
                })
                .collect(),
        };

        Ok(FiniteGroup {
            id: GroupId::fresh(),
            order,
            table: flat,
            identity,
            inverses,
            labels,
        })
    }

    /// The cyclic group of order `n`, labelled `e, a, a2, ...`.
    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        Self::cyclic_with_prefix(n, "a")
    }

    /// The cyclic group of order `n` with powers of the generator labelled
    /// `e, <prefix>, <prefix>2, ...`.
    pub fn cyclic_with_prefix(n: usize, prefix: &str) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::ZeroOrder);
        }
        let table = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        let labels = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => prefix.to_string(),
                _ => format!("{prefix}{k}"),
            })
            .collect();
        Self::from_table(table, 0, Some(labels))
    }

    /// The symmetric group on `n` points, labelled `e, b1, b2, ...` in
    /// enumeration order.
    pub fn symmetric(n: usize) -> Result<Self, GroupError> {
        Self::symmetric_with(n, "b", DEFAULT_SYMMETRIC_BOUND)
    }

    pub fn symmetric_with(n: usize, prefix: &str, bound: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::ZeroOrder);
        }
        if n > bound {
            return Err(GroupError::TooLarge { n, bound });
        }
        let perms = permutations_lex(n);
        let index: BTreeMap<&[usize], usize> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_slice(), i))
            .collect();
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| {
                        let composed: Vec<usize> = q.iter().map(|&x| p[x]).collect();
                        index[composed.as_slice()]
                    })
                    .collect()
            })
            .collect();
        let labels = (0..perms.len())
            .map(|k| {
                if k == 0 {
                    "e".to_string()
                } else {
                    format!("{prefix}{k}")
                }
            })
            .collect();
        Self::from_table(table, 0, Some(labels))
    }

    /// Direct product with componentwise multiplication. Labels are tuples
    /// of factor labels, e.g. `(e,a)`; a single factor keeps its labels.
    pub fn direct_product(factors: &[FiniteGroup]) -> Result<Self, GroupError> {
        if factors.is_empty() {
            return Err(GroupError::EmptyFactorList);
        }
        let order: usize = factors.iter().map(|g| g.order).product();
        let decompose = |mut x: usize| -> Vec<usize> {
            let mut parts = vec![0; factors.len()];
            for (slot, g) in parts.iter_mut().zip(factors).rev() {
                *slot = x % g.order;
                x /= g.order;
            }
            parts
        };
        let compose = |parts: &[usize]| -> usize {
            parts
                .iter()
                .zip(factors)
                .fold(0, |acc, (&p, g)| acc * g.order + p)
        };
        let coords: Vec<Vec<usize>> = (0..order).map(decompose).collect();
        let table = coords
            .iter()
            .map(|a| {
                coords
                    .iter()
                    .map(|b| {
                        let prod: Vec<usize> = factors
                            .iter()
                            .zip(a.iter().zip(b))
                            .map(|(g, (&x, &y))| g.mul(x, y))
                            .collect();
                        compose(&prod)
                    })
                    .collect()
            })
            .collect();
        let identity = compose(&factors.iter().map(|g| g.identity).collect::<Vec<_>>());
        let labels = if factors.len() == 1 {
            factors[0].labels.clone()
        } else {
            coords
                .iter()
                .map(|c| {
                    let parts: Vec<&str> =
                        c.iter().zip(factors).map(|(&x, g)| g.label(x)).collect();
                    format!("({})", parts.join(","))
                })
                .collect()
        };
        Self::from_table(table, identity, Some(labels))
    }

    pub fn id(&self) -> GroupId {
        self.id
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverses
    }

    /// Table rows as nested vectors.
    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order)
            .map(<[usize]>::to_vec)
            .collect()
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn element(&self, index: usize) -> Option<GroupElement> {
        (index < self.order).then_some(GroupElement {
            group_id: self.id,
            index,
        })
    }

    pub fn mul_elements(
        &self,
        a: GroupElement,
        b: GroupElement,
    ) -> Result<GroupElement, GroupError> {
        if a.group_id != self.id || b.group_id != self.id {
            return Err(GroupError::ForeignElement);
        }
        Ok(GroupElement {
            group_id: self.id,
            index: self.mul(a.index, b.index),
        })
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|i| (i + 1..self.order).all(|j| self.mul(i, j) == self.mul(j, i)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.order).map(|a| self.element_order(a)).collect()
    }

    /// Element orders as `order -> count`.
    pub fn order_multiset(&self) -> BTreeMap<usize, usize> {
        let mut counts = BTreeMap::new();
        for k in self.element_orders() {
            *counts.entry(k).or_insert(0) += 1;
        }
        counts
    }

    /// Elements of the subgroup generated by `gens`, in discovery order.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        let mut out = vec![self.identity];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out
    }

    /// Distances from the identity in Cay(G, gens), `None` if unreachable.
    pub fn cayley_distances(&self, gens: &[usize]) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.order];
        dist[self.identity] = Some(0);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap_or(0);
            for &g in gens {
                let y = self.mul(x, g);
                if dist[y].is_none() {
                    dist[y] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Greedy generating set, preferring elements of large order.
    fn small_generating_set(&self) -> Vec<usize> {
        let orders = self.element_orders();
        let mut candidates: Vec<usize> = (0..self.order).collect();
        candidates.sort_by_key(|&a| (std::cmp::Reverse(orders[a]), a));
        let mut gens = Vec::new();
        let mut covered = vec![false; self.order];
        covered[self.identity] = true;
        for a in candidates {
            if covered[a] {
                continue;
            }
            gens.push(a);
            covered.iter_mut().for_each(|c| *c = false);
            for x in self.generated_subgroup(&gens) {
                covered[x] = true;
            }
            if covered.iter().all(|&c| c) {
                break;
            }
        }
        gens
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

impl Eq for FiniteGroup {}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "group of order {}", self.order)
    }
}

fn validate_labels(labels: &[String], order: usize) -> Result<(), GroupError> {
    if labels.len() != order {
        return Err(GroupError::MalformedTable(format!(
            "{} labels for a group of order {order}",
            labels.len()
        )));
    }
    for (i, l) in labels.iter().enumerate() {
        if l.is_empty() || l.contains([';', ':']) || l.trim() != l {
            return Err(GroupError::MalformedTable(format!(
                "label {l:?} of element {i} is empty or contains ';', ':' or surrounding spaces"
            )));
        }
        if labels[..i].contains(l) {
            return Err(GroupError::MalformedTable(format!("duplicate label {l:?}")));
        }
    }
    Ok(())
}

fn permutations_lex(n: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..n).collect();
    let mut out = vec![current.clone()];
    // next lexicographic permutation
    loop {
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| current[i] < current[i + 1])
        else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
        out.push(current.clone());
    }
}

/// Searches for an isomorphism `G -> H`, returned as the image of every
/// element of `G` by index.
///
/// Rejects on order and element-order multiset first, then backtracks over
/// images of a small generating set of `G`, constrained by element order.
pub fn are_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Option<Vec<usize>> {
    are_isomorphic_with_bound(g, h, DEFAULT_ISO_ORDER_BOUND)
}

pub fn are_isomorphic_with_bound(
    g: &FiniteGroup,
    h: &FiniteGroup,
    bound: usize,
) -> Option<Vec<usize>> {
    if g.order != h.order {
        return None;
    }
    if g.order > bound {
        log::warn!(
            "isomorphism search on groups of order {} exceeds bound {bound}",
            g.order
        );
    }
    if g.order_multiset() != h.order_multiset() {
        return None;
    }
    let gens = g.small_generating_set();
    let g_orders = g.element_orders();
    let h_orders = h.element_orders();
    let mut search = HomSearch {
        g,
        h,
        gens: &gens,
        g_orders: &g_orders,
        h_orders: &h_orders,
        map: vec![None; g.order],
        used: vec![false; h.order],
    };
    search.map[g.identity] = Some(h.identity);
    search.used[h.identity] = true;
    if search.extend(0) {
        Some(
            search
                .map
                .into_iter()
                .map(|x| x.expect("total map"))
                .collect(),
        )
    } else {
        None
    }
}

struct HomSearch<'a> {
    g: &'a FiniteGroup,
    h: &'a FiniteGroup,
    gens: &'a [usize],
    g_orders: &'a [usize],
    h_orders: &'a [usize],
    map: Vec<Option<usize>>,
    used: Vec<bool>,
}

impl HomSearch<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.gens.len() {
            return self.map.iter().all(Option::is_some);
        }
        let gen = self.gens[depth];
        if let Some(img) = self.map[gen] {
            // already forced by earlier generators
            return self.close(depth, img);
        }
        for img in 0..self.h.order {
            if self.used[img] || self.h_orders[img] != self.g_orders[gen] {
                continue;
            }
            let (map, used) = (self.map.clone(), self.used.clone());
            if self.close(depth, img) {
                return true;
            }
            self.map = map;
            self.used = used;
        }
        false
    }

    /// Assigns `gens[depth] -> img` and propagates over the subgroup
    /// generated by `gens[..=depth]`, checking consistency and injectivity.
    fn close(&mut self, depth: usize, img: usize) -> bool {
        let gen = self.gens[depth];
        match self.map[gen] {
            Some(existing) if existing != img => return false,
            Some(_) => {}
            None => {
                if self.used[img] {
                    return false;
                }
                self.map[gen] = Some(img);
                self.used[img] = true;
            }
        }
        let active = &self.gens[..=depth];
        let mut queue: VecDeque<usize> = (0..self.g.order)
            .filter(|&x| self.map[x].is_some())
            .collect();
        while let Some(x) = queue.pop_front() {
            let fx = self.map[x].expect("queued elements are mapped");
            for &s in active {
                let fs = self.map[s].expect("active generators are mapped");
                let y = self.g.mul(x, s);
                let fy = self.h.mul(fx, fs);
                match self.map[y] {
                    Some(existing) if existing != fy => return false,
                    Some(_) => {}
                    None => {
                        if self.used[fy] {
                            return false;
                        }
                        self.map[y] = Some(fy);
                        self.used[fy] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        self.extend(depth + 1)
    }
}

/// Checks `phi(a*b) = phi(a)*phi(b)` for all pairs and bijectivity.
pub fn is_isomorphism(g: &FiniteGroup, h: &FiniteGroup, phi: &[usize]) -> bool {
    if g.order != h.order || phi.len() != g.order {
        return false;
    }
    let mut hit = vec![false; h.order];
    for &y in phi {
        if y >= h.order || std::mem::replace(&mut hit[y], true) {
            return false;
        }
    }
    (0..g.order).all(|a| (0..g.order).all(|b| phi[g.mul(a, b)] == h.mul(phi[a], phi[b])))
}
