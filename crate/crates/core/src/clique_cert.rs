//! Maximal-clique subgroups and non-isomorphism certificates.
//!
//! In a graph product of finite groups the maximal finite subgroups are the
//! conjugates of the subgroups generated by maximal cliques, each a direct
//! product of its vertex groups. If no clique subgroup on one side is
//! isomorphic to one on the other, the graph products are not isomorphic.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::finite_group::{are_isomorphic, FiniteGroup, GroupError, DEFAULT_ISO_ORDER_BOUND};
use crate::word_engine::Presentation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliqueError {
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("not a clique: {0:?} and {1:?} are not adjacent")]
    NotAClique(String, String),
    #[error("empty vertex set")]
    Empty,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Direct product of the vertex groups of `clique`, factors in vertex order.
pub fn clique_subgroup<S: AsRef<str>>(
    p: &Presentation,
    clique: &[S],
) -> Result<FiniteGroup, CliqueError> {
    let mut indices = Vec::with_capacity(clique.len());
    for name in clique {
        let name = name.as_ref();
        let v = p
            .graph()
            .index_of(name)
            .ok_or_else(|| CliqueError::UnknownVertex(name.into()))?;
        indices.push(v);
    }
    clique_subgroup_by_index(p, &indices)
}

pub fn clique_subgroup_by_index(
    p: &Presentation,
    clique: &[usize],
) -> Result<FiniteGroup, CliqueError> {
    if clique.is_empty() {
        return Err(CliqueError::Empty);
    }
    if let Some((a, b)) = p.graph().non_adjacent_pair(clique) {
        return Err(CliqueError::NotAClique(
            p.graph().name(a).into(),
            p.graph().name(b).into(),
        ));
    }
    let mut sorted = clique.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() == 1 {
        return Ok(p.group(sorted[0]).clone());
    }
    let factors: Vec<FiniteGroup> = sorted.iter().map(|&v| p.group(v).clone()).collect();
    Ok(FiniteGroup::direct_product(&factors)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueSubgroup {
    pub clique: Vec<String>,
    pub order: usize,
    /// Element order -> number of elements of that order.
    pub element_orders: BTreeMap<usize, usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NonIsoReason {
    OrderMismatch,
    OrderMultisetMismatch,
    ExhaustedSearch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckedPair {
    pub source_clique: Vec<String>,
    pub target_clique: Vec<String>,
    pub reason: NonIsoReason,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonIsoCertificate {
    pub source: String,
    pub target: String,
    pub clique_subgroups_source: Vec<CliqueSubgroup>,
    pub clique_subgroups_target: Vec<CliqueSubgroup>,
    pub checked_pairs: Vec<CheckedPair>,
    /// Clique subgroups above the isomorphism-search bound.
    pub size_warnings: Vec<String>,
}

impl NonIsoCertificate {
    /// Every clique pair is listed exactly once with a reason.
    pub fn is_complete(&self) -> bool {
        self.checked_pairs.len()
            == self.clique_subgroups_source.len() * self.clique_subgroups_target.len()
            && self.clique_subgroups_source.iter().all(|a| {
                self.clique_subgroups_target.iter().all(|b| {
                    self.checked_pairs
                        .iter()
                        .filter(|c| c.source_clique == a.clique && c.target_clique == b.clique)
                        .count()
                        == 1
                })
            })
    }
}

fn clique_subgroups(p: &Presentation) -> Result<Vec<(CliqueSubgroup, FiniteGroup)>, CliqueError> {
    p.graph()
        .maximal_clique_indices()
        .into_iter()
        .map(|c| {
            let group = clique_subgroup_by_index(p, &c)?;
            let info = CliqueSubgroup {
                clique: c.iter().map(|&v| p.graph().name(v).to_string()).collect(),
                order: group.order(),
                element_orders: group.order_multiset(),
            };
            Ok((info, group))
        })
        .collect()
}

/// Why `g` and `h` are not isomorphic, or `None` if they are.
pub fn non_iso_reason(g: &FiniteGroup, h: &FiniteGroup) -> Option<NonIsoReason> {
    if g.order() != h.order() {
        Some(NonIsoReason::OrderMismatch)
    } else if g.order_multiset() != h.order_multiset() {
        Some(NonIsoReason::OrderMultisetMismatch)
    } else if are_isomorphic(g, h).is_none() {
        Some(NonIsoReason::ExhaustedSearch)
    } else {
        None
    }
}

/// Compares every pair of maximal-clique subgroups. Returns a certificate
/// when all pairs are non-isomorphic and `None` as soon as one pair is
/// isomorphic. `None` is not a claim that the graph products are isomorphic.
///
/// The two presentations may live on different graphs.
pub fn noniso_certificate(
    source: &Presentation,
    target: &Presentation,
) -> Result<Option<NonIsoCertificate>, CliqueError> {
    let src = clique_subgroups(source)?;
    let dst = clique_subgroups(target)?;
    let mut size_warnings = Vec::new();
    for (side, list) in [(source, &src), (target, &dst)] {
        for (info, g) in list {
            if g.order() > DEFAULT_ISO_ORDER_BOUND {
                let msg = format!(
                    "{}: clique {{{}}} has order {} above {DEFAULT_ISO_ORDER_BOUND}",
                    side.name(),
                    info.clique.join(","),
                    g.order()
                );
                log::warn!("{msg}");
                size_warnings.push(msg);
            }
        }
    }
    let mut checked_pairs = Vec::with_capacity(src.len() * dst.len());
    for (a, g) in &src {
        for (b, h) in &dst {
            match non_iso_reason(g, h) {
                Some(reason) => checked_pairs.push(CheckedPair {
                    source_clique: a.clique.clone(),
                    target_clique: b.clique.clone(),
                    reason,
                }),
                None => return Ok(None),
            }
        }
    }
    Ok(Some(NonIsoCertificate {
        source: source.name().to_string(),
        target: target.name().to_string(),
        clique_subgroups_source: src.into_iter().map(|(i, _)| i).collect(),
        clique_subgroups_target: dst.into_iter().map(|(i, _)| i).collect(),
        checked_pairs,
        size_warnings,
    }))
}
