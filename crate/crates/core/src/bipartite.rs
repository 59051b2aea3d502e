//! Bipartite tournaments: good/bad classification, out-neighbourhood classes
//! `M(v)` with their sizes `mu(v)`, the closed-form distance sums of good
//! strong instances, and the equality criteria for `pi = rho`.
//!
//! `M(v)` is taken within `v`'s own part. Two vertices in different parts
//! can only share an out-neighbourhood if both are empty, which a strong
//! bipartite tournament never has.

use serde::Serialize;

use crate::digraph::{Digraph, PartiteStructure};
use crate::error::{Error, Result};
use crate::metrics;

fn structure(t: &Digraph) -> Result<PartiteStructure> {
    t.bipartite_tournament_structure()
        .ok_or_else(|| Error::Precondition("input is not a bipartite tournament".into()))
}

fn require_strong(t: &Digraph) -> Result<()> {
    match t.unreachable_pair() {
        Some((from, to)) => Err(Error::NotStrong { from, to }),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoodBad {
    pub good: bool,
    /// Lexicographically smallest `(u, v)` in one part with `N+(u)` a proper subset of `N+(v)`.
    pub bad_witness: Option<(usize, usize)>,
}

pub fn classify_good_bad(t: &Digraph) -> Result<GoodBad> {
    let s = structure(t)?;
    Ok(classify_with(t, &s))
}

pub(crate) fn classify_with(t: &Digraph, s: &PartiteStructure) -> GoodBad {
    let mut witness: Option<(usize, usize)> = None;
    for part in &s.parts {
        for &u in part {
            for &v in part {
                if u != v && t.out_subset(u, v) && t.row(u) != t.row(v) {
                    let cand = (u, v);
                    if witness.is_none_or(|w| cand < w) {
                        witness = Some(cand);
                    }
                }
            }
        }
    }
    GoodBad {
        good: witness.is_none(),
        bad_witness: witness,
    }
}

/// Vertices of one part sharing an identical out-neighbourhood.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NeighborhoodClass {
    pub representative: usize,
    pub members: Vec<usize>,
}

impl NeighborhoodClass {
    pub fn mu(&self) -> usize {
        self.members.len()
    }
}

pub fn neighborhood_classes(t: &Digraph) -> Result<Vec<NeighborhoodClass>> {
    let s = structure(t)?;
    Ok(classes_with(t, &s))
}

pub(crate) fn classes_with(t: &Digraph, s: &PartiteStructure) -> Vec<NeighborhoodClass> {
    let mut classes: Vec<NeighborhoodClass> = Vec::new();
    for part in &s.parts {
        let first = classes.len();
        for &v in part {
            match classes[first..]
                .iter_mut()
                .find(|c| t.row(c.representative) == t.row(v))
            {
                Some(c) => c.members.push(v),
                None => classes.push(NeighborhoodClass {
                    representative: v,
                    members: vec![v],
                }),
            }
        }
    }
    classes
}

/// `mu(v)` for every vertex.
pub(crate) fn mu_table(t: &Digraph, classes: &[NeighborhoodClass]) -> Vec<usize> {
    let mut mu = vec![0; t.order()];
    for c in classes {
        for &v in &c.members {
            mu[v] = c.mu();
        }
    }
    mu
}

/// `2(mu - d+) + 2|own part| + 3|other part| - 4`.
fn formula(mu: usize, out: usize, own: usize, other: usize) -> i64 {
    2 * (mu as i64 - out as i64) + 2 * own as i64 + 3 * other as i64 - 4
}

/// `2(mu - d+) + |other part|`; constant over all vertices iff all distance sums agree.
fn criterion_key(mu: usize, out: usize, other: usize) -> i64 {
    2 * (mu as i64 - out as i64) + other as i64
}

/// Distance sum of `v` in a good strong bipartite tournament, from degrees
/// and class sizes alone.
pub fn sigma_by_formula(t: &Digraph, v: usize) -> Result<i64> {
    let s = structure(t)?;
    require_strong(t)?;
    if !classify_with(t, &s).good {
        return Err(Error::Precondition("the distance-sum formula needs a good bipartite tournament".into()));
    }
    let classes = classes_with(t, &s);
    let mu = mu_table(t, &classes);
    let p = s.part_of(v).ok_or_else(|| Error::InvalidParameter(format!("vertex {v} out of range")))?;
    let own = s.parts[p].len();
    let other = s.parts[1 - p].len();
    Ok(formula(mu[v], t.out_degree(v), own, other))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexRow {
    pub vertex: usize,
    pub part: usize,
    pub out_degree: usize,
    pub mu: usize,
    /// Distance sum from BFS.
    pub sigma: u64,
    /// Closed-form distance sum; present for good instances only.
    pub sigma_formula: Option<i64>,
    /// `2(mu - d+) + |other part|`
    pub key: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BipartiteReport {
    pub structure: PartiteStructure,
    pub good: bool,
    pub bad_witness: Option<(usize, usize)>,
    pub per_vertex: Vec<VertexRow>,
    /// The common value of `2(mu - d+) + |other part|`, if there is one.
    pub constant_c: Option<i64>,
    /// `good` and `constant_c` exists.
    pub criterion_predicts_equal: bool,
    /// Exact `pi = rho` from BFS.
    pub pi_equals_rho: bool,
    /// With `pi = rho`: whether `mu - d+` agrees within each part and
    /// `2(mu(v) - d+(v)) + |B| = 2(mu(u) - d+(u)) + |A|` across parts, pair by pair.
    pub pairwise_relations_hold: Option<bool>,
}

impl BipartiteReport {
    pub fn consistent(&self) -> bool {
        self.criterion_predicts_equal == self.pi_equals_rho
            && self.pairwise_relations_hold != Some(false)
            && !(!self.good && self.pi_equals_rho)
    }
}

/// Evaluates the equality criterion on a strong bipartite tournament and
/// compares it with the exact metrics.
pub fn check_equality_criterion(t: &Digraph) -> Result<BipartiteReport> {
    let s = structure(t)?;
    let se = metrics::sigma_ecc_all(t)?;
    Ok(report_with(t, s, &se))
}

pub(crate) fn report_with(t: &Digraph, s: PartiteStructure, se: &[(u64, u32)]) -> BipartiteReport {
    let gb = classify_with(t, &s);
    let classes = classes_with(t, &s);
    let mu = mu_table(t, &classes);
    let mut part_of = vec![0; t.order()];
    for (p, members) in s.parts.iter().enumerate() {
        for &v in members {
            part_of[v] = p;
        }
    }
    let per_vertex: Vec<VertexRow> = (0..t.order())
        .map(|v| {
            let p = part_of[v];
            let own = s.parts[p].len();
            let other = s.parts[1 - p].len();
            let out = t.out_degree(v);
            VertexRow {
                vertex: v,
                part: p,
                out_degree: out,
                mu: mu[v],
                sigma: se[v].0,
                sigma_formula: gb.good.then(|| formula(mu[v], out, own, other)),
                key: criterion_key(mu[v], out, other),
            }
        })
        .collect();
    let first = per_vertex[0].key;
    let constant_c = per_vertex.iter().all(|r| r.key == first).then_some(first);
    let pi_equals_rho = se.iter().all(|p| p.0 == se[0].0);
    let pairwise_relations_hold = pi_equals_rho.then(|| {
        let sizes = [s.parts[0].len() as i64, s.parts[1].len() as i64];
        per_vertex.iter().all(|a| {
            per_vertex.iter().all(|b| {
                let da = a.mu as i64 - a.out_degree as i64;
                let db = b.mu as i64 - b.out_degree as i64;
                if a.part == b.part {
                    da == db
                } else {
                    // a in part p sees |other| = sizes[1 - p]
                    2 * da + sizes[1 - a.part] == 2 * db + sizes[1 - b.part]
                }
            })
        })
    });
    BipartiteReport {
        structure: s,
        good: gb.good,
        bad_witness: gb.bad_witness,
        per_vertex,
        constant_c,
        criterion_predicts_equal: gb.good && constant_c.is_some(),
        pi_equals_rho,
        pairwise_relations_hold,
    }
}

/// For a good strong bipartite tournament whose class sizes are all equal:
/// whether every vertex beats exactly half of the opposite part.
pub fn check_cor_reg(t: &Digraph) -> Result<bool> {
    let s = structure(t)?;
    require_strong(t)?;
    if !classify_with(t, &s).good {
        return Err(Error::Precondition("needs a good bipartite tournament".into()));
    }
    let classes = classes_with(t, &s);
    if classes.iter().any(|c| c.mu() != classes[0].mu()) {
        return Err(Error::Precondition("class sizes mu(x) are not all equal".into()));
    }
    Ok(half_degree_condition(t, &s))
}

pub(crate) fn half_degree_condition(t: &Digraph, s: &PartiteStructure) -> bool {
    (0..2).all(|p| {
        let other = s.parts[1 - p].len();
        s.parts[p].iter().all(|&v| 2 * t.out_degree(v) == other)
    })
}
