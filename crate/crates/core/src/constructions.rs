//! Generators for the extremal and counterexample families.
//!
//! Vertex `v_i` of a 1-based description is vertex `i - 1` here. Bipartite
//! families put the part `A` first and `B` after it.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::metrics::{self, MetricsReport};
use crate::rational::Rational;

/// The directed cycle `0 -> 1 -> ... -> n-1 -> 0`.
pub fn dicycle(n: usize) -> Result<Digraph> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("dicycle needs n >= 2, got {n}")));
    }
    let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Digraph::from_edge_list(n, &pairs)
}

/// The unique tournament maximizing remoteness: path arcs `i -> i+1` and
/// every long backward arc `j -> i` with `j > i + 1`.
pub fn extremal_tournament(n: usize) -> Result<Digraph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "extremal tournament needs n >= 3, got {n}"
        )));
    }
    let mut d = Digraph::empty(n);
    for i in 0..n - 1 {
        d.add_arc(i, i + 1);
    }
    for j in 0..n {
        for i in 0..j.saturating_sub(1) {
            d.add_arc(j, i);
        }
    }
    Ok(d)
}

/// Hub `0` beats everyone, `1 -> 2 -> ... -> n-1 -> 1` is a cycle, and `c -> 0`.
pub fn hub_digraph(n: usize, c: usize) -> Result<Digraph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("hub digraph needs n >= 3, got {n}")));
    }
    if c == 0 || c >= n {
        return Err(Error::InvalidParameter(format!(
            "hub digraph needs 1 <= c <= {}, got {c}",
            n - 1
        )));
    }
    let mut pairs: Vec<_> = (1..n).map(|j| (0, j)).collect();
    pairs.extend((1..n - 1).map(|p| (p, p + 1)));
    pairs.push((n - 1, 1));
    pairs.push((c, 0));
    Digraph::from_edge_list(n, &pairs)
}

/// The Hamiltonian dipath `0 -> 1 -> ... -> n-1` plus the given arcs, none
/// of which may be a forward shortcut `i -> j` with `j > i + 1`.
pub fn ham_extremal(n: usize, back_arcs: &[(usize, usize)]) -> Result<Digraph> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    if let Some(&(u, v)) = back_arcs.iter().find(|&&(u, v)| v > u + 1) {
        return Err(Error::InvalidParameter(format!(
            "arc ({u}, {v}) is a forward shortcut along the Hamiltonian dipath"
        )));
    }
    let mut pairs: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    pairs.extend_from_slice(back_arcs);
    let d = Digraph::from_edge_list(n, &pairs)?;
    if let Some((from, to)) = d.unreachable_pair() {
        return Err(Error::NotStrong { from, to });
    }
    Ok(d)
}

/// Equal parts `A = A1 ∪ A2`, `B = B1 ∪ B2` of `half` vertices per block;
/// `A_i` beats `B_i` and loses to the other block of `B`.
pub fn bipartite_equal(half: usize) -> Result<Digraph> {
    if half == 0 {
        return Err(Error::InvalidParameter("half must be at least 1".into()));
    }
    let h = half;
    let block = |k: usize| k * h..(k + 1) * h;
    let mut d = Digraph::empty(4 * h);
    // blocks: 0 = A1, 1 = A2, 2 = B1, 3 = B2
    for (from, to) in [(0, 2), (1, 3), (2, 1), (3, 0)] {
        for u in block(from) {
            for v in block(to) {
                d.add_arc(u, v);
            }
        }
    }
    Ok(d)
}

const T1_OUT: [[usize; 3]; 4] = [[0, 1, 2], [0, 3, 4], [1, 3, 5], [2, 4, 5]];

/// The 4 + 6 bipartite tournament where each vertex of `A` beats a distinct
/// 3-subset of `B` and each vertex of `B` is beaten by exactly two of `A`.
pub fn bipartite_t1() -> Digraph {
    let mut d = Digraph::empty(10);
    for (a, outs) in T1_OUT.iter().enumerate() {
        for b in 0..6 {
            if outs.contains(&b) {
                d.add_arc(a, 4 + b);
            } else {
                d.add_arc(4 + b, a);
            }
        }
    }
    d
}

pub fn bipartite_blowup(t: usize) -> Result<Digraph> {
    bipartite_t1().blow_up(t)
}

const FIG1_EDGES: [(usize, usize); 15] = [
    (0, 3),
    (0, 6),
    (0, 7),
    (1, 4),
    (1, 6),
    (1, 8),
    (2, 5),
    (2, 7),
    (2, 8),
    (3, 6),
    (3, 7),
    (4, 6),
    (4, 8),
    (5, 7),
    (5, 8),
];

/// A non-regular graph of order 9 in which every vertex has the same distance sum.
pub fn fig1_graph() -> Digraph {
    Digraph::from_undirected_edge_list(9, &FIG1_EDGES).expect("static edge list is valid")
}

pub fn fig1_blowup(t: usize) -> Result<Digraph> {
    fig1_graph().blow_up(t)
}

/// Circulant tournament on odd `n`: `i` beats `i+1, ..., i+(n-1)/2` mod `n`.
pub fn rotational_tournament(n: usize) -> Result<Digraph> {
    if n % 2 == 0 || n < 3 {
        return Err(Error::InvalidParameter(format!(
            "rotational tournament needs odd n >= 3, got {n}"
        )));
    }
    let mut d = Digraph::empty(n);
    for i in 0..n {
        for k in 1..=(n - 1) / 2 {
            d.add_arc(i, (i + k) % n);
        }
    }
    Ok(d)
}

/// A named family with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum ConstructionSpec {
    Dicycle { n: usize },
    ExtremalTournament { n: usize },
    HubDigraph { n: usize, c: usize },
    HamExtremal { n: usize, back_arcs: Vec<(usize, usize)> },
    BipartiteEqual { half: usize },
    BipartiteT1,
    BipartiteBlowup { t: usize },
    Fig1Graph,
    Fig1Blowup { t: usize },
    RotationalTournament { n: usize },
    Complete { n: usize },
}

impl ConstructionSpec {
    pub const FAMILIES: [&'static str; 11] = [
        "dicycle",
        "extremal_tournament",
        "hub_digraph",
        "ham_extremal",
        "bipartite_equal",
        "bipartite_t1",
        "bipartite_blowup",
        "fig1_graph",
        "fig1_blowup",
        "rotational_tournament",
        "complete",
    ];

    /// Builds a spec from a family name and `key=value` parameters.
    ///
    /// `back_arcs` is written `j>i;j>i;...`.
    pub fn from_parts(family: &str, params: &[(&str, &str)]) -> Result<Self> {
        let get = |key: &str| -> Result<usize> {
            let (_, v) = params
                .iter()
                .find(|(k, _)| *k == key)
                .ok_or_else(|| Error::InvalidParameter(format!("{family} needs `{key}`")))?;
            v.parse()
                .map_err(|_| Error::InvalidParameter(format!("`{key}={v}` is not an integer")))
        };
        for (k, _) in params {
            if !["n", "c", "t", "half", "back_arcs"].contains(k) {
                return Err(Error::InvalidParameter(format!("unknown parameter `{k}`")));
            }
        }
        Ok(match family {
            "dicycle" => Self::Dicycle { n: get("n")? },
            "extremal_tournament" => Self::ExtremalTournament { n: get("n")? },
            "hub_digraph" => Self::HubDigraph {
                n: get("n")?,
                c: get("c")?,
            },
            "ham_extremal" => {
                let raw = params
                    .iter()
                    .find(|(k, _)| *k == "back_arcs")
                    .map(|(_, v)| *v)
                    .unwrap_or("");
                Self::HamExtremal {
                    n: get("n")?,
                    back_arcs: parse_arc_list(raw)?,
                }
            }
            "bipartite_equal" => Self::BipartiteEqual { half: get("half")? },
            "bipartite_t1" => Self::BipartiteT1,
            "bipartite_blowup" => Self::BipartiteBlowup { t: get("t")? },
            "fig1_graph" => Self::Fig1Graph,
            "fig1_blowup" => Self::Fig1Blowup { t: get("t")? },
            "rotational_tournament" => Self::RotationalTournament { n: get("n")? },
            "complete" => Self::Complete { n: get("n")? },
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown family `{other}`; expected one of {}",
                    Self::FAMILIES.join(", ")
                )))
            }
        })
    }

    pub fn build(&self) -> Result<Digraph> {
        match self {
            Self::Dicycle { n } => dicycle(*n),
            Self::ExtremalTournament { n } => extremal_tournament(*n),
            Self::HubDigraph { n, c } => hub_digraph(*n, *c),
            Self::HamExtremal { n, back_arcs } => ham_extremal(*n, back_arcs),
            Self::BipartiteEqual { half } => bipartite_equal(*half),
            Self::BipartiteT1 => Ok(bipartite_t1()),
            Self::BipartiteBlowup { t } => bipartite_blowup(*t),
            Self::Fig1Graph => Ok(fig1_graph()),
            Self::Fig1Blowup { t } => fig1_blowup(*t),
            Self::RotationalTournament { n } => rotational_tournament(*n),
            Self::Complete { n } if *n >= 1 => Ok(Digraph::complete(*n)),
            Self::Complete { .. } => Err(Error::InvalidParameter("n must be at least 1".into())),
        }
    }

    /// Checks the documented invariants of the family on `d`.
    ///
    /// Returns the list of violated expectations; empty means all hold.
    pub fn expect(&self, d: &Digraph) -> Result<Vec<String>> {
        let mut bad = Vec::new();
        let mut check = |ok: bool, what: String| {
            if !ok {
                bad.push(what);
            }
        };
        let n = d.order();
        let r = MetricsReport::compute(d)?;
        let half_n = Rational::new(n as i64, 2);
        match self {
            Self::Dicycle { .. } => {
                check(r.proximity == half_n && r.remoteness == half_n, format!("pi = rho = {half_n}"));
                check(r.radius as usize == n - 1 && r.diameter as usize == n - 1, format!("rad = diam = {}", n - 1));
            }
            Self::ExtremalTournament { .. } => {
                check(d.is_tournament(), "is a tournament".into());
                check(r.remoteness == half_n, format!("rho = {half_n}"));
                check(r.ecc[0] as usize == n - 1, format!("ecc(v1) = {}", n - 1));
            }
            Self::HubDigraph { .. } => {
                check(r.radius == 1, "rad = 1".into());
                check(r.ecc[0] == 1, "v0 attains the radius".into());
                check(r.diameter as usize == n - 1, format!("diam = {}", n - 1));
                check(r.remoteness == half_n, format!("rho = {half_n}"));
            }
            Self::HamExtremal { .. } => {
                check(r.ecc[0] as usize == n - 1, format!("ecc(v1) = {}", n - 1));
                check(r.remoteness == half_n, format!("rho = {half_n}"));
            }
            Self::BipartiteEqual { .. }
            | Self::BipartiteT1
            | Self::BipartiteBlowup { .. } => {
                let structure = d.bipartite_tournament_structure();
                check(structure.is_some(), "is a bipartite tournament".into());
                if structure.is_some() {
                    let good = crate::bipartite::classify_good_bad(d)?.good;
                    check(good, "is good".into());
                }
                check(r.pi_equals_rho, "pi = rho".into());
                if let Self::BipartiteBlowup { t } = self {
                    let classes = crate::bipartite::neighborhood_classes(d)?;
                    check(classes.iter().all(|c| c.members.len() == *t), format!("mu = {t} everywhere"));
                    check(!r.is_regular, "non-regular".into());
                }
            }
            Self::Fig1Graph | Self::Fig1Blowup { .. } => {
                check(d.is_symmetric(), "symmetric".into());
                check(!r.is_regular, "non-regular".into());
                check(r.pi_equals_rho, "all distance sums equal".into());
                let t = match self {
                    Self::Fig1Blowup { t } => *t,
                    _ => 1,
                };
                let base = FIG1_SIGMA * t as u64 + 2 * (t as u64 - 1);
                check(r.sigma.iter().all(|&s| s == base), format!("sigma = {base} everywhere"));
            }
            Self::RotationalTournament { .. } => {
                check(d.is_tournament() && r.is_regular, "regular tournament".into());
                check(r.pi_equals_rho, "pi = rho".into());
            }
            Self::Complete { .. } => {
                check(r.remoteness == Rational::integer(1), "rho = 1".into());
            }
        }
        Ok(bad)
    }
}

/// Distance sum of every vertex of [`fig1_graph`], as computed by BFS.
///
/// Degree-3 vertices have distance degree `(1,3,4,1)` and degree-4 vertices
/// `(1,4,2,2)`; both give 14. A copy in the `t`-fold blow-up has distance sum
/// `14 t + 2 (t - 1)`.
pub const FIG1_SIGMA: u64 = 14;

/// Parses `u>v;u>v;...`, each item the arc `u -> v`.
pub fn parse_arc_list(raw: &str) -> Result<Vec<(usize, usize)>> {
    raw.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|pair| {
            let (a, b) = pair
                .split_once('>')
                .ok_or_else(|| Error::InvalidParameter(format!("arc `{pair}` must look like `u>v`")))?;
            let p = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidParameter(format!("`{s}` is not a vertex label")))
            };
            Ok((p(a)?, p(b)?))
        })
        .collect()
}

impl fmt::Display for ConstructionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Dicycle { n } => write!(f, "dicycle:n={n}"),
            Self::ExtremalTournament { n } => write!(f, "extremal_tournament:n={n}"),
            Self::HubDigraph { n, c } => write!(f, "hub_digraph:n={n},c={c}"),
            Self::HamExtremal { n, back_arcs } => {
                let arcs: Vec<String> = back_arcs.iter().map(|(u, v)| format!("{u}>{v}")).collect();
                write!(f, "ham_extremal:n={n},back_arcs={}", arcs.join(";"))
            }
            Self::BipartiteEqual { half } => write!(f, "bipartite_equal:half={half}"),
            Self::BipartiteT1 => write!(f, "bipartite_t1"),
            Self::BipartiteBlowup { t } => write!(f, "bipartite_blowup:t={t}"),
            Self::Fig1Graph => write!(f, "fig1_graph"),
            Self::Fig1Blowup { t } => write!(f, "fig1_blowup:t={t}"),
            Self::RotationalTournament { n } => write!(f, "rotational_tournament:n={n}"),
            Self::Complete { n } => write!(f, "complete:n={n}"),
        }
    }
}

/// Parses `family[:key=value,key=value]`, e.g. `hub_digraph:n=6,c=2`.
impl FromStr for ConstructionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (family, rest) = s.split_once(':').unwrap_or((s, ""));
        let params = rest
            .split(',')
            .filter(|kv| !kv.is_empty())
            .map(|kv| {
                kv.split_once('=')
                    .ok_or_else(|| Error::InvalidParameter(format!("parameter `{kv}` must look like key=value")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_parts(family.trim(), &params)
    }
}

/// Convenience for tests and reports: `(pi, rho)` of a strong digraph.
pub fn pi_rho(d: &Digraph) -> Result<(Rational, Rational)> {
    let pr = metrics::proximity_remoteness(d)?;
    Ok((pr.proximity, pr.remoteness))
}
