//! Exhaustive enumeration of small labeled digraph classes, predicate
//! filtering, canonical deduplication and parallel sharding, plus a seeded
//! randomized search over undirected graphs with a prescribed degree
//! sequence.
//!
//! Every class is a list of slots, one per vertex pair whose arc set varies.
//! The member with index `k` sets slot `s` iff bit `s` of `k` is one, and
//! members are produced in increasing `k`. A shard is a contiguous index
//! range, so with a power-of-two shard count each shard fixes the high-order
//! slot bits.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bipartite;
use crate::canon;
use crate::digraph::{Digraph, PartiteStructure};
use crate::error::{Error, Result};
use crate::format;
use crate::metrics::{self, MetricsReport};
use crate::verify::{Check, Instance, VerificationReport};

/// An enumerable class of labeled digraphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum Class {
    /// Every loopless digraph on `n` vertices. Slot `(i, j)` is the arc `i -> j`.
    AllDigraphs { n: usize },
    /// Every tournament. Slot `{i < j}` clear means `i -> j`, set means `j -> i`.
    Tournaments { n: usize },
    /// Every orientation of `K(a, b)` with parts `0..a` and `a..a+b`. Slot
    /// `{i, j}` (`i` in the first part) clear means `i -> j`, set means `j -> i`.
    BipartiteTournaments { a: usize, b: usize },
    /// Every simple graph as a symmetric digraph. Slot `{i < j}` is the edge.
    SymmetricDigraphs { n: usize },
}

impl Class {
    /// Parses `all_digraphs,5`, `tournaments,7`, `bipartite_tournaments,3,4`
    /// or `symmetric_digraphs,6`.
    pub fn parse(s: &str) -> Result<Class> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let num = |i: usize| -> Result<usize> {
            parts
                .get(i)
                .ok_or_else(|| Error::InvalidParameter(format!("`{s}` is missing a size")))?
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad size in `{s}`")))
        };
        let class = match parts[0] {
            "all_digraphs" | "all" => Class::AllDigraphs { n: num(1)? },
            "tournaments" => Class::Tournaments { n: num(1)? },
            "bipartite_tournaments" | "bipartite" => Class::BipartiteTournaments { a: num(1)?, b: num(2)? },
            "symmetric_digraphs" | "symmetric" => Class::SymmetricDigraphs { n: num(1)? },
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown class `{other}`; expected all_digraphs, tournaments, bipartite_tournaments or symmetric_digraphs"
                )))
            }
        };
        class.check_ceiling()?;
        Ok(class)
    }

    pub fn order(&self) -> usize {
        match *self {
            Class::AllDigraphs { n } | Class::Tournaments { n } | Class::SymmetricDigraphs { n } => n,
            Class::BipartiteTournaments { a, b } => a + b,
        }
    }

    /// The vertex pairs that vary, in slot order.
    pub fn slots(&self) -> Vec<(usize, usize)> {
        match *self {
            Class::AllDigraphs { n } => (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .collect(),
            Class::Tournaments { n } | Class::SymmetricDigraphs { n } => {
                (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
            }
            Class::BipartiteTournaments { a, b } => {
                (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))).collect()
            }
        }
    }

    /// Number of labeled members, `2^slots`.
    pub fn count(&self) -> u64 {
        1u64 << self.slots().len()
    }

    /// The bipartition, for the bipartite class.
    pub fn parts(&self) -> Option<PartiteStructure> {
        match *self {
            Class::BipartiteTournaments { a, b } => Some(PartiteStructure {
                parts: vec![(0..a).collect(), (a..a + b).collect()],
            }),
            _ => None,
        }
    }

    /// Size limits: all digraphs `n <= 5`, tournaments `n <= 8`, bipartite
    /// tournaments `a b <= 26`, symmetric digraphs `n <= 8`.
    pub fn check_ceiling(&self) -> Result<()> {
        let (ok, name, ceiling) = match *self {
            Class::AllDigraphs { n } => (n <= 5, "all_digraphs", "n <= 5"),
            Class::Tournaments { n } => (n <= 8, "tournaments", "n <= 8"),
            Class::BipartiteTournaments { a, b } => (a * b <= 26, "bipartite_tournaments", "a * b <= 26"),
            Class::SymmetricDigraphs { n } => (n <= 8, "symmetric_digraphs", "n <= 8"),
        };
        let n = self.order();
        if n == 0 {
            return Err(Error::InvalidParameter("classes need at least one vertex".into()));
        }
        if let Class::BipartiteTournaments { a: 0, .. } | Class::BipartiteTournaments { b: 0, .. } = self {
            return Err(Error::InvalidParameter("both parts need at least one vertex".into()));
        }
        if ok {
            Ok(())
        } else {
            Err(Error::CeilingExceeded {
                class: name.into(),
                n,
                ceiling: ceiling.into(),
            })
        }
    }

    /// Writes member `index` into `d`, which must have the class's order.
    fn fill(&self, slots: &[(usize, usize)], index: u64, d: &mut Digraph) {
        d.clear();
        let symmetric = matches!(self, Class::SymmetricDigraphs { .. });
        let oriented = matches!(self, Class::Tournaments { .. } | Class::BipartiteTournaments { .. });
        for (s, &(i, j)) in slots.iter().enumerate() {
            let set = index >> s & 1 == 1;
            if oriented {
                if set {
                    d.add_arc(j, i);
                } else {
                    d.add_arc(i, j);
                }
            } else if set {
                d.add_arc(i, j);
                if symmetric {
                    d.add_arc(j, i);
                }
            }
        }
    }

    /// The member with index `index`.
    pub fn member(&self, index: u64) -> Digraph {
        let mut d = Digraph::empty(self.order());
        self.fill(&self.slots(), index, &mut d);
        d
    }

    /// Every member in index order.
    pub fn enumerate(&self) -> Result<impl Iterator<Item = Digraph>> {
        self.check_ceiling()?;
        let this = *self;
        let slots = self.slots();
        Ok((0..self.count()).map(move |k| {
            let mut d = Digraph::empty(this.order());
            this.fill(&slots, k, &mut d);
            d
        }))
    }

    /// Index range of shard `i` out of `k`.
    pub fn shard_range(&self, i: usize, k: usize) -> std::ops::Range<u64> {
        let total = self.count() as u128;
        let lo = total * i as u128 / k as u128;
        let hi = total * (i as u128 + 1) / k as u128;
        lo as u64..hi as u64
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Class::AllDigraphs { n } => write!(f, "all_digraphs,{n}"),
            Class::Tournaments { n } => write!(f, "tournaments,{n}"),
            Class::BipartiteTournaments { a, b } => write!(f, "bipartite_tournaments,{a},{b}"),
            Class::SymmetricDigraphs { n } => write!(f, "symmetric_digraphs,{n}"),
        }
    }
}

/// A named filter. Filters in a query are evaluated in increasing
/// [`Predicate::cost`] order: degree filters, then strength, then
/// good/bad, then distance metrics, then full verifier runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Predicate {
    Tournament,
    Bipartite,
    Symmetric,
    Regular,
    NonRegular,
    Strong,
    /// Same as `Strong`; reads better for symmetric digraphs.
    Connected,
    Good,
    Bad,
    PiEqRho,
    PiNeRho,
    PiEqOne,
    RhoEqOne,
    PiEqHalfN,
    RhoEqHalfN,
    /// `rho - pi = n/2 - 1`.
    SpreadMax,
    /// The check applies and some equality case of it is observed.
    Equality(Check),
}

impl Predicate {
    pub fn cost(&self) -> u8 {
        match self {
            Predicate::Tournament
            | Predicate::Bipartite
            | Predicate::Symmetric
            | Predicate::Regular
            | Predicate::NonRegular => 0,
            Predicate::Strong | Predicate::Connected => 1,
            Predicate::Good | Predicate::Bad => 2,
            Predicate::Equality(_) => 4,
            _ => 3,
        }
    }

    /// Parses a comma-separated conjunction and sorts it by cost.
    pub fn parse_list(s: &str) -> Result<Vec<Predicate>> {
        let mut out: Vec<Predicate> = s
            .split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(str::parse)
            .collect::<Result<_>>()?;
        out.sort_by_key(|p| p.cost());
        out.dedup();
        Ok(out)
    }

    fn name(&self) -> String {
        match self {
            Predicate::Tournament => "tournament".into(),
            Predicate::Bipartite => "bipartite".into(),
            Predicate::Symmetric => "symmetric".into(),
            Predicate::Regular => "regular".into(),
            Predicate::NonRegular => "non_regular".into(),
            Predicate::Strong => "strong".into(),
            Predicate::Connected => "connected".into(),
            Predicate::Good => "good".into(),
            Predicate::Bad => "bad".into(),
            Predicate::PiEqRho => "pi_eq_rho".into(),
            Predicate::PiNeRho => "pi_ne_rho".into(),
            Predicate::PiEqOne => "pi_eq_one".into(),
            Predicate::RhoEqOne => "rho_eq_one".into(),
            Predicate::PiEqHalfN => "pi_eq_half_n".into(),
            Predicate::RhoEqHalfN => "rho_eq_half_n".into(),
            Predicate::SpreadMax => "spread_max".into(),
            Predicate::Equality(c) => format!("eq:{c}"),
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(check) = s.strip_prefix("eq:") {
            return Ok(Predicate::Equality(check.parse()?));
        }
        Ok(match s {
            "tournament" => Predicate::Tournament,
            "bipartite" => Predicate::Bipartite,
            "symmetric" => Predicate::Symmetric,
            "regular" => Predicate::Regular,
            "non_regular" => Predicate::NonRegular,
            "strong" => Predicate::Strong,
            "connected" => Predicate::Connected,
            "good" => Predicate::Good,
            "bad" => Predicate::Bad,
            "pi_eq_rho" => Predicate::PiEqRho,
            "pi_ne_rho" => Predicate::PiNeRho,
            "pi_eq_one" => Predicate::PiEqOne,
            "rho_eq_one" => Predicate::RhoEqOne,
            "pi_eq_half_n" => Predicate::PiEqHalfN,
            "rho_eq_half_n" => Predicate::RhoEqHalfN,
            "spread_max" => Predicate::SpreadMax,
            _ => return Err(Error::InvalidParameter(format!("unknown predicate `{s}`"))),
        })
    }
}

/// Lazily computed facts shared by the predicates of one candidate.
struct Candidate<'a> {
    d: &'a Digraph,
    parts: Option<Option<PartiteStructure>>,
    known_parts: Option<&'a PartiteStructure>,
    sigma: Option<Option<(u64, u64)>>,
}

impl<'a> Candidate<'a> {
    fn new(d: &'a Digraph, known_parts: Option<&'a PartiteStructure>) -> Self {
        Candidate {
            d,
            parts: None,
            known_parts,
            sigma: None,
        }
    }

    fn parts(&mut self) -> Option<&PartiteStructure> {
        if let Some(p) = self.known_parts {
            return Some(p);
        }
        let d = self.d;
        self.parts
            .get_or_insert_with(|| d.bipartite_tournament_structure())
            .as_ref()
    }

    /// Min and max distance sum, or `None` if not strong.
    fn sigma_range(&mut self) -> Option<(u64, u64)> {
        let d = self.d;
        *self.sigma.get_or_insert_with(|| {
            if !has_degree_for_strength(d) || d.order() < 2 {
                return None;
            }
            let se = metrics::sigma_ecc_all(d).ok()?;
            Some((
                se.iter().map(|p| p.0).min().unwrap(),
                se.iter().map(|p| p.0).max().unwrap(),
            ))
        })
    }

    fn test(&mut self, p: Predicate) -> bool {
        let d = self.d;
        let n = d.order() as u64;
        // sigma / (n - 1) == q  <=>  sigma == q (n - 1); n/2 is checked as 2 sigma == n (n - 1).
        match p {
            Predicate::Tournament => d.is_tournament(),
            Predicate::Bipartite => self.parts().is_some(),
            Predicate::Symmetric => d.is_symmetric(),
            Predicate::Regular => d.is_regular(),
            Predicate::NonRegular => !d.is_regular(),
            Predicate::Strong | Predicate::Connected => {
                if let Some(s) = self.sigma {
                    return s.is_some();
                }
                has_degree_for_strength(d) && d.is_strong()
            }
            Predicate::Good | Predicate::Bad => {
                let d = self.d;
                match self.parts() {
                    Some(s) => bipartite::classify_with(d, s).good == (p == Predicate::Good),
                    None => false,
                }
            }
            Predicate::PiEqRho => self.sigma_range().is_some_and(|(lo, hi)| lo == hi),
            Predicate::PiNeRho => self.sigma_range().is_some_and(|(lo, hi)| lo != hi),
            Predicate::PiEqOne => self.sigma_range().is_some_and(|(lo, _)| lo == n - 1),
            Predicate::RhoEqOne => self.sigma_range().is_some_and(|(_, hi)| hi == n - 1),
            Predicate::PiEqHalfN => self.sigma_range().is_some_and(|(lo, _)| 2 * lo == n * (n - 1)),
            Predicate::RhoEqHalfN => self.sigma_range().is_some_and(|(_, hi)| 2 * hi == n * (n - 1)),
            // (hi - lo) / (n - 1) = n/2 - 1  <=>  2 (hi - lo) = (n - 2)(n - 1)
            Predicate::SpreadMax => self
                .sigma_range()
                .is_some_and(|(lo, hi)| n >= 2 && 2 * (hi - lo) == (n - 2) * (n - 1)),
            Predicate::Equality(check) => {
                let inst = match self.known_parts {
                    Some(s) => Instance::with_parts(d, s.clone()),
                    None => Instance::new(d),
                };
                check.applies(&inst)
                    && check
                        .run(&inst)
                        .is_ok_and(|r| r.cases.iter().any(|c| c.observed))
            }
        }
    }
}

/// Every vertex has an in-arc and an out-arc; necessary for strength when `n >= 2`.
fn has_degree_for_strength(d: &Digraph) -> bool {
    d.order() == 1 || (0..d.order()).all(|v| d.out_degree(v) > 0 && d.in_degree(v) > 0)
}

/// Whether `d` passes every predicate, evaluated in the given order.
pub fn matches(d: &Digraph, predicates: &[Predicate], parts: Option<&PartiteStructure>) -> bool {
    let mut c = Candidate::new(d, parts);
    predicates.iter().all(|&p| c.test(p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Dedup {
    #[default]
    None,
    /// Keep one member per isomorphism class (part-respecting for bipartite
    /// classes), reported by its canonical relabeling.
    Canonical,
}

impl FromStr for Dedup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Dedup::None),
            "canonical" => Ok(Dedup::Canonical),
            _ => Err(Error::InvalidParameter(format!("unknown dedup mode `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchQuery {
    pub class: Class,
    pub predicates: Vec<Predicate>,
    pub dedup: Dedup,
    /// Applied after sorting, so the kept prefix does not depend on sharding.
    pub limit: Option<usize>,
    pub shards: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Match {
    pub digraph6: String,
    /// Present when the match is strong with at least two vertices.
    pub metrics: Option<MetricsReport>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DedupStats {
    pub labeled_matches: u64,
    pub classes: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    pub query: String,
    pub scanned: u64,
    pub matched: u64,
    pub elapsed_ms: u128,
    pub dedup_stats: Option<DedupStats>,
    /// Sorted by digraph6.
    pub matches: Vec<Match>,
}

fn pool(shards: usize) -> Result<rayon::ThreadPool> {
    if shards == 0 {
        return Err(Error::InvalidParameter("shards must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(shards)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("cannot start worker pool: {e}")))
}

/// Chunks per worker; extra chunks keep workers busy when shards are uneven.
const CHUNKS_PER_SHARD: usize = 8;

/// Visits every member of `class`, split into contiguous chunks processed
/// on `shards` worker threads. Each chunk folds into its own state; states
/// come back in index order.
fn fold_chunks<S: Send>(
    class: Class,
    shards: usize,
    init: impl Fn() -> S + Sync,
    visit: impl Fn(&mut S, u64, &Digraph) + Sync,
) -> Result<Vec<S>> {
    class.check_ceiling()?;
    let pool = pool(shards)?;
    let chunks = (shards * CHUNKS_PER_SHARD).min(class.count() as usize).max(1);
    let slots = class.slots();
    Ok(pool.install(|| {
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut state = init();
                let mut d = Digraph::empty(class.order());
                for k in class.shard_range(c, chunks) {
                    class.fill(&slots, k, &mut d);
                    visit(&mut state, k, &d);
                }
                state
            })
            .collect()
    }))
}

pub fn search(q: &SearchQuery) -> Result<SearchResult> {
    let start = Instant::now();
    let parts = q.class.parts();
    let chunks = fold_chunks(
        q.class,
        q.shards,
        || (0u64, Vec::new()),
        |(scanned, found), _, d| {
            *scanned += 1;
            if matches(d, &q.predicates, parts.as_ref()) {
                found.push(d.clone());
            }
        },
    )?;
    let scanned = chunks.iter().map(|c| c.0).sum();
    let labeled: Vec<Digraph> = chunks.into_iter().flat_map(|c| c.1).collect();
    let matched = labeled.len() as u64;
    let (reps, dedup_stats) = match q.dedup {
        Dedup::None => (labeled, None),
        Dedup::Canonical => {
            let pool = pool(q.shards)?;
            let forms: Vec<canon::CanonicalForm> = pool.install(|| {
                labeled
                    .par_iter()
                    .map(|d| canon::canonical_form(d, parts.as_ref()))
                    .collect::<Result<_>>()
            })?;
            let classes: BTreeSet<canon::CanonicalForm> = forms.into_iter().collect();
            let reps: Vec<Digraph> = classes.iter().map(|f| f.to_digraph()).collect();
            let stats = DedupStats {
                labeled_matches: matched,
                classes: reps.len() as u64,
            };
            (reps, Some(stats))
        }
    };
    let mut matches: Vec<Match> = reps
        .iter()
        .map(|d| Match {
            digraph6: format::to_digraph6(d),
            metrics: MetricsReport::compute(d).ok(),
        })
        .collect();
    matches.sort_by(|a, b| a.digraph6.cmp(&b.digraph6));
    if let Some(limit) = q.limit {
        matches.truncate(limit);
    }
    let preds: Vec<String> = q.predicates.iter().map(|p| p.to_string()).collect();
    Ok(SearchResult {
        query: format!("{} [{}]", q.class, preds.join(",")),
        scanned,
        matched,
        elapsed_ms: start.elapsed().as_millis(),
        dedup_stats,
        matches,
    })
}

/// Per-check tallies from an exhaustive run.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct CheckTally {
    /// Members meeting the check's hypotheses.
    pub applicable: u64,
    pub bound_failures: u64,
    pub inconsistencies: u64,
    /// Per equality case: `(observed, predicted)` counts.
    pub cases: BTreeMap<String, (u64, u64)>,
}

impl CheckTally {
    fn merge(&mut self, other: CheckTally) {
        self.applicable += other.applicable;
        self.bound_failures += other.bound_failures;
        self.inconsistencies += other.inconsistencies;
        for (k, (o, p)) in other.cases {
            let e = self.cases.entry(k).or_default();
            e.0 += o;
            e.1 += p;
        }
    }
}

/// Counterexamples kept in full; further ones are only counted.
pub const MAX_COUNTEREXAMPLES: usize = 32;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExhaustiveSummary {
    pub class: String,
    pub scanned: u64,
    pub strong: u64,
    pub elapsed_ms: u128,
    pub tallies: BTreeMap<String, CheckTally>,
    /// The first failing reports in index order.
    pub counterexamples: Vec<VerificationReport>,
}

impl ExhaustiveSummary {
    pub fn passed(&self) -> bool {
        self.tallies
            .values()
            .all(|t| t.bound_failures == 0 && t.inconsistencies == 0)
    }
}

/// Runs `checks` on every strong member of `class` (every tournament for
/// the 2-king check, which does not need strength).
pub fn exhaustive_verify(checks: &[Check], class: Class, shards: usize) -> Result<ExhaustiveSummary> {
    let start = Instant::now();
    let parts = class.parts();
    type Chunk = (u64, u64, Vec<CheckTally>, Vec<(u64, VerificationReport)>);
    let two_king = checks.contains(&Check::TournamentTwoKing);
    let chunks: Vec<Chunk> = fold_chunks(
        class,
        shards,
        || (0, 0, vec![CheckTally::default(); checks.len()], Vec::new()),
        |(scanned, strong, tallies, failures), k, d| {
            *scanned += 1;
            if !two_king && !has_degree_for_strength(d) {
                return;
            }
            let inst = match &parts {
                Some(s) => Instance::with_parts(d, s.clone()),
                None => Instance::new(d),
            };
            *strong += inst.strong() as u64;
            for (c, tally) in checks.iter().zip(tallies.iter_mut()) {
                if !c.applies(&inst) {
                    continue;
                }
                let r = c.run(&inst).expect("applicable checks do not fail");
                tally.applicable += 1;
                tally.bound_failures += !r.bound_holds as u64;
                tally.inconsistencies += !r.consistent as u64;
                for case in &r.cases {
                    let e = tally.cases.entry(case.name.to_string()).or_default();
                    e.0 += case.observed as u64;
                    e.1 += case.predicted as u64;
                }
                if !r.passed() && failures.len() < MAX_COUNTEREXAMPLES {
                    failures.push((k, r));
                }
            }
        },
    )?;
    let mut tallies: BTreeMap<String, CheckTally> = BTreeMap::new();
    let mut counterexamples = Vec::new();
    let (mut scanned, mut strong) = (0, 0);
    for (s, st, t, f) in chunks {
        scanned += s;
        strong += st;
        for (c, tally) in checks.iter().zip(t) {
            tallies.entry(c.id().to_string()).or_default().merge(tally);
        }
        counterexamples.extend(f);
    }
    counterexamples.sort_by_key(|(k, _)| *k);
    counterexamples.truncate(MAX_COUNTEREXAMPLES);
    Ok(ExhaustiveSummary {
        class: class.to_string(),
        scanned,
        strong,
        elapsed_ms: start.elapsed().as_millis(),
        tallies,
        counterexamples: counterexamples.into_iter().map(|(_, r)| r).collect(),
    })
}

/// A seeded randomized search over simple graphs on `n` vertices with the
/// given degree sequence, viewed as symmetric digraphs.
#[derive(Debug, Clone, Serialize)]
pub struct RandomQuery {
    pub n: usize,
    /// `degrees[v]` is the degree of vertex `v`.
    pub degrees: Vec<usize>,
    pub predicates: Vec<Predicate>,
    pub seed: u64,
    /// Number of graphs to sample.
    pub budget: u64,
    /// Stop at the first sample isomorphic to this graph.
    #[serde(skip)]
    pub target: Option<Digraph>,
}

/// Parses a degree sequence such as `3^6,4^3` or `3,3,4`.
pub fn parse_degrees(s: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        let bad = || Error::InvalidParameter(format!("bad degree entry `{item}`"));
        let (d, times): (usize, usize) = match item.split_once('^') {
            Some((d, t)) => (d.parse().map_err(|_| bad())?, t.parse().map_err(|_| bad())?),
            None => (item.parse().map_err(|_| bad())?, 1),
        };
        out.extend(std::iter::repeat_n(d, times));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RandomResult {
    pub seed: u64,
    pub budget: u64,
    pub samples: u64,
    /// Samples passing every predicate.
    pub hits: u64,
    /// Isomorphism classes among the hits, as canonical digraph6 strings.
    pub classes: Vec<String>,
    /// 1-based sample index at which the target was first found.
    pub target_found_at: Option<u64>,
    /// The first sample isomorphic to the target.
    pub target_instance: Option<String>,
    pub elapsed_ms: u128,
}

/// Tries to realize `degrees` as a simple graph by randomized backtracking:
/// the vertex with most remaining demand (lowest label on ties) is joined to
/// a random feasible partner, undoing choices on dead ends. Gives up after
/// `step_cap` placements.
fn random_realization(degrees: &[usize], rng: &mut ChaCha8Rng, step_cap: u64) -> Option<Digraph> {
    fn go(
        need: &mut [usize],
        g: &mut Digraph,
        rng: &mut ChaCha8Rng,
        steps: &mut u64,
        cap: u64,
    ) -> bool {
        let n = need.len();
        let Some(v) = (0..n).filter(|&v| need[v] > 0).max_by_key(|&v| (need[v], std::cmp::Reverse(v))) else {
            return true;
        };
        let mut cands: Vec<usize> = (0..n)
            .filter(|&w| w != v && need[w] > 0 && !g.has_arc(v, w))
            .collect();
        if cands.len() < need[v] {
            return false;
        }
        cands.shuffle(rng);
        for w in cands {
            *steps += 1;
            if *steps > cap {
                return false;
            }
            g.add_arc(v, w);
            g.add_arc(w, v);
            need[v] -= 1;
            need[w] -= 1;
            if go(need, g, rng, steps, cap) {
                return true;
            }
            need[v] += 1;
            need[w] += 1;
            g.remove_arc(v, w);
            g.remove_arc(w, v);
        }
        false
    }
    let mut need = degrees.to_vec();
    let mut g = Digraph::empty(degrees.len());
    let mut steps = 0;
    go(&mut need, &mut g, rng, &mut steps, step_cap).then_some(g)
}

/// Restarts allowed per sample before the degree sequence is declared unrealizable.
const RESTARTS: u32 = 64;
const STEP_CAP: u64 = 10_000;

pub fn random_search(q: &RandomQuery) -> Result<RandomResult> {
    let start = Instant::now();
    if q.degrees.len() != q.n {
        return Err(Error::InvalidParameter(format!(
            "degree sequence has {} entries, expected {}",
            q.degrees.len(),
            q.n
        )));
    }
    if q.n == 0 || q.n > canon::CANONICAL_CEILING {
        return Err(Error::CeilingExceeded {
            class: "random symmetric search".into(),
            n: q.n,
            ceiling: format!("1 <= n <= {}", canon::CANONICAL_CEILING),
        });
    }
    let target = match &q.target {
        Some(t) => Some(canon::canonical_form(t, None)?),
        None => None,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(q.seed);
    let mut res = RandomResult {
        seed: q.seed,
        budget: q.budget,
        samples: 0,
        hits: 0,
        classes: Vec::new(),
        target_found_at: None,
        target_instance: None,
        elapsed_ms: 0,
    };
    let mut classes = BTreeSet::new();
    while res.samples < q.budget {
        let g = (0..RESTARTS)
            .find_map(|_| random_realization(&q.degrees, &mut rng, STEP_CAP))
            .ok_or_else(|| Error::InvalidParameter("degree sequence could not be realized".into()))?;
        res.samples += 1;
        if !matches(&g, &q.predicates, None) {
            continue;
        }
        res.hits += 1;
        let form = canon::canonical_form(&g, None)?;
        if target.as_ref() == Some(&form) && res.target_found_at.is_none() {
            res.target_found_at = Some(res.samples);
            res.target_instance = Some(format::to_digraph6(&g));
            classes.insert(form);
            break;
        }
        classes.insert(form);
    }
    res.classes = classes.iter().map(|f| f.digraph6()).collect();
    res.elapsed_ms = start.elapsed().as_millis();
    Ok(res)
}
