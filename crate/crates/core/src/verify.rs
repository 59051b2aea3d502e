//! Per-instance checks of the bounds on proximity and remoteness and of the
//! structural characterizations of when each bound is attained.
//!
//! Each check reports whether its bound holds and, for every equality case,
//! whether equality was observed in the exact metrics and whether the
//! structural characterization predicted it. Predictions only look at
//! degrees, isomorphism type, eccentricities and neighbourhood classes,
//! never at the distance sums being checked.

use std::cell::OnceCell;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::bipartite;
use crate::canon;
use crate::constructions;
use crate::digraph::{DegreeSummary, Digraph, PartiteStructure};
use crate::error::{Error, Result};
use crate::format;
use crate::metrics::{self, bfs_profile};
use crate::rational::Rational;

/// The individual checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// `1 <= pi <= n/2`; `pi = 1` iff some vertex beats all others; `pi = n/2` iff dicycle.
    ProximityBounds,
    /// `1 <= rho <= n/2`; `rho = 1` iff complete; `rho = n/2` iff some vertex has eccentricity `n-1`.
    RemotenessBounds,
    /// `rho - pi <= n/2 - 1`, with its equality family.
    SpreadBound,
    /// Every maximum out-degree vertex of a tournament is a 2-king.
    TournamentTwoKing,
    /// Proximity bounds for strong tournaments.
    TournamentProximityBounds,
    /// Remoteness bounds for strong tournaments.
    TournamentRemotenessBounds,
    /// A strong tournament has `pi = rho` iff it is regular.
    TournamentEqualIffRegular,
    /// A bad strong bipartite tournament has `pi != rho`.
    BadBipartiteUnequal,
    /// Every vertex of a good strong bipartite tournament is a 4-king.
    GoodBipartiteFourKing,
    /// Closed-form distance sums of good strong bipartite tournaments.
    BipartiteSigmaFormula,
    /// `pi = rho` iff good and `2(mu - d+) + |other part|` is constant.
    BipartiteEqualityCriterion,
    /// With constant `mu`: `pi = rho` iff every vertex beats half of the other part.
    BipartiteUniformClassCriterion,
    /// The chain `pi <= rho <= diam`, `pi <= rad <= diam`, `1 <= diam <= n-1`,
    /// plus the dicycle's single-vertex distance layers.
    DigraphRadiusFacts,
}

impl Check {
    pub const ALL: [Check; 13] = [
        Check::ProximityBounds,
        Check::RemotenessBounds,
        Check::SpreadBound,
        Check::TournamentTwoKing,
        Check::TournamentProximityBounds,
        Check::TournamentRemotenessBounds,
        Check::TournamentEqualIffRegular,
        Check::BadBipartiteUnequal,
        Check::GoodBipartiteFourKing,
        Check::BipartiteSigmaFormula,
        Check::BipartiteEqualityCriterion,
        Check::BipartiteUniformClassCriterion,
        Check::DigraphRadiusFacts,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Check::ProximityBounds => "proximity-bounds",
            Check::RemotenessBounds => "remoteness-bounds",
            Check::SpreadBound => "spread-bound",
            Check::TournamentTwoKing => "tournament-two-king",
            Check::TournamentProximityBounds => "tournament-proximity-bounds",
            Check::TournamentRemotenessBounds => "tournament-remoteness-bounds",
            Check::TournamentEqualIffRegular => "tournament-equal-iff-regular",
            Check::BadBipartiteUnequal => "bad-bipartite-unequal",
            Check::GoodBipartiteFourKing => "good-bipartite-four-king",
            Check::BipartiteSigmaFormula => "bipartite-sigma-formula",
            Check::BipartiteEqualityCriterion => "bipartite-equality-criterion",
            Check::BipartiteUniformClassCriterion => "bipartite-uniform-class-criterion",
            Check::DigraphRadiusFacts => "digraph-radius-facts",
        }
    }

    /// Named groups accepted wherever a check id is.
    pub fn parse_list(s: &str) -> Result<Vec<Check>> {
        let mut out = Vec::new();
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let group: &[Check] = match item {
                "digraph" => &[Check::ProximityBounds, Check::RemotenessBounds, Check::SpreadBound],
                "tournament" => &[
                    Check::TournamentTwoKing,
                    Check::TournamentProximityBounds,
                    Check::TournamentRemotenessBounds,
                    Check::TournamentEqualIffRegular,
                ],
                "bipartite" => &[
                    Check::BadBipartiteUnequal,
                    Check::GoodBipartiteFourKing,
                    Check::BipartiteSigmaFormula,
                    Check::BipartiteEqualityCriterion,
                    Check::BipartiteUniformClassCriterion,
                ],
                "all" => &Check::ALL,
                _ => {
                    out.push(item.parse()?);
                    continue;
                }
            };
            out.extend_from_slice(group);
        }
        out.dedup();
        Ok(out)
    }

    /// Whether the instance meets the check's hypotheses.
    pub fn applies(self, inst: &Instance) -> bool {
        let n = inst.d.order();
        match self {
            Check::ProximityBounds | Check::RemotenessBounds => n >= 3 && inst.strong(),
            Check::SpreadBound | Check::DigraphRadiusFacts => n >= 2 && inst.strong(),
            Check::TournamentTwoKing => inst.tournament,
            Check::TournamentProximityBounds
            | Check::TournamentRemotenessBounds
            | Check::TournamentEqualIffRegular => inst.tournament && n >= 3 && inst.strong(),
            Check::BadBipartiteUnequal
            | Check::GoodBipartiteFourKing
            | Check::BipartiteSigmaFormula
            | Check::BipartiteEqualityCriterion
            | Check::BipartiteUniformClassCriterion => inst.strong() && inst.parts().is_some(),
        }
    }

    pub fn run(self, inst: &Instance) -> Result<VerificationReport> {
        if !self.applies(inst) {
            if let Some(se_err) = inst.not_strong() {
                if !matches!(self, Check::TournamentTwoKing) {
                    return Err(se_err);
                }
            }
            return Err(Error::Precondition(format!(
                "{} does not apply to this digraph",
                self.id()
            )));
        }
        let mut r = match self {
            Check::ProximityBounds => proximity_bounds(inst),
            Check::RemotenessBounds => remoteness_bounds(inst),
            Check::SpreadBound => spread_bound(inst),
            Check::TournamentTwoKing => tournament_two_king(inst),
            Check::TournamentProximityBounds => tournament_proximity(inst),
            Check::TournamentRemotenessBounds => tournament_remoteness(inst)?,
            Check::TournamentEqualIffRegular => tournament_equal_iff_regular(inst),
            Check::BadBipartiteUnequal => bad_bipartite(inst),
            Check::GoodBipartiteFourKing => good_four_king(inst),
            Check::BipartiteSigmaFormula => sigma_formula(inst),
            Check::BipartiteEqualityCriterion => equality_criterion(inst),
            Check::BipartiteUniformClassCriterion => uniform_class(inst),
            Check::DigraphRadiusFacts => radius_facts(inst),
        };
        r.finish(inst);
        Ok(r)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| {
                let ids: Vec<_> = Check::ALL.iter().map(|c| c.id()).collect();
                Error::InvalidParameter(format!("unknown check `{s}`; expected one of {}", ids.join(", ")))
            })
    }
}

/// One digraph with the quantities every check shares, computed once.
pub struct Instance<'a> {
    pub d: &'a Digraph,
    /// `(sigma, ecc)` per vertex, or the unreachable pair.
    se: std::result::Result<Vec<(u64, u32)>, (usize, usize)>,
    pub degrees: DegreeSummary,
    pub tournament: bool,
    parts: OnceCell<Option<PartiteStructure>>,
}

impl<'a> Instance<'a> {
    pub fn new(d: &'a Digraph) -> Self {
        let se = match metrics::sigma_ecc_all(d) {
            Ok(v) => Ok(v),
            Err(Error::NotStrong { from, to }) => Err((from, to)),
            Err(e) => unreachable!("sigma_ecc_all only fails on strength: {e}"),
        };
        Instance {
            d,
            se,
            degrees: d.degree_summary(),
            tournament: d.is_tournament(),
            parts: OnceCell::new(),
        }
    }

    /// Uses a known bipartition instead of detecting it.
    pub fn with_parts(d: &'a Digraph, parts: PartiteStructure) -> Self {
        let inst = Instance::new(d);
        let _ = inst.parts.set(Some(parts));
        inst
    }

    pub fn strong(&self) -> bool {
        self.se.is_ok()
    }

    fn not_strong(&self) -> Option<Error> {
        self.se.as_ref().err().map(|&(from, to)| Error::NotStrong { from, to })
    }

    pub fn parts(&self) -> Option<&PartiteStructure> {
        self.parts
            .get_or_init(|| self.d.bipartite_tournament_structure())
            .as_ref()
    }

    fn se(&self) -> &[(u64, u32)] {
        self.se.as_ref().expect("checks run on strong digraphs only")
    }

    fn n(&self) -> usize {
        self.d.order()
    }

    fn sigma_min_max(&self) -> (u64, u64) {
        let se = self.se();
        (
            se.iter().map(|p| p.0).min().unwrap(),
            se.iter().map(|p| p.0).max().unwrap(),
        )
    }

    pub fn pi(&self) -> Rational {
        Rational::new(self.sigma_min_max().0 as i64, self.n() as i64 - 1)
    }

    pub fn rho(&self) -> Rational {
        Rational::new(self.sigma_min_max().1 as i64, self.n() as i64 - 1)
    }

    /// Vertex orderings `v1 ... vn` forming a Hamiltonian dipath without
    /// forward shortcuts, one per vertex of eccentricity `n - 1`, read off its
    /// BFS layers (all singletons).
    pub fn hamiltonian_orderings(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let d = self.d;
        (0..n)
            .filter(|&u| self.se()[u].1 as usize == n - 1)
            .filter_map(|u| {
                let p = bfs_profile(d, u).ok()?;
                let order: Vec<usize> = (0..n as u32).map(|i| p.layer(i)).map(|l| l[0]).collect();
                let path = order.windows(2).all(|w| d.has_arc(w[0], w[1]));
                let no_shortcut = (0..n).all(|i| (i + 2..n).all(|j| !d.has_arc(order[i], order[j])));
                (path && no_shortcut).then_some(order)
            })
            .collect()
    }
}

/// One equality case: was equality seen, and did the characterization predict it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EqualityCase {
    pub name: &'static str,
    pub observed: bool,
    pub predicted: bool,
}

/// The digraph and its distance table, attached to any failing report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub digraph6: String,
    pub sigma: Vec<u64>,
    pub ecc: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check: Check,
    pub n: usize,
    pub bound_holds: bool,
    pub cases: Vec<EqualityCase>,
    /// Every case has `observed == predicted`.
    pub consistent: bool,
    pub witnesses: Vec<usize>,
    pub details: BTreeMap<String, Value>,
    pub certificate: Option<Certificate>,
}

impl VerificationReport {
    fn new(check: Check, inst: &Instance) -> Self {
        VerificationReport {
            check,
            n: inst.n(),
            bound_holds: true,
            cases: Vec::new(),
            consistent: true,
            witnesses: Vec::new(),
            details: BTreeMap::new(),
            certificate: None,
        }
    }

    fn case(&mut self, name: &'static str, observed: bool, predicted: bool) {
        self.cases.push(EqualityCase {
            name,
            observed,
            predicted,
        });
    }

    fn detail(&mut self, key: &str, v: Value) {
        self.details.insert(key.to_string(), v);
    }

    fn finish(&mut self, inst: &Instance) {
        self.consistent = self.cases.iter().all(|c| c.observed == c.predicted);
        if !self.passed() {
            self.certificate = Some(Certificate {
                digraph6: format::to_digraph6(inst.d),
                sigma: inst.se.as_ref().map(|v| v.iter().map(|p| p.0).collect()).unwrap_or_default(),
                ecc: inst.se.as_ref().map(|v| v.iter().map(|p| p.1).collect()).unwrap_or_default(),
            });
        }
    }

    /// Bound holds and every characterization agrees with what was observed.
    pub fn passed(&self) -> bool {
        self.bound_holds && self.consistent
    }
}

fn half(n: usize) -> Rational {
    Rational::new(n as i64, 2)
}

fn is_dicycle(inst: &Instance) -> bool {
    let s = &inst.degrees;
    inst.d.size() == inst.n() && s.max_semi == 1 && s.min_semi == 1 && inst.strong()
}

fn proximity_bounds(inst: &Instance) -> VerificationReport {
    let mut r = VerificationReport::new(Check::ProximityBounds, inst);
    let (n, pi, one) = (inst.n(), inst.pi(), Rational::integer(1));
    r.bound_holds = one <= pi && pi <= half(n);
    let hubs: Vec<usize> = (0..n).filter(|&v| inst.degrees.out_degrees[v] == n - 1).collect();
    r.case("pi = 1", pi == one, !hubs.is_empty());
    r.case("pi = n/2", pi == half(n), is_dicycle(inst));
    r.witnesses = hubs;
    r.detail("pi", json!(pi));
    r
}

fn remoteness_bounds(inst: &Instance) -> VerificationReport {
    let mut r = VerificationReport::new(Check::RemotenessBounds, inst);
    let (n, rho, one) = (inst.n(), inst.rho(), Rational::integer(1));
    r.bound_holds = one <= rho && rho <= half(n);
    r.case("rho = 1", rho == one, inst.d.is_complete());
    let orderings = inst.hamiltonian_orderings();
    r.case("rho = n/2", rho == half(n), !orderings.is_empty());
    if let Some(o) = orderings.first() {
        r.witnesses = vec![o[0]];
        r.detail("hamiltonian_ordering", json!(o));
    }
    r.detail("rho", json!(rho));
    r
}

fn spread_bound(inst: &Instance) -> VerificationReport {
    let mut r = VerificationReport::new(Check::SpreadBound, inst);
    let n = inst.n();
    let spread = inst.rho() - inst.pi();
    let cap = half(n) - Rational::integer(1);
    r.bound_holds = spread <= cap;
    let out = &inst.degrees.out_degrees;
    let witness = inst
        .hamiltonian_orderings()
        .into_iter()
        .find(|o| out[o[n - 2]] == n - 1 || out[o[n - 1]] == n - 1);
    r.case("rho - pi = n/2 - 1", spread == cap, witness.is_some());
    if let Some(o) = witness {
        r.witnesses = vec![o[0]];
        r.detail("hamiltonian_ordering", json!(o));
    }
    r.detail("spread", json!(spread));
    r
}

fn tournament_two_king(inst: &Instance) -> VerificationReport {
    let mut r = VerificationReport::new(Check::TournamentTwoKing, inst);
    let d = inst.d;
    let max_out = inst.degrees.max_out;
    let kings: Vec<usize> = (0..inst.n()).filter(|&v| metrics::is_p_king(d, v, 2)).collect();
    let maxima: Vec<usize> = (0..inst.n())
        .filter(|&v| inst.degrees.out_degrees[v] == max_out)
        .collect();
    r.bound_holds = !kings.is_empty() && maxima.iter().all(|v| kings.contains(v));
    r.witnesses = maxima;
    r.detail("two_kings", json!(kings));
    r
}

/// Out-degree pattern: `(n-1)/2` everywhere for odd `n`, `n/2` or `(n-2)/2` for even `n`.
fn regular_or_almost(inst: &Instance) -> bool {
    let n = inst.n();
    inst.degrees.out_degrees.iter().all(|&d| {
        if n % 2 == 1 {
            2 * d == n - 1
        } else {
            2 * d == n || 2 * d + 2 == n
        }
    })
}

fn tournament_proximity(inst: &Instance) -> VerificationReport {
    let mut r = VerificationReport::new(Check::TournamentProximityBounds, inst);
    let n = inst.n();
    let pi = inst.pi();
    let lower = Rational::new(n as i64, n as i64 - 1);
    let upper = if n % 2 == 1 {
        Rational::new(3, 2)
    } else {
        Rational::new(3, 2) - Rational::new(1, 2 * (n as i64 - 1))
    };
    r.bound_holds = lower <= pi && pi <= upper;
    r.case("pi = n/(n-1)", pi == lower, inst.degrees.max_out == n - 2);
    r.case("pi = upper", pi == upper, regular_or_almost(inst));
    r.detail("lower", json!(lower));
    r.detail("upper", json!(upper));
    r.detail("pi", json!(pi));
    r
}

/// Whether `d` is isomorphic to the extremal tournament of its order.
///
/// Up to the canonical-form ceiling this compares canonical forms; above it,
/// it checks that some BFS layer ordering from a vertex of out-degree 1
/// reproduces the extremal tournament arc for arc.
pub fn is_extremal_tournament(d: &Digraph) -> Result<bool> {
    let n = d.order();
    if n < 3 || !d.is_tournament() {
        return Ok(false);
    }
    let t = constructions::extremal_tournament(n)?;
    if n <= canon::CANONICAL_CEILING {
        return canon::is_isomorphic(d, &t);
    }
    for u in (0..n).filter(|&u| d.out_degree(u) == 1) {
        let p = bfs_profile(d, u)?;
        if p.distance_degree.len() != n {
            continue;
        }
        let order: Vec<usize> = (0..n as u32).map(|i| p.layer(i)[0]).collect();
        let mut perm = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            perm[v] = i;
        }
        if d.permute(&perm) == t {
            return Ok(true);
        }
    }
    Ok(false)
}

fn tournament_remoteness(inst: &Instance) -> Result<VerificationReport> {
    let mut r = VerificationReport::new(Check::TournamentRemotenessBounds, inst);
    let n = inst.n();
    let rho = inst.rho();
    let lower = if n % 2 == 1 {
        Rational::new(3, 2)
    } else {
        Rational::new(3, 2) + Rational::new(1, 2 * (n as i64 - 1))
    };
    r.bound_holds = lower <= rho && rho <= half(n);
    r.case("rho = lower", rho == lower, regular_or_almost(inst));
    r.case("rho = n/2", rho == half(n), is_extremal_tournament(inst.d)?);
    r.detail("lower", json!(lower));
    r.detail("rho", json!(rho));
    Ok(r)
}

fn tournament_equal_iff_regular(inst: &Instance) -> VerificationReport {
    let mut r = VerificationReport::new(Check::TournamentEqualIffRegular, inst);
    let regular = inst.degrees.min_semi == inst.degrees.max_semi;
    r.case("pi = rho", inst.pi() == inst.rho(), regular);
    r
}

fn bad_bipartite(inst: &Instance) -> VerificationReport {
    let mut r = VerificationReport::new(Check::BadBipartiteUnequal, inst);
    let gb = bipartite::classify_with(inst.d, inst.parts().unwrap());
    if let Some((u, v)) = gb.bad_witness {
        r.case("pi != rho", inst.pi() != inst.rho(), true);
        r.witnesses = vec![u, v];
    }
    r.detail("good", json!(gb.good));
    r
}

fn good_four_king(inst: &Instance) -> VerificationReport {
    let mut r = VerificationReport::new(Check::GoodBipartiteFourKing, inst);
    let gb = bipartite::classify_with(inst.d, inst.parts().unwrap());
    if gb.good {
        let failing: Vec<usize> = (0..inst.n())
            .filter(|&v| !metrics::is_p_king(inst.d, v, 4))
            .collect();
        r.bound_holds = failing.is_empty();
        r.witnesses = failing;
    }
    r.detail("good", json!(gb.good));
    r
}

fn sigma_formula(inst: &Instance) -> VerificationReport {
    let mut r = VerificationReport::new(Check::BipartiteSigmaFormula, inst);
    let report = bipartite::report_with(inst.d, inst.parts().unwrap().clone(), inst.se());
    if report.good {
        let four_king = (0..inst.n()).all(|v| metrics::is_p_king(inst.d, v, 4));
        let mismatched: Vec<usize> = report
            .per_vertex
            .iter()
            .filter(|row| row.sigma_formula != Some(row.sigma as i64))
            .map(|row| row.vertex)
            .collect();
        r.bound_holds = four_king && mismatched.is_empty();
        r.witnesses = mismatched;
        r.detail("four_king", json!(four_king));
    }
    r.detail("good", json!(report.good));
    r
}

fn equality_criterion(inst: &Instance) -> VerificationReport {
    let mut r = VerificationReport::new(Check::BipartiteEqualityCriterion, inst);
    let report = bipartite::report_with(inst.d, inst.parts().unwrap().clone(), inst.se());
    r.case("pi = rho", inst.pi() == inst.rho(), report.criterion_predicts_equal);
    r.bound_holds = report.pairwise_relations_hold != Some(false);
    r.detail("good", json!(report.good));
    r.detail("constant_c", json!(report.constant_c));
    r
}

fn uniform_class(inst: &Instance) -> VerificationReport {
    let mut r = VerificationReport::new(Check::BipartiteUniformClassCriterion, inst);
    let parts = inst.parts().unwrap();
    let gb = bipartite::classify_with(inst.d, parts);
    let classes = bipartite::classes_with(inst.d, parts);
    let uniform = classes.iter().all(|c| c.mu() == classes[0].mu());
    if gb.good && uniform {
        let predicted = bipartite::half_degree_condition(inst.d, parts);
        r.case("pi = rho", inst.pi() == inst.rho(), predicted);
        r.detail("mu", json!(classes[0].mu()));
    }
    r.detail("good", json!(gb.good));
    r.detail("uniform_mu", json!(uniform));
    r
}

fn radius_facts(inst: &Instance) -> VerificationReport {
    let mut r = VerificationReport::new(Check::DigraphRadiusFacts, inst);
    let se = inst.se();
    let n = inst.n() as u32;
    let rad = se.iter().map(|p| p.1).min().unwrap();
    let diam = se.iter().map(|p| p.1).max().unwrap();
    let (pi, rho) = (inst.pi(), inst.rho());
    let (rad_q, diam_q) = (Rational::integer(rad as i64), Rational::integer(diam as i64));
    r.bound_holds = pi <= rho
        && rad <= diam
        && pi <= rad_q
        && rho <= diam_q
        && 1 <= diam
        && diam < n;
    if is_dicycle(inst) {
        let single_layers = (0..inst.n()).all(|v| {
            bfs_profile(inst.d, v)
                .map(|p| p.distance_degree.iter().all(|&c| c == 1))
                .unwrap_or(false)
        });
        r.bound_holds &= single_layers && rad == n - 1;
        r.detail("dicycle_single_layers", json!(single_layers));
    }
    r.detail("radius", json!(rad));
    r.detail("diameter", json!(diam));
    r
}

/// The two families whose radius behaviour differs from connected graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RadiusFamily {
    Dicycle { n: usize },
    Hub { n: usize, c: usize },
}

/// Checks the radius facts that fail for strong digraphs on a named family.
///
/// Hub digraphs: `diam > 2 rad` (for `n >= 4`) and `rad < rho`. Dicycles:
/// `rad > rho`, exactly one vertex at each distance `1..n-1` from every
/// vertex, and `rad = n - 1 > floor(n/2)`.
pub fn verify_radius_family(family: RadiusFamily) -> Result<VerificationReport> {
    let d = match family {
        RadiusFamily::Dicycle { n } => constructions::dicycle(n)?,
        RadiusFamily::Hub { n, c } => constructions::hub_digraph(n, c)?,
    };
    let inst = Instance::new(&d);
    let mut r = VerificationReport::new(Check::DigraphRadiusFacts, &inst);
    let se = inst.se();
    let n = d.order();
    let rad = se.iter().map(|p| p.1).min().unwrap() as usize;
    let diam = se.iter().map(|p| p.1).max().unwrap() as usize;
    let rho = inst.rho();
    let rad_q = Rational::integer(rad as i64);
    match family {
        RadiusFamily::Hub { .. } => {
            if n < 3 {
                return Err(Error::InvalidParameter("needs n >= 3".into()));
            }
            let diam_gt = diam > 2 * rad;
            r.bound_holds = rad_q < rho && (n < 4 || diam_gt);
            r.detail("diam_gt_2rad", json!(diam_gt));
        }
        RadiusFamily::Dicycle { .. } => {
            if n < 3 {
                return Err(Error::InvalidParameter("needs n >= 3".into()));
            }
            let single_layers = (0..n).all(|v| {
                let p = bfs_profile(&d, v).expect("vertex in range");
                (1..=n - 1).all(|i| p.layer(i as u32).len() == 1)
            });
            r.bound_holds = rad_q > rho && single_layers && rad == n - 1 && rad > n / 2;
            r.detail("single_layers", json!(single_layers));
        }
    }
    r.witnesses = (0..n).filter(|&v| se[v].1 as usize == rad).collect();
    r.detail("radius", json!(rad));
    r.detail("diameter", json!(diam));
    r.detail("rho", json!(rho));
    r.finish(&inst);
    Ok(r)
}

/// Runs every applicable check in `checks` on `d`.
pub fn verify_all(d: &Digraph, checks: &[Check]) -> Vec<VerificationReport> {
    let inst = Instance::new(d);
    checks
        .iter()
        .filter(|c| c.applies(&inst))
        .map(|c| c.run(&inst).expect("applicable checks do not fail"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::*;

    fn run(check: Check, d: &Digraph) -> VerificationReport {
        check.run(&Instance::new(d)).unwrap()
    }

    fn case<'a>(r: &'a VerificationReport, name: &str) -> &'a EqualityCase {
        r.cases.iter().find(|c| c.name == name).unwrap()
    }

    #[test]
    fn dicycle_hits_proximity_upper_bound() {
        let r = run(Check::ProximityBounds, &dicycle(5).unwrap());
        assert!(r.passed());
        let c = case(&r, "pi = n/2");
        assert!(c.observed && c.predicted);
    }

    #[test]
    fn complete_digraph_remoteness_one() {
        let r = run(Check::RemotenessBounds, &Digraph::complete(4));
        assert!(r.passed());
        let c = case(&r, "rho = 1");
        assert!(c.observed && c.predicted);
    }

    #[test]
    fn extremal_tournament_has_long_ordering() {
        let d = extremal_tournament(6).unwrap();
        let r = run(Check::RemotenessBounds, &d);
        assert!(r.passed());
        assert!(case(&r, "rho = n/2").observed);
        assert_eq!(r.details["hamiltonian_ordering"], json!([0, 1, 2, 3, 4, 5]));
    }

    #[test]
    fn spread_equality_on_hub() {
        for n in 3..9 {
            let r = run(Check::SpreadBound, &hub_digraph(n, n - 1).unwrap());
            assert!(r.passed(), "{r:?}");
            let c = case(&r, "rho - pi = n/2 - 1");
            assert!(c.observed && c.predicted, "n = {n}");
        }
        let r = run(Check::SpreadBound, &dicycle(5).unwrap());
        assert!(r.passed() && !case(&r, "rho - pi = n/2 - 1").observed);
        let r = run(Check::SpreadBound, &Digraph::complete(4));
        assert!(r.passed() && !case(&r, "rho - pi = n/2 - 1").observed);
    }

    #[test]
    fn two_kings() {
        assert!(run(Check::TournamentTwoKing, &extremal_tournament(7).unwrap()).passed());
        let r = run(Check::TournamentTwoKing, &dicycle(3).unwrap());
        assert_eq!(r.details["two_kings"], json!([0, 1, 2]));
        let transitive = Digraph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let inst = Instance::new(&transitive);
        let r = Check::TournamentTwoKing.run(&inst).unwrap();
        assert!(r.passed());
        assert_eq!(r.witnesses, vec![0]);
    }

    #[test]
    fn tournament_bounds() {
        let tri = dicycle(3).unwrap();
        let r = run(Check::TournamentProximityBounds, &tri);
        assert!(r.passed() && case(&r, "pi = upper").observed);
        let r = run(Check::TournamentRemotenessBounds, &extremal_tournament(5).unwrap());
        assert!(r.passed() && case(&r, "rho = n/2").observed);
    }

    #[test]
    fn four_vertex_tournament_misses_remoteness_lower_bound() {
        // The only strong tournament on 4 vertices has scores (1,1,2,2), so it
        // is almost regular, yet its remoteness is 2, not 5/3.
        let r = run(Check::TournamentRemotenessBounds, &extremal_tournament(4).unwrap());
        assert_eq!(r.details["lower"], json!(Rational::new(5, 3)));
        assert!(r.bound_holds);
        let c = case(&r, "rho = lower");
        assert!(!c.observed && c.predicted);
        assert!(!r.consistent && r.certificate.is_some());
    }

    #[test]
    fn equal_iff_regular() {
        let r = run(Check::TournamentEqualIffRegular, &rotational_tournament(5).unwrap());
        assert!(r.passed() && case(&r, "pi = rho").observed);
        let r = run(Check::TournamentEqualIffRegular, &extremal_tournament(5).unwrap());
        assert!(r.passed() && !case(&r, "pi = rho").observed);
    }

    #[test]
    fn bipartite_checks_on_families() {
        for d in [bipartite_t1(), bipartite_blowup(2).unwrap(), bipartite_equal(2).unwrap()] {
            for c in Check::parse_list("bipartite").unwrap() {
                let r = run(c, &d);
                assert!(r.passed(), "{c}: {r:?}");
            }
        }
    }

    #[test]
    fn non_applicable_checks_error() {
        let d = dicycle(4).unwrap();
        assert!(Check::TournamentEqualIffRegular.run(&Instance::new(&d)).is_err());
        let path = Digraph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            Check::ProximityBounds.run(&Instance::new(&path)),
            Err(Error::NotStrong { .. })
        ));
    }

    #[test]
    fn radius_families() {
        let r = verify_radius_family(RadiusFamily::Hub { n: 6, c: 2 }).unwrap();
        assert!(r.passed());
        assert_eq!((r.details["radius"].clone(), r.details["diameter"].clone()), (json!(1), json!(5)));
        let r = verify_radius_family(RadiusFamily::Dicycle { n: 7 }).unwrap();
        assert!(r.passed());
        assert_eq!(r.details["radius"], json!(6));
        let r = verify_radius_family(RadiusFamily::Dicycle { n: 3 }).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn extremal_recognition_above_canonical_ceiling() {
        let t = extremal_tournament(14).unwrap();
        let perm: Vec<usize> = (0..14).map(|i| (i * 5) % 14).collect();
        assert!(is_extremal_tournament(&t.permute(&perm)).unwrap());
        assert!(!is_extremal_tournament(&rotational_tournament(13).unwrap()).unwrap());
    }

    #[test]
    fn check_ids_round_trip() {
        for c in Check::ALL {
            assert_eq!(c.id().parse::<Check>().unwrap(), c);
        }
        assert_eq!(Check::parse_list("digraph").unwrap().len(), 3);
        assert!(Check::parse_list("nope").is_err());
    }
}
