//! Distance invariants: BFS distances, distance degree sequences, the
//! distance sum `sigma`, eccentricity, proximity, remoteness, radius and
//! diameter.
//!
//! Everything is integral or an exact [`Rational`]. Since every average
//! distance shares the denominator `n - 1`, comparisons between vertices are
//! done on the integer sums.

use serde::Serialize;

use crate::digraph::{bit, iter_ones, set_bit, DegreeSummary, Digraph};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// BFS output from one source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceProfile {
    pub source: usize,
    /// `None` marks a vertex not reachable from `source`.
    pub dist: Vec<Option<u32>>,
    /// `(n_0, n_1, ..., n_k)` where `n_i` counts vertices at distance exactly `i`.
    pub distance_degree: Vec<usize>,
}

impl DistanceProfile {
    pub fn reaches_all(&self) -> bool {
        self.dist.iter().all(Option::is_some)
    }

    /// Sum of distances to all vertices; undefined unless every vertex is reachable.
    pub fn sigma(&self) -> Option<u64> {
        self.reaches_all().then(|| g_of(&self.distance_degree))
    }

    pub fn ecc(&self) -> Option<u32> {
        self.reaches_all()
            .then(|| self.distance_degree.len() as u32 - 1)
    }

    /// First vertex not reachable from the source.
    pub fn first_unreached(&self) -> Option<usize> {
        self.dist.iter().position(Option::is_none)
    }

    /// Vertices at distance exactly `i`, in label order.
    pub fn layer(&self, i: u32) -> Vec<usize> {
        (0..self.dist.len())
            .filter(|&v| self.dist[v] == Some(i))
            .collect()
    }
}

/// `g(X) = sum of i * x_i`.
pub fn g_of(x: &[usize]) -> u64 {
    x.iter().enumerate().map(|(i, &c)| (i * c) as u64).sum()
}

/// Reusable bitset buffers for layer-by-layer BFS.
pub(crate) struct Bfs {
    visited: Vec<u64>,
    frontier: Vec<u64>,
    next: Vec<u64>,
}

impl Bfs {
    pub(crate) fn new(stride: usize) -> Self {
        Bfs {
            visited: vec![0; stride],
            frontier: vec![0; stride],
            next: vec![0; stride],
        }
    }

    /// Runs BFS from `u`, calling `layer(i, bits)` for each nonempty layer
    /// `i >= 1`, stopping after layer `max_depth`. Returns the number of
    /// vertices reached (including `u`).
    pub(crate) fn run(
        &mut self,
        d: &Digraph,
        u: usize,
        max_depth: usize,
        mut layer: impl FnMut(usize, &[u64]),
    ) -> usize {
        self.visited.iter_mut().for_each(|w| *w = 0);
        self.frontier.iter_mut().for_each(|w| *w = 0);
        set_bit(&mut self.visited, u);
        set_bit(&mut self.frontier, u);
        let mut reached = 1;
        let mut depth = 0;
        while depth < max_depth {
            self.next.iter_mut().for_each(|w| *w = 0);
            for v in iter_ones(&self.frontier) {
                for (nw, rw) in self.next.iter_mut().zip(d.row(v)) {
                    *nw |= rw;
                }
            }
            let mut count = 0;
            for (nw, vw) in self.next.iter_mut().zip(self.visited.iter_mut()) {
                *nw &= !*vw;
                *vw |= *nw;
                count += nw.count_ones() as usize;
            }
            if count == 0 {
                break;
            }
            depth += 1;
            reached += count;
            layer(depth, &self.next);
            std::mem::swap(&mut self.frontier, &mut self.next);
        }
        reached
    }

    /// `(sigma, ecc)` from `u`, or `Err(v)` naming an unreachable vertex.
    pub(crate) fn sigma_ecc(&mut self, d: &Digraph, u: usize) -> std::result::Result<(u64, u32), usize> {
        let mut sigma = 0u64;
        let mut ecc = 0;
        let reached = self.run(d, u, usize::MAX, |i, bits| {
            let c: u32 = bits.iter().map(|w| w.count_ones()).sum();
            sigma += (i as u64) * c as u64;
            ecc = i as u32;
        });
        if reached == d.order() {
            Ok((sigma, ecc))
        } else {
            Err((0..d.order()).find(|&v| !bit(&self.visited, v)).unwrap())
        }
    }
}

pub fn bfs_profile(d: &Digraph, u: usize) -> Result<DistanceProfile> {
    let n = d.order();
    if u >= n {
        return Err(Error::InvalidParameter(format!("vertex {u} is not in 0..{n}")));
    }
    let mut dist = vec![None; n];
    dist[u] = Some(0);
    let mut distance_degree = vec![1];
    Bfs::new(d.stride()).run(d, u, usize::MAX, |i, bits| {
        let mut c = 0;
        for v in iter_ones(bits) {
            dist[v] = Some(i as u32);
            c += 1;
        }
        distance_degree.push(c);
    });
    Ok(DistanceProfile {
        source: u,
        dist,
        distance_degree,
    })
}

/// `(sigma(u), ecc(u))` for every vertex of a strong digraph.
pub fn sigma_ecc_all(d: &Digraph) -> Result<Vec<(u64, u32)>> {
    let mut bfs = Bfs::new(d.stride());
    (0..d.order())
        .map(|u| bfs.sigma_ecc(d, u).map_err(|v| Error::NotStrong { from: u, to: v }))
        .collect()
}

/// Proximity and remoteness with their smallest-label witnesses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProximityRemoteness {
    pub proximity: Rational,
    pub remoteness: Rational,
    pub prox_witness: usize,
    pub rem_witness: usize,
}

impl ProximityRemoteness {
    fn from_sigmas(n: usize, sigmas: impl Iterator<Item = u64>) -> Self {
        let (mut lo, mut hi) = ((u64::MAX, 0), (0, 0));
        for (v, s) in sigmas.enumerate() {
            if s < lo.0 {
                lo = (s, v);
            }
            if s > hi.0 || v == 0 {
                hi = (s, v);
            }
        }
        let den = n as i64 - 1;
        ProximityRemoteness {
            proximity: Rational::new(lo.0 as i64, den),
            remoteness: Rational::new(hi.0 as i64, den),
            prox_witness: lo.1,
            rem_witness: hi.1,
        }
    }
}

fn require_order_two(d: &Digraph) -> Result<()> {
    if d.order() < 2 {
        return Err(Error::InvalidParameter(
            "average distance needs at least two vertices".into(),
        ));
    }
    Ok(())
}

pub fn proximity_remoteness(d: &Digraph) -> Result<ProximityRemoteness> {
    require_order_two(d)?;
    let se = sigma_ecc_all(d)?;
    Ok(ProximityRemoteness::from_sigmas(d.order(), se.iter().map(|p| p.0)))
}

pub fn radius_diameter(d: &Digraph) -> Result<(u32, u32)> {
    let se = sigma_ecc_all(d)?;
    let rad = se.iter().map(|p| p.1).min().unwrap();
    let diam = se.iter().map(|p| p.1).max().unwrap();
    Ok((rad, diam))
}

/// Whether every vertex is within distance `p` of `u`.
pub fn is_p_king(d: &Digraph, u: usize, p: usize) -> bool {
    Bfs::new(d.stride()).run(d, u, p, |_, _| {}) == d.order()
}

/// Whole-digraph distance invariants of a strong digraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MetricsReport {
    pub n: usize,
    pub m: usize,
    pub proximity: Rational,
    pub remoteness: Rational,
    pub prox_witness: usize,
    pub rem_witness: usize,
    pub pi_equals_rho: bool,
    pub radius: u32,
    pub diameter: u32,
    pub sigma: Vec<u64>,
    pub ecc: Vec<u32>,
    #[serde(flatten)]
    pub degrees: DegreeSummary,
    pub is_strong: bool,
    pub is_regular: bool,
    pub is_tournament: bool,
    pub is_symmetric: bool,
}

impl MetricsReport {
    pub fn compute(d: &Digraph) -> Result<Self> {
        require_order_two(d)?;
        let se = sigma_ecc_all(d)?;
        let pr = ProximityRemoteness::from_sigmas(d.order(), se.iter().map(|p| p.0));
        let degrees = d.degree_summary();
        Ok(MetricsReport {
            n: d.order(),
            m: d.size(),
            proximity: pr.proximity,
            remoteness: pr.remoteness,
            prox_witness: pr.prox_witness,
            rem_witness: pr.rem_witness,
            pi_equals_rho: pr.proximity == pr.remoteness,
            radius: se.iter().map(|p| p.1).min().unwrap(),
            diameter: se.iter().map(|p| p.1).max().unwrap(),
            sigma: se.iter().map(|p| p.0).collect(),
            ecc: se.iter().map(|p| p.1).collect(),
            is_regular: degrees.min_semi == degrees.max_semi,
            degrees,
            is_strong: true,
            is_tournament: d.is_tournament(),
            is_symmetric: d.is_symmetric(),
        })
    }

    pub const CSV_HEADER: &'static str =
        "digraph6,n,m,pi_num,pi_den,rho_num,rho_den,radius,diameter,pi_equals_rho,is_regular,is_tournament,is_symmetric";

    /// One CSV row matching [`MetricsReport::CSV_HEADER`].
    pub fn csv_row(&self, digraph6: &str) -> String {
        format!(
            "{digraph6},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.n,
            self.m,
            self.proximity.numer(),
            self.proximity.denom(),
            self.remoteness.numer(),
            self.remoteness.denom(),
            self.radius,
            self.diameter,
            self.pi_equals_rho,
            self.is_regular,
            self.is_tournament,
            self.is_symmetric
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dicycle(n: usize) -> Digraph {
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Digraph::from_edge_list(n, &pairs).unwrap()
    }

    #[test]
    fn dicycle_profile() {
        let p = bfs_profile(&dicycle(5), 0).unwrap();
        assert_eq!(p.distance_degree, vec![1, 1, 1, 1, 1]);
        assert_eq!(p.sigma(), Some(10));
        assert_eq!(p.ecc(), Some(4));
    }

    #[test]
    fn unreachable_is_tagged() {
        let path = Digraph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        let p = bfs_profile(&path, 1).unwrap();
        assert_eq!(p.dist, vec![None, Some(0), Some(1)]);
        assert_eq!(p.sigma(), None);
        assert_eq!(p.ecc(), None);
        assert_eq!(p.first_unreached(), Some(0));
        assert_eq!(
            proximity_remoteness(&path),
            Err(Error::NotStrong { from: 1, to: 0 })
        );
        assert!(radius_diameter(&path).is_err());
    }

    #[test]
    fn g_examples() {
        assert_eq!(g_of(&[1, 3, 4, 1]), 14);
        assert_eq!(g_of(&[1, 1, 1, 1, 1]), 10);
        assert_eq!(g_of(&[1, 6]), 6);
    }

    #[test]
    fn complete_and_cycle_values() {
        let pr = proximity_remoteness(&Digraph::complete(4)).unwrap();
        assert_eq!((pr.proximity, pr.remoteness), (Rational::integer(1), Rational::integer(1)));
        let pr = proximity_remoteness(&dicycle(6)).unwrap();
        assert_eq!(pr.proximity, Rational::integer(3));
        assert_eq!(pr.remoteness, Rational::integer(3));
        assert_eq!(radius_diameter(&dicycle(6)).unwrap(), (5, 5));
        assert_eq!(radius_diameter(&Digraph::complete(4)).unwrap(), (1, 1));
    }

    #[test]
    fn witnesses_are_smallest_labels() {
        // 0 <-> 1 <-> 2 path: sigma = 3, 2, 3.
        let d = Digraph::from_undirected_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        let pr = proximity_remoteness(&d).unwrap();
        assert_eq!((pr.prox_witness, pr.rem_witness), (1, 0));
        assert_eq!(pr.proximity, Rational::integer(1));
        assert_eq!(pr.remoteness, Rational::new(3, 2));
    }

    #[test]
    fn kings() {
        assert!(!is_p_king(&dicycle(6), 0, 4));
        assert!(is_p_king(&dicycle(6), 0, 5));
        assert!(is_p_king(&Digraph::complete(3), 2, 1));
        assert!(is_p_king(&Digraph::empty(1), 0, 0));
    }

    #[test]
    fn single_vertex_has_no_average() {
        assert!(proximity_remoteness(&Digraph::empty(1)).is_err());
    }
}
