//! Reference implementations kept deliberately naive: they share no code
//! with the library beyond reading arcs.

#![allow(dead_code)]

use proxrem::Digraph;

pub const INF: u32 = u32::MAX / 4;

/// All-pairs distances by repeated relaxation over the adjacency matrix.
pub fn floyd_warshall(d: &Digraph) -> Vec<Vec<u32>> {
    let n = d.order();
    let mut dist = vec![vec![INF; n]; n];
    for (u, row) in dist.iter_mut().enumerate() {
        row[u] = 0;
        for v in 0..n {
            if d.has_arc(u, v) {
                row[v] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = dist[i][k] + dist[k][j];
                if via < dist[i][j] {
                    dist[i][j] = via;
                }
            }
        }
    }
    dist
}

/// `(sigma, ecc)` per vertex from the distance matrix, `None` if not strong.
pub fn oracle_sigma_ecc(d: &Digraph) -> Option<Vec<(u64, u32)>> {
    let dist = floyd_warshall(d);
    dist.iter()
        .map(|row| {
            if row.iter().any(|&x| x >= INF) {
                None
            } else {
                Some((row.iter().map(|&x| x as u64).sum(), *row.iter().max().unwrap()))
            }
        })
        .collect()
}

/// `(pi, rho)` as reduced fractions `(num, den)`, plus radius and diameter.
pub struct OracleMetrics {
    pub pi: (u64, u64),
    pub rho: (u64, u64),
    pub radius: u32,
    pub diameter: u32,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn reduce(num: u64, den: u64) -> (u64, u64) {
    let g = gcd(num, den).max(1);
    (num / g, den / g)
}

pub fn oracle_metrics(d: &Digraph) -> Option<OracleMetrics> {
    let se = oracle_sigma_ecc(d)?;
    let den = d.order() as u64 - 1;
    Some(OracleMetrics {
        pi: reduce(se.iter().map(|p| p.0).min().unwrap(), den),
        rho: reduce(se.iter().map(|p| p.0).max().unwrap(), den),
        radius: se.iter().map(|p| p.1).min().unwrap(),
        diameter: se.iter().map(|p| p.1).max().unwrap(),
    })
}

/// Heap's algorithm over all permutations of `0..n`.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize]) -> bool) {
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0; n];
    if f(&p) {
        return;
    }
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            if f(&p) {
                return;
            }
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Isomorphism by trying every bijection.
pub fn brute_isomorphic(a: &Digraph, b: &Digraph) -> bool {
    let n = a.order();
    if n != b.order() || a.size() != b.size() {
        return false;
    }
    let mut found = false;
    for_each_permutation(n, |p| {
        found = (0..n).all(|u| (0..n).all(|v| a.has_arc(u, v) == b.has_arc(p[u], p[v])));
        found
    });
    found
}

/// Strong connectivity by reachability closure.
pub fn oracle_strong(d: &Digraph) -> bool {
    floyd_warshall(d).iter().flatten().all(|&x| x < INF)
}
