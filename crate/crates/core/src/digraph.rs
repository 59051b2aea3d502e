//! Labeled digraphs stored as dense bit-matrix rows.
//!
//! Vertices are `0..n`. Row `u` is a packed bitset of the out-neighbourhood
//! `N+(u)`. Undirected graphs are symmetric digraphs: every edge `{u, v}` is
//! stored as the two arcs `(u, v)` and `(v, u)`.

use serde::Serialize;

use crate::error::{Error, Result};

const WORD: usize = 64;

pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// Iterates the set bit positions of a packed bitset.
pub(crate) fn iter_ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * WORD + b)
            }
        })
    })
}

#[inline]
pub(crate) fn bit(words: &[u64], v: usize) -> bool {
    words[v / WORD] >> (v % WORD) & 1 == 1
}

#[inline]
pub(crate) fn set_bit(words: &mut [u64], v: usize) {
    words[v / WORD] |= 1 << (v % WORD);
}

/// A finite digraph without loops or parallel arcs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl std::fmt::Debug for Digraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Digraph")
            .field("n", &self.n)
            .field("arcs", &self.arcs().collect::<Vec<_>>())
            .finish()
    }
}

/// Out/in-degree table with its extremes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeSummary {
    pub out_degrees: Vec<usize>,
    pub in_degrees: Vec<usize>,
    pub max_out: usize,
    pub min_out: usize,
    pub max_in: usize,
    pub min_in: usize,
    /// `max(max_out, max_in)`
    pub max_semi: usize,
    /// `min(min_out, min_in)`
    pub min_semi: usize,
}

/// The partite sets of a multipartite tournament.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartiteStructure {
    pub parts: Vec<Vec<usize>>,
}

impl PartiteStructure {
    pub fn sizes(&self) -> Vec<usize> {
        self.parts.iter().map(Vec::len).collect()
    }

    /// Index of the part containing `v`.
    pub fn part_of(&self, v: usize) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(&v))
    }
}

impl Digraph {
    /// The arcless digraph on `n` vertices.
    ///
    /// Panics if `n == 0`; fallible constructors report that case as an error.
    pub fn empty(n: usize) -> Self {
        assert!(n >= 1, "a digraph has at least one vertex");
        let stride = words_for(n);
        Digraph {
            n,
            stride,
            bits: vec![0; n * stride],
        }
    }

    /// The complete digraph: every ordered pair of distinct vertices is an arc.
    pub fn complete(n: usize) -> Self {
        let mut d = Digraph::empty(n);
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    d.add_arc(u, v);
                }
            }
        }
        d
    }

    /// Builds a digraph from ordered pairs. Duplicate pairs collapse to one arc.
    pub fn from_edge_list(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::from_edge_list_counting(n, pairs).map(|(d, _)| d)
    }

    /// Like [`Digraph::from_edge_list`], also returning how many pairs were duplicates.
    pub fn from_edge_list_counting(n: usize, pairs: &[(usize, usize)]) -> Result<(Self, usize)> {
        if n == 0 {
            return Err(Error::InvalidParameter("vertex count must be at least 1".into()));
        }
        let mut d = Digraph::empty(n);
        let mut duplicates = 0;
        for &(u, v) in pairs {
            d.check_pair(u, v)?;
            if d.has_arc(u, v) {
                duplicates += 1;
            }
            d.add_arc(u, v);
        }
        Ok((d, duplicates))
    }

    /// Builds a symmetric digraph: every edge `{u, v}` yields both arcs.
    pub fn from_undirected_edge_list(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::from_undirected_edge_list_counting(n, pairs).map(|(d, _)| d)
    }

    pub fn from_undirected_edge_list_counting(
        n: usize,
        pairs: &[(usize, usize)],
    ) -> Result<(Self, usize)> {
        if n == 0 {
            return Err(Error::InvalidParameter("vertex count must be at least 1".into()));
        }
        let mut d = Digraph::empty(n);
        let mut duplicates = 0;
        for &(u, v) in pairs {
            d.check_pair(u, v)?;
            if d.has_arc(u, v) {
                duplicates += 1;
            }
            d.add_arc(u, v);
            d.add_arc(v, u);
        }
        Ok((d, duplicates))
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::LabelOutOfRange { u, v, n: self.n });
        }
        if u == v {
            return Err(Error::Loop { u });
        }
        Ok(())
    }

    #[inline]
    pub(crate) fn add_arc(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        set_bit(&mut self.bits[u * self.stride..(u + 1) * self.stride], v);
    }

    pub(crate) fn remove_arc(&mut self, u: usize, v: usize) {
        self.bits[u * self.stride + v / WORD] &= !(1u64 << (v % WORD));
    }

    #[inline]
    pub(crate) fn clear(&mut self) {
        self.bits.iter_mut().for_each(|w| *w = 0);
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of arcs.
    pub fn size(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        bit(self.row(u), v)
    }

    /// Packed out-neighbourhood of `u`.
    #[inline]
    pub fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.stride..(u + 1) * self.stride]
    }

    pub(crate) fn stride(&self) -> usize {
        self.stride
    }

    pub fn out_neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        iter_ones(self.row(u))
    }

    pub fn in_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.has_arc(u, v))
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_neighbors(v).count()
    }

    /// All arcs in row-major order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.out_neighbors(u).map(move |v| (u, v)))
    }

    /// Whether `N+(u)` is a subset of `N+(v)`.
    pub fn out_subset(&self, u: usize, v: usize) -> bool {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .all(|(a, b)| a & !b == 0)
    }

    /// The digraph with every arc reversed.
    pub fn reverse(&self) -> Digraph {
        let mut r = Digraph::empty(self.n);
        for (u, v) in self.arcs() {
            r.add_arc(v, u);
        }
        r
    }

    /// Arc `(u, v)` is present iff `u != v` and `(u, v)` is absent here.
    pub fn complement(&self) -> Digraph {
        let mut c = Digraph::empty(self.n);
        for u in 0..self.n {
            for v in 0..self.n {
                if u != v && !self.has_arc(u, v) {
                    c.add_arc(u, v);
                }
            }
        }
        c
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Digraph {
        assert_eq!(perm.len(), self.n);
        let mut p = Digraph::empty(self.n);
        for (u, v) in self.arcs() {
            p.add_arc(perm[u], perm[v]);
        }
        p
    }

    pub fn degree_summary(&self) -> DegreeSummary {
        let out_degrees: Vec<usize> = (0..self.n).map(|u| self.out_degree(u)).collect();
        let mut in_degrees = vec![0; self.n];
        for (_, v) in self.arcs() {
            in_degrees[v] += 1;
        }
        let max_out = *out_degrees.iter().max().unwrap();
        let min_out = *out_degrees.iter().min().unwrap();
        let max_in = *in_degrees.iter().max().unwrap();
        let min_in = *in_degrees.iter().min().unwrap();
        DegreeSummary {
            out_degrees,
            in_degrees,
            max_out,
            min_out,
            max_in,
            min_in,
            max_semi: max_out.max(max_in),
            min_semi: min_out.min(min_in),
        }
    }

    /// Regular means the minimum and maximum semi-degrees coincide.
    pub fn is_regular(&self) -> bool {
        let s = self.degree_summary();
        s.min_semi == s.max_semi
    }

    /// Every unordered pair carries exactly one of its two arcs.
    pub fn is_tournament(&self) -> bool {
        (0..self.n).all(|u| (u + 1..self.n).all(|v| self.has_arc(u, v) != self.has_arc(v, u)))
    }

    pub fn is_symmetric(&self) -> bool {
        self.arcs().all(|(u, v)| self.has_arc(v, u))
    }

    pub fn is_complete(&self) -> bool {
        self.size() == self.n * (self.n - 1)
    }

    /// Bitset of vertices reachable from `u` (including `u`).
    pub fn reachable_from(&self, u: usize) -> Vec<u64> {
        let mut seen = vec![0u64; self.stride];
        let mut stack = vec![u];
        set_bit(&mut seen, u);
        while let Some(x) = stack.pop() {
            for (i, &w) in self.row(x).iter().enumerate() {
                let mut fresh = w & !seen[i];
                seen[i] |= fresh;
                while fresh != 0 {
                    let b = fresh.trailing_zeros() as usize;
                    fresh &= fresh - 1;
                    stack.push(i * WORD + b);
                }
            }
        }
        seen
    }

    /// An ordered pair `(u, v)` with no dipath from `u` to `v`, if one exists.
    ///
    /// A digraph is strong iff vertex 0 reaches every vertex and every vertex
    /// reaches vertex 0, so only those two searches are needed.
    pub fn unreachable_pair(&self) -> Option<(usize, usize)> {
        let fwd = self.reachable_from(0);
        if let Some(v) = (0..self.n).find(|&v| !bit(&fwd, v)) {
            return Some((0, v));
        }
        let back = self.reverse().reachable_from(0);
        (0..self.n).find(|&v| !bit(&back, v)).map(|v| (v, 0))
    }

    /// Whether every ordered pair is joined by a dipath. A single vertex is strong.
    pub fn is_strong(&self) -> bool {
        self.unreachable_pair().is_none()
    }

    /// Strong components via an iterative Tarjan search, in reverse
    /// topological order of the condensation.
    pub fn strong_components(&self) -> Vec<Vec<usize>> {
        const UNVISITED: usize = usize::MAX;
        let n = self.n;
        let mut index = vec![UNVISITED; n];
        let mut low = vec![0; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut comps = Vec::new();
        let mut next = 0;
        let adj: Vec<Vec<usize>> = (0..n).map(|u| self.out_neighbors(u).collect()).collect();

        for root in 0..n {
            if index[root] != UNVISITED {
                continue;
            }
            let mut call: Vec<(usize, usize)> = vec![(root, 0)];
            index[root] = next;
            low[root] = next;
            next += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(top) = call.last_mut() {
                let v = top.0;
                if let Some(&w) = adj[v].get(top.1) {
                    top.1 += 1;
                    if index[w] == UNVISITED {
                        index[w] = next;
                        low[w] = next;
                        next += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    call.pop();
                    if let Some(&(parent, _)) = call.last() {
                        low[parent] = low[parent].min(low[v]);
                    }
                    if low[v] == index[v] {
                        let mut comp = Vec::new();
                        loop {
                            let w = stack.pop().unwrap();
                            on_stack[w] = false;
                            comp.push(w);
                            if w == v {
                                break;
                            }
                        }
                        comp.sort_unstable();
                        comps.push(comp);
                    }
                }
            }
        }
        comps
    }

    /// If this is an orientation of a complete bipartite graph, its two parts.
    ///
    /// The parts are the connected components of the non-adjacency relation,
    /// ordered by size and then by smallest label.
    pub fn bipartite_tournament_structure(&self) -> Option<PartiteStructure> {
        let n = self.n;
        let adjacent = |u: usize, v: usize| self.has_arc(u, v) || self.has_arc(v, u);
        let mut part = vec![usize::MAX; n];
        let mut parts: Vec<Vec<usize>> = Vec::new();
        for s in 0..n {
            if part[s] != usize::MAX {
                continue;
            }
            let id = parts.len();
            let mut members = vec![s];
            part[s] = id;
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                for y in 0..n {
                    if y != x && part[y] == usize::MAX && !adjacent(x, y) {
                        part[y] = id;
                        members.push(y);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            parts.push(members);
        }
        if parts.len() != 2 {
            return None;
        }
        for u in 0..n {
            for v in u + 1..n {
                let same = part[u] == part[v];
                let (a, b) = (self.has_arc(u, v), self.has_arc(v, u));
                if same && (a || b) {
                    return None;
                }
                if !same && a == b {
                    return None;
                }
            }
        }
        parts.sort_by_key(|p| (p.len(), p[0]));
        Some(PartiteStructure { parts })
    }

    /// Replaces each vertex `x` by `t` independent copies labeled `x*t + i`;
    /// copy `x_i` has an arc to `y_j` iff `(x, y)` is an arc.
    pub fn blow_up(&self, t: usize) -> Result<Digraph> {
        if t == 0 {
            return Err(Error::InvalidParameter("blow-up factor must be at least 1".into()));
        }
        let mut b = Digraph::empty(self.n * t);
        for (x, y) in self.arcs() {
            for i in 0..t {
                for j in 0..t {
                    b.add_arc(x * t + i, y * t + j);
                }
            }
        }
        Ok(b)
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
    fn edge_list_examples() {
        let c3 = Digraph::from_edge_list(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(c3.size(), 3);
        assert!(c3.is_strong());
        let k2 = Digraph::from_edge_list(2, &[(0, 1), (1, 0)]).unwrap();
        assert!(k2.is_complete());
        assert_eq!(
            Digraph::from_edge_list(4, &[(0, 0)]),
            Err(Error::Loop { u: 0 })
        );
        assert_eq!(
            Digraph::from_edge_list(3, &[(0, 3)]),
            Err(Error::LabelOutOfRange { u: 0, v: 3, n: 3 })
        );
    }

    #[test]
    fn duplicates_collapse_and_are_counted() {
        let (d, dups) = Digraph::from_edge_list_counting(3, &[(0, 1), (0, 1), (1, 2)]).unwrap();
        assert_eq!(d.size(), 2);
        assert_eq!(dups, 1);
    }

    #[test]
    fn undirected_examples() {
        let p = Digraph::from_undirected_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p.arcs().collect::<Vec<_>>(), vec![(0, 1), (1, 0), (1, 2), (2, 1)]);
        assert!(p.is_symmetric());
        let single = Digraph::from_undirected_edge_list(1, &[]).unwrap();
        assert_eq!(single.order(), 1);
        assert!(single.is_strong());
    }

    #[test]
    fn strongness() {
        assert!(dicycle(5).is_strong());
        let path = Digraph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(!path.is_strong());
        assert_eq!(path.unreachable_pair(), Some((1, 0)));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(Digraph::complete(3).complement().size(), 0);
        assert_eq!(Digraph::empty(4).complement().size(), 12);
        // The arcs of C3 are 01, 12, 20; the remaining ordered pairs are 02, 10, 21.
        let c = dicycle(3).complement();
        assert_eq!(c.arcs().collect::<Vec<_>>(), vec![(0, 2), (1, 0), (2, 1)]);
        assert_eq!(c, dicycle(3).reverse());
    }

    #[test]
    fn degrees_and_regularity() {
        let s = dicycle(6).degree_summary();
        assert_eq!((s.max_semi, s.min_semi), (1, 1));
        assert!(dicycle(6).is_regular());
        let mut rot = Digraph::empty(5);
        for i in 0..5 {
            rot.add_arc(i, (i + 1) % 5);
            rot.add_arc(i, (i + 2) % 5);
        }
        assert!(rot.is_regular());
        assert!(rot.is_tournament());
    }

    #[test]
    fn tournament_predicate() {
        assert!(dicycle(3).is_tournament());
        assert!(!dicycle(4).is_tournament());
        assert!(!Digraph::complete(3).is_tournament());
    }

    #[test]
    fn bipartite_structure() {
        // a1 -> b -> a2
        let d = Digraph::from_edge_list(3, &[(0, 2), (2, 1)]).unwrap();
        let s = d.bipartite_tournament_structure().unwrap();
        assert_eq!(s.parts, vec![vec![2], vec![0, 1]]);
        assert!(dicycle(3).bipartite_tournament_structure().is_none());
        assert!(Digraph::complete(2).bipartite_tournament_structure().is_none());
        let one_arc = Digraph::from_edge_list(2, &[(0, 1)]).unwrap();
        assert_eq!(one_arc.bipartite_tournament_structure().unwrap().sizes(), vec![1, 1]);
        // An extra arc inside a part breaks the structure.
        let d = Digraph::from_edge_list(3, &[(0, 2), (2, 1), (0, 1)]).unwrap();
        assert!(d.bipartite_tournament_structure().is_none());
    }

    #[test]
    fn blow_up_counts() {
        let c = dicycle(4);
        let b = c.blow_up(3).unwrap();
        assert_eq!(b.order(), 12);
        assert_eq!(b.size(), 9 * c.size());
        assert_eq!(c.blow_up(1).unwrap(), c);
        assert!(c.blow_up(0).is_err());
        assert!(!b.has_arc(0, 1) && !b.has_arc(1, 0));
        assert!(b.has_arc(0, 3) && b.has_arc(2, 5));
    }

    #[test]
    fn wide_rows() {
        let n = 130;
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let d = Digraph::from_edge_list(n, &pairs).unwrap();
        assert!(d.is_strong());
        assert_eq!(d.out_neighbors(127).collect::<Vec<_>>(), vec![128]);
        assert_eq!(d.strong_components().len(), 1);
    }

    #[test]
    fn tarjan_components() {
        let d = Digraph::from_edge_list(5, &[(0, 1), (1, 0), (1, 2), (2, 3), (3, 2), (3, 4)])
            .unwrap();
        let comps = d.strong_components();
        assert_eq!(comps, vec![vec![4], vec![2, 3], vec![0, 1]]);
    }
}
