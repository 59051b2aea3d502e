//! Canonical forms for small digraphs.
//!
//! Vertices are first split into cells by `(out-degree, in-degree)` (and by
//! part, for bipartite classes), cells sorted by that invariant. The canonical
//! labeling is then the within-cell permutation whose adjacency matrix, read
//! shell by shell (`(k,0),(0,k),(k,1),(1,k),...,(k,k-1),(k-1,k)` for
//! `k = 1..n`), is lexicographically smallest. Every permutation respecting the
//! cell order is tried, with prefix pruning. Two digraphs get the same form
//! iff they are isomorphic (part-respecting when parts are given).

use serde::Serialize;

use crate::digraph::{Digraph, PartiteStructure};
use crate::error::{Error, Result};
use crate::format;

/// Largest order accepted by [`canonical_form`].
pub const CANONICAL_CEILING: usize = 10;

/// Equality, ordering and hashing look at `(n, bits)` only.
#[derive(Debug, Clone, Serialize)]
pub struct CanonicalForm {
    n: usize,
    /// Shell-ordered adjacency bits of the canonically labeled digraph.
    bits: Vec<u8>,
    /// `order[i]` is the original vertex placed at position `i`.
    #[serde(skip)]
    order: Vec<usize>,
}

impl PartialEq for CanonicalForm {
    fn eq(&self, other: &Self) -> bool {
        (self.n, &self.bits) == (other.n, &other.bits)
    }
}

impl Eq for CanonicalForm {}

impl std::hash::Hash for CanonicalForm {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.bits.hash(state);
    }
}

impl PartialOrd for CanonicalForm {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalForm {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, &self.bits).cmp(&(other.n, &other.bits))
    }
}

impl CanonicalForm {
    /// The canonically relabeled digraph.
    pub fn to_digraph(&self) -> Digraph {
        let mut d = Digraph::empty(self.n);
        let mut idx = 0;
        for k in 1..self.n {
            for j in 0..k {
                if self.bits[idx] == 1 {
                    d.add_arc(k, j);
                }
                if self.bits[idx + 1] == 1 {
                    d.add_arc(j, k);
                }
                idx += 2;
            }
        }
        d
    }

    pub fn digraph6(&self) -> String {
        format::to_digraph6(&self.to_digraph())
    }

    /// The labeling used: `order[i]` of the input became vertex `i`.
    pub fn labeling(&self) -> &[usize] {
        &self.order
    }
}

struct Search<'a> {
    d: &'a Digraph,
    /// Cell of every position.
    slot_cell: Vec<usize>,
    cells: Vec<Vec<usize>>,
    used: Vec<bool>,
    order: Vec<usize>,
    cur: Vec<u8>,
    best: Option<(Vec<u8>, Vec<usize>)>,
}

impl Search<'_> {
    fn go(&mut self, k: usize) {
        let n = self.d.order();
        if k == n {
            let better = match &self.best {
                None => true,
                Some((b, _)) => self.cur < *b,
            };
            if better {
                self.best = Some((self.cur.clone(), self.order.clone()));
            }
            return;
        }
        let cell = self.slot_cell[k];
        let start = k * k.saturating_sub(1);
        let end = start + 2 * k;
        for i in 0..self.cells[cell].len() {
            let v = self.cells[cell][i];
            if self.used[v] {
                continue;
            }
            for (j, &w) in self.order[..k].iter().enumerate() {
                self.cur[start + 2 * j] = self.d.has_arc(v, w) as u8;
                self.cur[start + 2 * j + 1] = self.d.has_arc(w, v) as u8;
            }
            if let Some((b, _)) = &self.best {
                if self.cur[..end] > b[..end] {
                    continue;
                }
            }
            self.used[v] = true;
            self.order.push(v);
            self.go(k + 1);
            self.order.pop();
            self.used[v] = false;
        }
    }
}

fn search(d: &Digraph, groups: &[Vec<usize>]) -> (Vec<u8>, Vec<usize>) {
    // Within each group, split into cells by (out, in) degree and sort cells.
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for g in groups {
        let mut keyed: Vec<((usize, usize), usize)> =
            g.iter().map(|&v| ((d.out_degree(v), d.in_degree(v)), v)).collect();
        keyed.sort_unstable();
        let mut i = 0;
        while i < keyed.len() {
            let j = keyed[i..].iter().take_while(|x| x.0 == keyed[i].0).count() + i;
            cells.push(keyed[i..j].iter().map(|x| x.1).collect());
            i = j;
        }
    }
    let slot_cell = cells
        .iter()
        .enumerate()
        .flat_map(|(c, cell)| std::iter::repeat_n(c, cell.len()))
        .collect();
    let n = d.order();
    let mut s = Search {
        d,
        slot_cell,
        cells,
        used: vec![false; n],
        order: Vec::with_capacity(n),
        cur: vec![0; n * n.saturating_sub(1)],
        best: None,
    };
    s.go(0);
    s.best.expect("at least one labeling exists")
}

/// Canonical form over all vertex permutations, or over part-respecting ones
/// when `parts` is given (parts of equal size may be swapped).
pub fn canonical_form(d: &Digraph, parts: Option<&PartiteStructure>) -> Result<CanonicalForm> {
    let n = d.order();
    if n > CANONICAL_CEILING {
        return Err(Error::CeilingExceeded {
            class: "canonical form".into(),
            n,
            ceiling: format!("n <= {CANONICAL_CEILING}"),
        });
    }
    let (bits, order) = match parts {
        None => search(d, &[(0..n).collect()]),
        Some(p) => {
            let mut best = search(d, &p.parts);
            if p.parts.len() == 2 && p.parts[0].len() == p.parts[1].len() {
                let swapped = [p.parts[1].clone(), p.parts[0].clone()];
                let alt = search(d, &swapped);
                if alt.0 < best.0 {
                    best = alt;
                }
            }
            best
        }
    };
    Ok(CanonicalForm { n, bits, order })
}

fn degree_multiset(d: &Digraph) -> Vec<(usize, usize)> {
    let s = d.degree_summary();
    let mut v: Vec<_> = s.out_degrees.into_iter().zip(s.in_degrees).collect();
    v.sort_unstable();
    v
}

pub fn is_isomorphic(a: &Digraph, b: &Digraph) -> Result<bool> {
    if a.order() != b.order() || a.size() != b.size() {
        return Ok(false);
    }
    if degree_multiset(a) != degree_multiset(b) {
        return Ok(false);
    }
    Ok(canonical_form(a, None)? == canonical_form(b, None)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{dicycle, extremal_tournament};

    #[test]
    fn relabeled_copies_agree() {
        let t = extremal_tournament(4).unwrap();
        let p = t.permute(&[2, 0, 3, 1]);
        assert_ne!(t, p);
        assert_eq!(canonical_form(&t, None).unwrap(), canonical_form(&p, None).unwrap());
        assert!(is_isomorphic(&t, &p).unwrap());
    }

    #[test]
    fn triangles_differ() {
        let cyc = dicycle(3).unwrap();
        let trans = Digraph::from_edge_list(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_ne!(canonical_form(&cyc, None).unwrap(), canonical_form(&trans, None).unwrap());
        assert!(!is_isomorphic(&cyc, &trans).unwrap());
    }

    #[test]
    fn reversed_dicycle_is_isomorphic() {
        let c = dicycle(4).unwrap();
        assert!(is_isomorphic(&c, &c.reverse()).unwrap());
    }

    #[test]
    fn canonical_digraph_is_a_relabeling() {
        let t = extremal_tournament(6).unwrap();
        let cf = canonical_form(&t, None).unwrap();
        let order = cf.labeling();
        let mut perm = vec![0; 6];
        for (i, &v) in order.iter().enumerate() {
            perm[v] = i;
        }
        assert_eq!(t.permute(&perm), cf.to_digraph());
    }

    #[test]
    fn ceiling_is_enforced() {
        assert!(canonical_form(&dicycle(11).unwrap(), None).is_err());
    }

    #[test]
    fn bipartite_part_swap() {
        let d = crate::constructions::bipartite_equal(1).unwrap();
        let s = d.bipartite_tournament_structure().unwrap();
        let r = d.reverse();
        let sr = r.bipartite_tournament_structure().unwrap();
        assert_eq!(
            canonical_form(&d, Some(&s)).unwrap(),
            canonical_form(&r, Some(&sr)).unwrap()
        );
    }
}
