//! Brute-force reference implementations.
//!
//! Slow and deliberately naive. None of this calls into the Laplacian,
//! Smith form, subcurve or stability code of the main modules.

use num_bigint::BigInt;

use crate::classgroup::Multidegree;
use crate::error::{Error, Result};
use crate::graph::DualGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub box_radius: i64,
    pub coset_depth: i64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { max_vertices: 6, max_edges: 10, box_radius: 4, coset_depth: 6 }
    }
}

impl OracleConfig {
    fn admits(&self, g: &DualGraph) -> bool {
        g.vertex_count() <= self.max_vertices && g.edge_count() <= self.max_edges
    }

    fn check(&self, g: &DualGraph) -> Result<()> {
        if g.vertex_count() > self.max_vertices {
            return Err(Error::CapExceeded {
                what: "oracle vertex",
                limit: self.max_vertices as u64,
                required: g.vertex_count() as u64,
            });
        }
        if g.edge_count() > self.max_edges {
            return Err(Error::CapExceeded {
                what: "oracle edge",
                limit: self.max_edges as u64,
                required: g.edge_count() as u64,
            });
        }
        Ok(())
    }
}

fn root(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        x = parent[x];
    }
    x
}

fn is_spanning_tree(n: usize, chosen: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    for &(a, b) in chosen {
        let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

fn count_trees(n: usize, edges: &[(usize, usize)], start: usize, chosen: &mut Vec<(usize, usize)>) -> u64 {
    if chosen.len() + 1 == n {
        return u64::from(is_spanning_tree(n, chosen));
    }
    let mut total = 0;
    for i in start..edges.len() {
        chosen.push(edges[i]);
        total += count_trees(n, edges, i + 1, chosen);
        chosen.pop();
    }
    total
}

/// Counts spanning trees by testing every set of `gamma - 1` non-loop edges.
pub fn spanning_trees_bruteforce(g: &DualGraph, cfg: &OracleConfig) -> Result<BigInt> {
    cfg.check(g)?;
    let edges: Vec<(usize, usize)> = g.edges().iter().filter(|e| e.a != e.b).map(|e| (e.a, e.b)).collect();
    Ok(BigInt::from(count_trees(g.vertex_count(), &edges, 0, &mut Vec::new())))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleEquivalence {
    Equivalent,
    /// No twist within the search depth; definitive when totals differ.
    NotWithinDepth,
    /// The graph exceeds the oracle bounds.
    Inconclusive,
}

/// `-L n` written edge by edge: each vertex gains `n_w - n_v` per edge to `w`.
fn fire(g: &DualGraph, n: &[i64]) -> Vec<i64> {
    let mut out = vec![0; g.vertex_count()];
    for e in g.edges() {
        if e.a != e.b {
            out[e.a] += n[e.b] - n[e.a];
            out[e.b] += n[e.a] - n[e.b];
        }
    }
    out
}

/// Searches `n` with entries in `[-depth, depth]` and last entry zero.
pub fn equivalent_bruteforce(g: &DualGraph, d: &Multidegree, e: &Multidegree, cfg: &OracleConfig) -> OracleEquivalence {
    if !cfg.admits(g) || d.len() != g.vertex_count() || e.len() != g.vertex_count() {
        return OracleEquivalence::Inconclusive;
    }
    if d.total() != e.total() {
        return OracleEquivalence::NotWithinDepth;
    }
    let target: Vec<i64> = e.entries().iter().zip(d.entries()).map(|(a, b)| a - b).collect();
    let free = g.vertex_count() - 1;
    let mut n = vec![-cfg.coset_depth; free];
    n.push(0);
    if free == 0 {
        return if target.iter().all(|&x| x == 0) {
            OracleEquivalence::Equivalent
        } else {
            OracleEquivalence::NotWithinDepth
        };
    }
    loop {
        if fire(g, &n) == target {
            return OracleEquivalence::Equivalent;
        }
        let mut i = 0;
        loop {
            if i == free {
                return OracleEquivalence::NotWithinDepth;
            }
            if n[i] < cfg.coset_depth {
                n[i] += 1;
                break;
            }
            n[i] = -cfg.coset_depth;
            i += 1;
        }
    }
}

fn connected_within(g: &DualGraph, set: &[bool]) -> bool {
    let Some(start) = set.iter().position(|&x| x) else {
        return false;
    };
    let mut reached = vec![false; set.len()];
    reached[start] = true;
    let mut changed = true;
    while changed {
        changed = false;
        for e in g.edges() {
            if set[e.a] && set[e.b] && reached[e.a] != reached[e.b] {
                reached[e.a] = true;
                reached[e.b] = true;
                changed = true;
            }
        }
    }
    set.iter().zip(&reached).all(|(&s, &r)| !s || r)
}

/// `(set, arithmetic genus)` for every connected proper subset.
fn subcurves(g: &DualGraph) -> Vec<(Vec<bool>, i64)> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for bits in 1..(1u32 << n) - 1 {
        let set: Vec<bool> = (0..n).map(|i| bits & (1 << i) != 0).collect();
        if !connected_within(g, &set) {
            continue;
        }
        let genera: i64 = (0..n).filter(|&i| set[i]).map(|i| i64::from(g.vertices()[i].geometric_genus)).sum();
        let inside = g.edges().iter().filter(|e| set[e.a] && set[e.b]).count() as i64;
        let size = set.iter().filter(|&&x| x).count() as i64;
        out.push((set, genera + inside - size + 1));
    }
    out
}

fn scan(lo: &[i64], hi: &[i64], i: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if i == lo.len() {
        if left == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let rest_lo: i64 = lo[i + 1..].iter().sum();
    let rest_hi: i64 = hi[i + 1..].iter().sum();
    for x in lo[i]..=hi[i] {
        let r = left - x;
        if r < rest_lo || r > rest_hi {
            continue;
        }
        cur.push(x);
        scan(lo, hi, i + 1, r, cur, out);
        cur.pop();
    }
}

fn bruteforce_filter(g: &DualGraph, cfg: &OracleConfig, strict: bool) -> Result<Vec<Multidegree>> {
    cfg.check(g)?;
    let n = g.vertex_count();
    let b1 = g.edge_count() as i64 - n as i64 + 1;
    let genus = g.vertices().iter().map(|v| i64::from(v.geometric_genus)).sum::<i64>() + b1;
    let own: Vec<i64> = (0..n)
        .map(|i| {
            let loops = g.edges().iter().filter(|e| e.a == i && e.b == i).count() as i64;
            i64::from(g.vertices()[i].geometric_genus) + loops - 1
        })
        .collect();
    let own_sum: i64 = own.iter().sum();
    let lo: Vec<i64> = own.iter().map(|x| x - cfg.box_radius).collect();
    let hi: Vec<i64> = own.iter().map(|x| genus - 1 - (own_sum - x) + cfg.box_radius).collect();
    let mut points = Vec::new();
    scan(&lo, &hi, 0, genus - 1, &mut Vec::new(), &mut points);
    let subs = subcurves(g);
    let mut out: Vec<Multidegree> = points
        .into_iter()
        .filter(|d| {
            subs.iter().all(|(set, pa)| {
                let dz: i64 = (0..n).filter(|&i| set[i]).map(|i| d[i]).sum();
                if strict {
                    dz > pa - 1
                } else {
                    dz >= pa - 1
                }
            })
        })
        .map(Multidegree::new)
        .collect();
    out.sort();
    Ok(out)
}

/// Semistable multidegrees by scanning a widened box.
pub fn semistable_bruteforce(g: &DualGraph, cfg: &OracleConfig) -> Result<Vec<Multidegree>> {
    bruteforce_filter(g, cfg, false)
}

pub fn stable_bruteforce(g: &DualGraph, cfg: &OracleConfig) -> Result<Vec<Multidegree>> {
    bruteforce_filter(g, cfg, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Vertex;

    fn md(v: &[i64]) -> Multidegree {
        Multidegree::new(v.to_vec())
    }

    #[test]
    fn spanning_tree_examples() {
        let cfg = OracleConfig::default();
        assert_eq!(spanning_trees_bruteforce(&DualGraph::vine(0, 0, 3).unwrap(), &cfg).unwrap(), BigInt::from(3));
        let path = DualGraph::new(
            vec![Vertex::new("a", 0), Vertex::new("b", 0), Vertex::new("c", 0)],
            vec![(0, 1), (1, 2), (1, 1)],
        )
        .unwrap();
        assert_eq!(spanning_trees_bruteforce(&path, &cfg).unwrap(), BigInt::from(1));
        let k4 = DualGraph::new(
            (0..4).map(|i| Vertex::new(format!("v{i}"), 0)).collect(),
            vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        )
        .unwrap();
        assert_eq!(spanning_trees_bruteforce(&k4, &cfg).unwrap(), BigInt::from(16));
    }

    #[test]
    fn equivalence_examples() {
        let cfg = OracleConfig::default();
        let vine = DualGraph::vine(0, 0, 2).unwrap();
        assert_eq!(equivalent_bruteforce(&vine, &md(&[1, -1]), &md(&[1, -1]), &cfg), OracleEquivalence::Equivalent);
        assert_eq!(equivalent_bruteforce(&vine, &md(&[1, -1]), &md(&[-1, 1]), &cfg), OracleEquivalence::Equivalent);
        assert_eq!(equivalent_bruteforce(&vine, &md(&[1, -1]), &md(&[0, 0]), &cfg), OracleEquivalence::NotWithinDepth);
        let tight = OracleConfig { max_vertices: 1, ..cfg };
        assert_eq!(equivalent_bruteforce(&vine, &md(&[1, -1]), &md(&[0, 0]), &tight), OracleEquivalence::Inconclusive);
    }

    #[test]
    fn semistable_examples() {
        let cfg = OracleConfig::default();
        let vine = DualGraph::vine(1, 1, 2).unwrap();
        assert_eq!(semistable_bruteforce(&vine, &cfg).unwrap(), vec![md(&[0, 2]), md(&[1, 1]), md(&[2, 0])]);
        assert!(stable_bruteforce(&DualGraph::vine(1, 1, 1).unwrap(), &cfg).unwrap().is_empty());
        assert_eq!(semistable_bruteforce(&DualGraph::irreducible(3, 0), &cfg).unwrap(), vec![md(&[2])]);
    }

    #[test]
    fn bounds_are_enforced() {
        let cfg = OracleConfig { max_edges: 2, ..OracleConfig::default() };
        assert!(spanning_trees_bruteforce(&DualGraph::vine(0, 0, 3).unwrap(), &cfg).unwrap_err().is_cap());
    }
}
