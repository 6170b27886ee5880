//! Graph generators and property checks shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::result::Result;

use nodal::classgroup::{semistabilize, twister_multidegree};
use nodal::graph::{essential_graph, normalize, Connectivity, NodeSet};
use nodal::oracle::{semistable_bruteforce, spanning_trees_bruteforce, stable_bruteforce, OracleConfig};
use nodal::picard::{classify_type_g_minus_1, neron_fiber, PicardType};
use nodal::stability::{check_stability_normalized, is_semistable};
use nodal::theta::theta_strata;
use nodal::*;
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rand::Rng;

pub fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// Spanning tree from `parents[i-1] < i`, then the extra edges.
pub fn build(genera: &[u32], parents: &[usize], extra: &[(usize, usize)]) -> DualGraph {
    let vertices = names(genera.len()).into_iter().zip(genera).map(|(n, &g)| Vertex::new(n, g)).collect();
    let mut edges: Vec<(usize, usize)> = parents.iter().enumerate().map(|(i, &p)| (p, i + 1)).collect();
    edges.extend_from_slice(extra);
    DualGraph::new(vertices, edges).expect("generated graphs are connected")
}

/// Connected multigraphs with loops, `1..=max_v` vertices and at most
/// `max_e` edges.
pub fn graph_strategy(max_v: usize, max_e: usize, max_genus: u32) -> impl Strategy<Value = DualGraph> {
    assert!(max_e + 1 >= max_v);
    (1..=max_v)
        .prop_flat_map(move |n| {
            let parents: Vec<BoxedStrategy<usize>> = (1..n).map(|i| (0..i).boxed()).collect();
            (
                prop::collection::vec(0..=max_genus, n),
                parents,
                prop::collection::vec((0..n, 0..n), 0..=max_e + 1 - n),
            )
        })
        .prop_map(|(genera, parents, extra)| build(&genera, &parents, &extra))
}

pub fn graph_and_permutation(
    max_v: usize,
    max_e: usize,
    max_genus: u32,
) -> impl Strategy<Value = (DualGraph, Vec<usize>)> {
    graph_strategy(max_v, max_e, max_genus).prop_flat_map(|g| {
        let n = g.vertex_count();
        (Just(g), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
    })
}

/// Same distribution as [`graph_strategy`], driven by an explicit RNG.
pub fn random_graph<R: Rng>(rng: &mut R, max_v: usize, max_e: usize, max_genus: u32) -> DualGraph {
    let n = rng.gen_range(1..=max_v);
    let genera: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_genus)).collect();
    let parents: Vec<usize> = (1..n).map(|i| rng.gen_range(0..i)).collect();
    let extra_count = rng.gen_range(0..=max_e + 1 - n);
    let extra: Vec<(usize, usize)> = (0..extra_count).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
    build(&genera, &parents, &extra)
}

/// A multidegree of total `total` with entries spread around zero.
pub fn random_multidegree<R: Rng>(rng: &mut R, n: usize, total: i64, spread: i64) -> Multidegree {
    let mut v: Vec<i64> = (0..n).map(|_| rng.gen_range(-spread..=spread)).collect();
    let s: i64 = v.iter().sum();
    v[n - 1] += total - s;
    Multidegree::new(v)
}

/// `-L n` computed edge by edge.
pub fn fire(g: &DualGraph, n: &[i64]) -> Vec<i64> {
    let mut out = vec![0; g.vertex_count()];
    for e in g.edges() {
        out[e.a] += n[e.b] - n[e.a];
        out[e.b] += n[e.a] - n[e.b];
    }
    out
}

pub fn genus(g: &DualGraph) -> i64 {
    counts(g).genus
}

/// Components left after deleting the edges in `s`, by union-find.
pub fn components_after_cut(g: &DualGraph, s: &[usize]) -> usize {
    let n = g.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for (i, e) in g.edges().iter().enumerate() {
        if !s.contains(&i) {
            let (a, b) = (find(&mut parent, e.a), find(&mut parent, e.b));
            parent[a] = b;
        }
    }
    (0..n).filter(|&v| find(&mut parent, v) == v).count()
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(TestCaseError::fail(format!($($fmt)+)));
        }
    };
}

fn ok<T>(r: nodal::Result<T>) -> Result<T, TestCaseError> {
    r.map_err(|e| TestCaseError::fail(e.to_string()))
}

// graph

pub fn check_complexity_vs_tree_like(g: &DualGraph) -> Result<(), TestCaseError> {
    let c = complexity(g);
    ensure!(c >= BigInt::from(1), "complexity {c} < 1 on {g}");
    ensure!((c == BigInt::from(1)) == is_tree_like(g), "tree-like mismatch on {g}");
    Ok(())
}

pub fn check_complexity_oracle(g: &DualGraph) -> Result<(), TestCaseError> {
    let brute = ok(spanning_trees_bruteforce(g, &OracleConfig::default()))?;
    ensure!(complexity(g) == brute, "matrix-tree {} vs brute force {brute} on {g}", complexity(g));
    Ok(())
}

pub fn check_essential(g: &DualGraph) -> Result<(), TestCaseError> {
    let e = essential_graph(g);
    ensure!(essential_graph(&e) == e, "essential graph not idempotent on {g}");
    match essential_connectivity(g) {
        Connectivity::Infinite => ensure!(e.vertex_count() == 1, "infinite connectivity with several vertices"),
        Connectivity::Finite(k) => ensure!(k >= 2, "essential connectivity {k} on {g}"),
    }
    Ok(())
}

pub fn check_full_subcurve_genus(g: &DualGraph) -> Result<(), TestCaseError> {
    let all = Subcurve::new((0..g.vertex_count()).collect());
    ensure!(ok(subcurve_pa(g, &all))? == genus(g), "p_a(X) differs from genus on {g}");
    Ok(())
}

pub fn check_normalization_genus(g: &DualGraph, mask: u32) -> Result<(), TestCaseError> {
    let s: Vec<usize> = (0..g.edge_count()).filter(|i| mask >> i & 1 == 1).collect();
    let parts = ok(partial_normalization(g, &ok(NodeSet::new(g, s.clone()))?))?;
    let total: i64 = parts.iter().map(genus).sum();
    let k = parts.len() as i64;
    ensure!(k as usize == components_after_cut(g, &s), "component count on {g} at {s:?}");
    ensure!(total == genus(g) - s.len() as i64 + k - 1, "normalization genus on {g} at {s:?}");
    Ok(())
}

pub fn check_graph_invariants_permuted(g: &DualGraph, perm: &[usize]) -> Result<(), TestCaseError> {
    let h = ok(g.permuted(perm))?;
    ensure!(counts(g) == counts(&h), "counts changed under relabeling");
    ensure!(complexity(g) == complexity(&h), "complexity changed under relabeling");
    ensure!(essential_connectivity(g) == essential_connectivity(&h), "connectivity changed under relabeling");
    Ok(())
}

// classgroup

pub fn check_invariant_factors(g: &DualGraph) -> Result<(), TestCaseError> {
    let dcg = degree_class_group(g);
    let product = dcg.invariant_factors().iter().fold(BigInt::from(1), |a, f| a * f);
    ensure!(&product == dcg.order(), "product of factors differs from order");
    ensure!(product == complexity(g), "order {product} vs complexity {} on {g}", complexity(g));
    for w in dcg.invariant_factors().windows(2) {
        ensure!(&w[1] % &w[0] == BigInt::from(0), "factors {:?} not a divisor chain", dcg.invariant_factors());
    }
    Ok(())
}

pub fn check_twisters(g: &DualGraph, n: &[i64]) -> Result<(), TestCaseError> {
    let t = ok(twister_multidegree(g, n))?;
    ensure!(t.total() == 0, "twister total {}", t.total());
    ensure!(t.entries() == fire(g, n).as_slice(), "twister differs from edge-wise firing");
    let dcg = degree_class_group(g);
    ensure!(ok(dcg.equivalent(&t, &Multidegree::zeros(g.vertex_count())))?, "twister not equivalent to zero");
    Ok(())
}

/// `d`, `d + T(n1)`, `d + T(n1) + T(n2)` and an unrelated `r` of the same total.
pub fn check_equivalence_laws(
    g: &DualGraph,
    d: &Multidegree,
    n1: &[i64],
    n2: &[i64],
    r: &Multidegree,
) -> Result<(), TestCaseError> {
    let dcg = degree_class_group(g);
    let e = Multidegree::new(d.entries().iter().zip(fire(g, n1)).map(|(a, b)| a + b).collect());
    let f = Multidegree::new(e.entries().iter().zip(fire(g, n2)).map(|(a, b)| a + b).collect());
    let eq = |x: &Multidegree, y: &Multidegree| ok(dcg.equivalent(x, y));
    ensure!(eq(d, d)?, "not reflexive");
    ensure!(eq(d, &e)? && eq(&e, d)?, "twisted copy not equivalent");
    ensure!(eq(&e, &f)? && eq(d, &f)?, "not transitive");
    ensure!(eq(d, r)? == eq(r, d)?, "not symmetric");
    if eq(d, r)? {
        ensure!(eq(&f, r)?, "transitivity through r fails");
    }
    ensure!(ok(dcg.class_of(d))? == ok(dcg.class_of(&f))?, "labels differ within a class");
    Ok(())
}

pub fn check_semistabilize(g: &DualGraph, d: &Multidegree) -> Result<(), TestCaseError> {
    let s = ok(semistabilize(g, d))?;
    ensure!(ok(is_semistable(g, &s.multidegree))?, "{} is not semistable on {g}", s.multidegree);
    let moved: Vec<i64> = d.entries().iter().zip(fire(g, &s.twist)).map(|(a, b)| a + b).collect();
    ensure!(moved == s.multidegree.entries(), "twist {:?} does not carry {d} to {}", s.twist, s.multidegree);
    let dcg = degree_class_group(g);
    ensure!(ok(dcg.equivalent(d, &s.multidegree))?, "output not equivalent to input");
    Ok(())
}

pub fn check_semistable_classes_cover(g: &DualGraph) -> Result<(), TestCaseError> {
    let dcg = degree_class_group(g);
    let labels: BTreeSet<_> = ok(enumerate_semistable(g))?
        .iter()
        .map(|d| dcg.class_of(d))
        .collect::<nodal::Result<_>>()
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
    ensure!(BigInt::from(labels.len()) == *dcg.order(), "{} classes hit out of {}", labels.len(), dcg.order());
    Ok(())
}

pub fn check_equivalence_permuted(
    g: &DualGraph,
    perm: &[usize],
    d: &Multidegree,
    e: &Multidegree,
) -> Result<(), TestCaseError> {
    let h = ok(g.permuted(perm))?;
    let (a, b) = (degree_class_group(g), degree_class_group(&h));
    ensure!(
        ok(a.equivalent(d, e))? == ok(b.equivalent(&d.permuted(perm), &e.permuted(perm)))?,
        "equivalence verdict changed under relabeling"
    );
    Ok(())
}

// stability

pub fn check_stability_oracle(g: &DualGraph, cfg: &OracleConfig) -> Result<(), TestCaseError> {
    let ss = ok(enumerate_semistable(g))?;
    let st = ok(enumerate_stable(g))?;
    ensure!(!ss.is_empty(), "no semistable multidegree on {g}");
    ensure!(st.iter().all(|d| ss.contains(d)), "stable not inside semistable on {g}");
    ensure!(ss == ok(semistable_bruteforce(g, cfg))?, "semistable sets differ from brute force on {g}");
    ensure!(st == ok(stable_bruteforce(g, cfg))?, "stable sets differ from brute force on {g}");
    Ok(())
}

pub fn check_stability_permuted(g: &DualGraph, perm: &[usize]) -> Result<(), TestCaseError> {
    let h = ok(g.permuted(perm))?;
    let relabel = |v: Vec<Multidegree>| {
        let mut out: Vec<Multidegree> = v.iter().map(|d| d.permuted(perm)).collect();
        out.sort();
        out
    };
    ensure!(relabel(ok(enumerate_semistable(g))?) == ok(enumerate_semistable(&h))?, "semistable set not equivariant");
    ensure!(relabel(ok(enumerate_stable(g))?) == ok(enumerate_stable(&h))?, "stable set not equivariant");
    Ok(())
}

// picard

pub fn check_strata(g: &DualGraph) -> Result<(), TestCaseError> {
    let all = ok(strata(g))?;
    let mut labels = BTreeSet::new();
    for s in &all {
        ensure!(labels.insert((s.nodes.edges.clone(), s.multidegree.clone())), "repeated stratum {s}");
        let pn = ok(normalize(g, &s.nodes))?;
        let v = ok(check_stability_normalized(&pn, &s.multidegree, &Limits::default()))?;
        ensure!(v.is_stable(), "stratum {s} is not stable on the normalization");
        let k = components_after_cut(g, &s.nodes.edges) as i64;
        ensure!(s.dim == genus(g) - s.nodes.len() as i64 + k - 1, "dimension of {s}");
        ensure!(s.dim >= 0 && s.dim <= genus(g), "dimension of {s} out of range");
        if s.nodes.is_empty() {
            ensure!(s.dim == genus(g), "open stratum {s} has dim below g");
        }
    }
    Ok(())
}

pub fn check_type_vs_tree_like(g: &DualGraph) -> Result<(), TestCaseError> {
    let t = ok(classify_type_g_minus_1(g))?;
    ensure!((t.kind == PicardType::NType) == is_tree_like(g), "type {} on {g}", t.kind);
    Ok(())
}

pub fn check_neron_independent_of_degree(g: &DualGraph) -> Result<(), TestCaseError> {
    let c = complexity(g);
    for d in -2..=3 {
        let f = ok(neron_fiber(g, d))?;
        ensure!(f.count == c && BigInt::from(f.components.len()) == c, "Néron fiber size in degree {d}");
    }
    Ok(())
}

// theta

pub fn check_theta_vs_strata(g: &DualGraph) -> Result<(), TestCaseError> {
    let t = ok(theta_strata(g))?;
    let s = ok(strata(g))?;
    ensure!(t.len() == s.len(), "{} theta strata for {} strata", t.len(), s.len());
    for (ts, base) in t.iter().zip(&s) {
        ensure!(&ts.base == base, "theta strata out of order");
        if let ThetaDim::Known(k) = ts.dim {
            ensure!(k == base.dim - 1, "theta stratum over {base} has dim {k}");
        }
    }
    Ok(())
}

// abel

pub fn check_naturality_bound(g: &DualGraph, d: i64) -> Result<(), TestCaseError> {
    let v = ok(naturality_necessary(g, d))?;
    if !essential_connectivity(g).exceeds(d) {
        ensure!(v.status == NaturalityStatus::NotNatural, "degree {d} at or above connectivity on {g}");
    } else {
        ensure!(v.status == NaturalityStatus::PossiblyNatural, "degree {d} below connectivity on {g}");
    }
    Ok(())
}

/// Hand-built curves with the expected degree-1 verdict.
pub fn degree1_cases() -> Vec<(DualGraph, bool)> {
    let v = |n: &str, g: u32| Vertex::new(n, g);
    vec![
        // rational tail on an elliptic component
        (DualGraph::new(vec![v("E", 1), v("R", 0)], vec![(0, 1)]).unwrap(), false),
        // genus-1 tail instead
        (DualGraph::new(vec![v("E", 1), v("F", 1)], vec![(0, 1)]).unwrap(), true),
        // rational bridge between two elliptic curves
        (DualGraph::new(vec![v("E", 1), v("R", 0), v("F", 1)], vec![(0, 1), (1, 2)]).unwrap(), false),
        // rational component with a self-node on a tail
        (DualGraph::new(vec![v("E", 1), v("R", 0)], vec![(0, 1), (1, 1)]).unwrap(), true),
        // rational component on a cycle
        (DualGraph::new(vec![v("a", 0), v("b", 0), v("c", 1)], vec![(0, 1), (1, 2), (2, 0)]).unwrap(), true),
        // rational component attached by a bridge and by a cycle edge pair
        (
            DualGraph::new(vec![v("a", 0), v("b", 1), v("c", 1)], vec![(0, 1), (0, 2), (0, 2)]).unwrap(),
            true,
        ),
        (DualGraph::irreducible(0, 1), true),
        (DualGraph::irreducible(2, 0), true),
        (DualGraph::vine(0, 0, 2).unwrap(), true),
    ]
}

pub fn check_degree1_cases() -> Result<(), TestCaseError> {
    for (g, expected) in degree1_cases() {
        let r = degree1_abel_is_embedding(&g);
        ensure!(r.embedding == expected, "degree-1 verdict {} on {g}", r.embedding);
    }
    Ok(())
}
