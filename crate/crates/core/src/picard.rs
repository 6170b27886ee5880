//! Strata of the degree `g-1` compactified Jacobian, Néron fibers, and the
//! two-component specialization rule.
//!
//! A stratum is a pair `(S, d)` with `S` a set of nodes and `d` a stable
//! multidegree on the normalization at exactly `S`. Its dimension is the
//! genus of that normalization.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::classgroup::{degree_class_group, ClassLabel, Multidegree};
use crate::error::{Error, Result};
use crate::graph::{
    component_arithmetic_genus, complexity, counts, is_tree_like, normalize, DualGraph, Limits, NodeSet,
};
use crate::stability::{check_stability, enumerate_stable_normalized, StabilityStatus};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Stratum {
    pub nodes: NodeSet,
    /// Multidegree on the partial normalization, in parent vertex order.
    pub multidegree: Multidegree,
    pub dim: i64,
    /// Connected components of the partial normalization.
    pub components: usize,
}

impl Stratum {
    /// Label in terms of line bundles on the blow-up at `S`, with `O(1)` on
    /// each exceptional line.
    pub fn description(&self) -> String {
        if self.nodes.is_empty() {
            return format!("Pic^{}(X)", self.multidegree);
        }
        let lines = self.nodes.len();
        let plural = if lines == 1 { "" } else { "s" };
        format!(
            "Pic^{}(X^ν_{}), O(1) on {lines} exceptional line{plural}",
            self.multidegree, self.nodes
        )
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S={} d={} dim={}", self.nodes, self.multidegree, self.dim)
    }
}

/// Calls `visit` on every subset of `0..n`, by size and then
/// lexicographically.
fn for_each_subset(n: usize, mut visit: impl FnMut(&[usize]) -> Result<()>) -> Result<()> {
    for k in 0..=n {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            visit(&idx)?;
            let Some(pos) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
                break;
            };
            idx[pos] += 1;
            for j in pos + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    Ok(())
}

pub fn strata(g: &DualGraph) -> Result<Vec<Stratum>> {
    strata_with(g, &Limits::default())
}

/// All strata, ordered by `|S|`, then `S` lexicographically, then `d`.
pub fn strata_with(g: &DualGraph, limits: &Limits) -> Result<Vec<Stratum>> {
    let delta = g.edge_count();
    if delta > limits.max_strata_edges {
        return Err(Error::CapExceeded {
            what: "strata edge",
            limit: limits.max_strata_edges as u64,
            required: delta as u64,
        });
    }
    let genus = counts(g).genus;
    let mut out = Vec::new();
    for_each_subset(delta, |s| {
        let nodes = NodeSet::new(g, s.to_vec())?;
        let pn = normalize(g, &nodes)?;
        let components = pn.components.len();
        let dim = genus - s.len() as i64 + components as i64 - 1;
        for d in enumerate_stable_normalized(&pn, limits)? {
            out.push(Stratum { nodes: nodes.clone(), multidegree: d, dim, components });
        }
        Ok(())
    })?;
    Ok(out)
}

/// Whether the component rule has been checked against closed forms for
/// this shape of curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentConfidence {
    Validated,
    Heuristic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibleComponents {
    pub components: Vec<Stratum>,
    pub confidence: ComponentConfidence,
}

fn is_vine(g: &DualGraph) -> bool {
    g.vertex_count() == 2 && g.edges().iter().all(|e| !e.is_loop())
}

fn component_confidence(g: &DualGraph) -> ComponentConfidence {
    if g.vertex_count() == 1 || is_vine(g) || is_tree_like(g) {
        ComponentConfidence::Validated
    } else {
        ComponentConfidence::Heuristic
    }
}

/// Strata of maximal dimension. These are the `S = ∅` strata whenever a
/// stable multidegree exists on the curve itself.
pub fn irreducible_components(g: &DualGraph) -> Result<IrreducibleComponents> {
    irreducible_components_with(g, &Limits::default())
}

pub fn irreducible_components_with(g: &DualGraph, limits: &Limits) -> Result<IrreducibleComponents> {
    let all = strata_with(g, limits)?;
    let top = all.iter().map(|s| s.dim).max().ok_or_else(|| Error::Internal("no strata".into()))?;
    Ok(IrreducibleComponents {
        components: all.into_iter().filter(|s| s.dim == top).collect(),
        confidence: component_confidence(g),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PicardType {
    #[serde(rename = "N")]
    NType,
    #[serde(rename = "D")]
    DType,
}

impl fmt::Display for PicardType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PicardType::NType => "N-type",
            PicardType::DType => "D-type",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeClassification {
    pub kind: PicardType,
    pub tree_like: bool,
    pub component_count: usize,
    pub complexity: BigInt,
}

pub fn classify_type_g_minus_1(g: &DualGraph) -> Result<TypeClassification> {
    classify_type_g_minus_1_with(g, &Limits::default())
}

pub fn classify_type_g_minus_1_with(g: &DualGraph, limits: &Limits) -> Result<TypeClassification> {
    let tree_like = is_tree_like(g);
    Ok(TypeClassification {
        kind: if tree_like { PicardType::NType } else { PicardType::DType },
        tree_like,
        component_count: irreducible_components_with(g, limits)?.components.len(),
        complexity: complexity(g),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeronFiber {
    pub degree: i64,
    pub components: Vec<(ClassLabel, Multidegree)>,
    pub count: BigInt,
}

/// Components of the Néron fiber in degree `d`, one per class.
pub fn neron_fiber(g: &DualGraph, d: i64) -> Result<NeronFiber> {
    neron_fiber_with(g, d, &Limits::default())
}

pub fn neron_fiber_with(g: &DualGraph, d: i64, limits: &Limits) -> Result<NeronFiber> {
    let dcg = degree_class_group(g);
    let components = dcg
        .class_representatives_with(g, d, limits)?
        .into_iter()
        .map(|rep| Ok((dcg.class_of(&rep)?, rep)))
        .collect::<Result<Vec<_>>>()?;
    Ok(NeronFiber { degree: d, components, count: complexity(g) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DGeneral {
    AllCurves,
    TreeLikeOnly,
    Unknown,
}

impl fmt::Display for DGeneral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DGeneral::AllCurves => "all curves",
            DGeneral::TreeLikeOnly => "tree-like only",
            DGeneral::Unknown => "unknown",
        })
    }
}

/// Whether degree `d` in genus `g` yields N-type compactified Picard
/// schemes for every curve (`gcd(d-g+1, 2g-2) = 1`), or at least for the
/// given tree-like curve.
pub fn d_general_verdict(genus: i64, d: i64, g: Option<&DualGraph>) -> Result<DGeneral> {
    if genus < 2 {
        return Err(Error::GenusTooSmall(genus));
    }
    if (d - genus + 1).gcd(&(2 * genus - 2)) == 1 {
        Ok(DGeneral::AllCurves)
    } else if g.is_some_and(is_tree_like) {
        Ok(DGeneral::TreeLikeOnly)
    } else {
        Ok(DGeneral::Unknown)
    }
}

/// Which component carries the excess degree and loses its branch points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExcessSide {
    First,
    Second,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryPoint {
    pub stratum: Stratum,
    /// Per vertex, how many of its branch points over the nodes are
    /// subtracted from the restricted line bundle.
    pub pullback_twist: Vec<usize>,
    pub side: ExcessSide,
    pub description: String,
}

/// Limit point in the deepest stratum of a family whose special fiber has
/// strictly semistable multidegree on a two-component curve.
pub fn specialize_two_component(g: &DualGraph, d: &Multidegree) -> Result<BoundaryPoint> {
    if g.vertex_count() != 2 {
        return Err(Error::NotTwoComponent(g.vertex_count()));
    }
    let delta = g.edges().iter().filter(|e| !e.is_loop()).count();
    let verdict = check_stability(g, d)?;
    if verdict.status != StabilityStatus::StrictlySemistable || delta < 2 {
        return Err(Error::NotStrictlySemistable(d.entries().to_vec()));
    }
    let p1 = component_arithmetic_genus(g, 0)?;
    let p2 = component_arithmetic_genus(g, 1)?;
    let side = if d[0] == p1 - 1 && d[1] == p2 - 1 + delta as i64 {
        ExcessSide::Second
    } else if d[0] == p1 - 1 + delta as i64 && d[1] == p2 - 1 {
        ExcessSide::First
    } else {
        return Err(Error::NotStrictlySemistable(d.entries().to_vec()));
    };
    let nodes = NodeSet::new(
        g,
        g.edges().iter().enumerate().filter(|(_, e)| !e.is_loop()).map(|(i, _)| i).collect(),
    )?;
    let genus = counts(g).genus;
    let stratum = Stratum {
        nodes,
        multidegree: Multidegree::new(vec![p1 - 1, p2 - 1]),
        dim: genus - delta as i64 + 1,
        components: 2,
    };
    let (c1, c2) = (g.name(0), g.name(1));
    let (pullback_twist, description) = match side {
        ExcessSide::Second => (vec![0, delta], format!("(L_{c1}, L_{c2}(-q_1-...-q_{delta}))")),
        ExcessSide::First => (vec![delta, 0], format!("(L_{c1}(-p_1-...-p_{delta}), L_{c2})")),
    };
    Ok(BoundaryPoint { stratum, pullback_twist, side, description })
}
