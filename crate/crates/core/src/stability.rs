//! Semistable and stable multidegrees in degree `g-1`.
//!
//! `d` is semistable when `d_Z >= p_a(Z) - 1` for every connected proper
//! subcurve `Z`, and stable when every inequality is strict. A disconnected
//! curve is tested componentwise.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::classgroup::Multidegree;
use crate::error::{Error, Result};
use crate::graph::{
    component_arithmetic_genus, connected_proper_masks, counts, DualGraph, Limits, PartialNormalization, Subcurve,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StabilityStatus {
    Stable,
    StrictlySemistable,
    Unstable,
}

impl fmt::Display for StabilityStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StabilityStatus::Stable => "stable",
            StabilityStatus::StrictlySemistable => "strictly semistable",
            StabilityStatus::Unstable => "unstable",
        })
    }
}

/// Classification plus the subcurves responsible for it: the violating
/// ones when unstable, the saturating ones when strictly semistable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityVerdict {
    pub status: StabilityStatus,
    pub witnesses: Vec<Subcurve>,
}

impl StabilityVerdict {
    pub fn is_semistable(&self) -> bool {
        self.status != StabilityStatus::Unstable
    }

    pub fn is_stable(&self) -> bool {
        self.status == StabilityStatus::Stable
    }
}

/// Connected proper subcurves with their arithmetic genera, as bitmasks.
#[derive(Clone, Debug)]
pub(crate) struct SubcurveTable {
    gamma: usize,
    entries: Vec<(u64, i64)>,
}

impl SubcurveTable {
    pub(crate) fn new(g: &DualGraph, limits: &Limits) -> Result<Self> {
        let entries = connected_proper_masks(g, limits)?
            .into_iter()
            .map(|m| (m, g.mask_pa(m)))
            .collect();
        Ok(SubcurveTable { gamma: g.vertex_count(), entries })
    }

    pub(crate) fn full_mask(&self) -> u64 {
        (1u64 << self.gamma) - 1
    }

    fn classify(&self, d: &Multidegree) -> StabilityVerdict {
        let mut violating = Vec::new();
        let mut saturating = Vec::new();
        for &(mask, pa) in &self.entries {
            let dz = d.sum_over_mask(mask);
            if dz < pa - 1 {
                violating.push(mask);
            } else if dz == pa - 1 {
                saturating.push(mask);
            }
        }
        let (status, witnesses) = if !violating.is_empty() {
            (StabilityStatus::Unstable, violating)
        } else if !saturating.is_empty() {
            (StabilityStatus::StrictlySemistable, saturating)
        } else {
            (StabilityStatus::Stable, Vec::new())
        };
        StabilityVerdict { status, witnesses: witnesses.into_iter().map(Subcurve::from_mask).collect() }
    }

    fn is_semistable(&self, d: &Multidegree) -> bool {
        self.entries.iter().all(|&(m, pa)| d.sum_over_mask(m) >= pa - 1)
    }

    fn is_stable(&self, d: &Multidegree) -> bool {
        self.entries.iter().all(|&(m, pa)| d.sum_over_mask(m) > pa - 1)
    }
}

/// The violating subcurve of largest deficit, earliest in enumeration
/// order among ties.
pub(crate) fn worst_violation(table: &SubcurveTable, d: &Multidegree) -> Option<u64> {
    let mut best: Option<(i64, u64)> = None;
    for &(mask, pa) in &table.entries {
        let deficit = pa - 1 - d.sum_over_mask(mask);
        if deficit > 0 && best.is_none_or(|(b, _)| deficit > b) {
            best = Some((deficit, mask));
        }
    }
    best.map(|(_, m)| m)
}

fn check_total(g: &DualGraph, d: &Multidegree) -> Result<()> {
    if d.len() != g.vertex_count() {
        return Err(Error::LengthMismatch { expected: g.vertex_count(), found: d.len() });
    }
    let expected = counts(g).genus - 1;
    if d.total() != expected {
        return Err(Error::TotalDegree { expected, found: d.total() });
    }
    Ok(())
}

pub fn check_stability(g: &DualGraph, d: &Multidegree) -> Result<StabilityVerdict> {
    check_stability_with(g, d, &Limits::default())
}

pub fn check_stability_with(g: &DualGraph, d: &Multidegree, limits: &Limits) -> Result<StabilityVerdict> {
    check_total(g, d)?;
    Ok(SubcurveTable::new(g, limits)?.classify(d))
}

pub fn is_semistable(g: &DualGraph, d: &Multidegree) -> Result<bool> {
    Ok(check_stability(g, d)?.is_semistable())
}

pub fn is_stable(g: &DualGraph, d: &Multidegree) -> Result<bool> {
    Ok(check_stability(g, d)?.is_stable())
}

/// Stability on a partial normalization, with `d` in parent vertex order.
/// Each component must carry total degree `p_a - 1`. Witnesses are
/// reported in parent vertex indices.
pub fn check_stability_normalized(
    pn: &PartialNormalization,
    d: &Multidegree,
    limits: &Limits,
) -> Result<StabilityVerdict> {
    if d.len() != pn.parent_vertex_count {
        return Err(Error::LengthMismatch { expected: pn.parent_vertex_count, found: d.len() });
    }
    let mut worst = StabilityVerdict { status: StabilityStatus::Stable, witnesses: Vec::new() };
    for (k, comp) in pn.components.iter().enumerate() {
        let local = d.restrict(&comp.parent_vertices);
        let expected = counts(&comp.graph).genus - 1;
        if local.total() != expected {
            return Err(Error::ComponentDegree { component: k, expected, found: local.total() });
        }
        let verdict = check_stability_with(&comp.graph, &local, limits)?;
        let lifted = verdict
            .witnesses
            .iter()
            .map(|z| Subcurve::new(z.vertices.iter().map(|&v| comp.parent_vertices[v]).collect()));
        if verdict.status > worst.status {
            worst = StabilityVerdict { status: verdict.status, witnesses: lifted.collect() };
        } else if verdict.status == worst.status {
            worst.witnesses.extend(lifted);
        }
    }
    Ok(worst)
}

/// Number of integer points of the sum-constrained box: `C(s + n - 1, n - 1)`.
fn box_size(slack: i64, n: usize) -> BigInt {
    let mut acc = BigInt::from(1);
    for i in 1..n as i64 {
        acc = acc * (slack + i) / i;
    }
    acc
}

/// Every multidegree with `|d| = g-1` and `d_i >= p_a(C_i) - 1`, in
/// lexicographic order. The slack above the lower bounds equals the number
/// of non-loop edges.
fn degree_box(g: &DualGraph, limits: &Limits) -> Result<Vec<Multidegree>> {
    let n = g.vertex_count();
    let lower = (0..n)
        .map(|v| component_arithmetic_genus(g, v).map(|p| p - 1))
        .collect::<Result<Vec<_>>>()?;
    let slack = counts(g).genus - 1 - lower.iter().sum::<i64>();
    let size = box_size(slack, n);
    if size > BigInt::from(limits.max_box_points) {
        return Err(Error::CapExceeded {
            what: "multidegree box",
            limit: limits.max_box_points,
            required: size.to_u64().unwrap_or(u64::MAX),
        });
    }
    let mut out = Vec::new();
    let mut current = lower.clone();
    fill_box(&lower, 0, slack, &mut current, &mut out);
    Ok(out)
}

fn fill_box(lower: &[i64], i: usize, remaining: i64, current: &mut Vec<i64>, out: &mut Vec<Multidegree>) {
    if i + 1 == lower.len() {
        current[i] = lower[i] + remaining;
        out.push(Multidegree::new(current.clone()));
        return;
    }
    for extra in 0..=remaining {
        current[i] = lower[i] + extra;
        fill_box(lower, i + 1, remaining - extra, current, out);
    }
}

pub fn enumerate_semistable(g: &DualGraph) -> Result<Vec<Multidegree>> {
    enumerate_semistable_with(g, &Limits::default())
}

pub fn enumerate_semistable_with(g: &DualGraph, limits: &Limits) -> Result<Vec<Multidegree>> {
    let table = SubcurveTable::new(g, limits)?;
    Ok(degree_box(g, limits)?.into_iter().filter(|d| table.is_semistable(d)).collect())
}

pub fn enumerate_stable(g: &DualGraph) -> Result<Vec<Multidegree>> {
    enumerate_stable_with(g, &Limits::default())
}

pub fn enumerate_stable_with(g: &DualGraph, limits: &Limits) -> Result<Vec<Multidegree>> {
    let table = SubcurveTable::new(g, limits)?;
    Ok(degree_box(g, limits)?.into_iter().filter(|d| table.is_stable(d)).collect())
}

fn product(per_component: &[Vec<Multidegree>], limits: &Limits) -> Result<Vec<Vec<Multidegree>>> {
    let size = per_component.iter().fold(BigInt::from(1), |acc, s| acc * s.len());
    if size > BigInt::from(limits.max_box_points) {
        return Err(Error::CapExceeded {
            what: "stable multidegree product",
            limit: limits.max_box_points,
            required: size.to_u64().unwrap_or(u64::MAX),
        });
    }
    let mut out: Vec<Vec<Multidegree>> = vec![Vec::new()];
    for choices in per_component {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                choices.iter().map(move |c| {
                    let mut next = prefix.clone();
                    next.push(c.clone());
                    next
                })
            })
            .collect();
    }
    Ok(out)
}

/// Stable multidegrees of a disjoint union, concatenated in list order.
pub fn enumerate_stable_disconnected(components: &[DualGraph]) -> Result<Vec<Multidegree>> {
    enumerate_stable_disconnected_with(components, &Limits::default())
}

pub fn enumerate_stable_disconnected_with(components: &[DualGraph], limits: &Limits) -> Result<Vec<Multidegree>> {
    let per = components
        .iter()
        .map(|c| enumerate_stable_with(c, limits))
        .collect::<Result<Vec<_>>>()?;
    Ok(product(&per, limits)?
        .into_iter()
        .map(|parts| Multidegree::new(parts.iter().flat_map(|p| p.entries().to_vec()).collect()))
        .collect())
}

/// Stable multidegrees of a partial normalization in parent vertex order,
/// sorted lexicographically.
pub fn enumerate_stable_normalized(pn: &PartialNormalization, limits: &Limits) -> Result<Vec<Multidegree>> {
    let per = pn
        .components
        .iter()
        .map(|c| enumerate_stable_with(&c.graph, limits))
        .collect::<Result<Vec<_>>>()?;
    let mut out: Vec<Multidegree> = product(&per, limits)?
        .into_iter()
        .map(|parts| {
            let mut entries = vec![0; pn.parent_vertex_count];
            for (comp, part) in pn.components.iter().zip(&parts) {
                for (&v, &x) in comp.parent_vertices.iter().zip(part.entries()) {
                    entries[v] = x;
                }
            }
            Multidegree::new(entries)
        })
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{normalize, NodeSet, Vertex};

    fn md(v: &[i64]) -> Multidegree {
        Multidegree::new(v.to_vec())
    }

    #[test]
    fn vine_verdicts() {
        let vine = DualGraph::vine(1, 1, 2).unwrap();
        assert_eq!(check_stability(&vine, &md(&[1, 1])).unwrap().status, StabilityStatus::Stable);
        let v = check_stability(&vine, &md(&[0, 2])).unwrap();
        assert_eq!(v.status, StabilityStatus::StrictlySemistable);
        assert_eq!(v.witnesses, vec![Subcurve::new(vec![0])]);
        let v = check_stability(&vine, &md(&[-1, 3])).unwrap();
        assert_eq!(v.status, StabilityStatus::Unstable);
        assert_eq!(v.witnesses, vec![Subcurve::new(vec![0])]);
        assert!(matches!(check_stability(&vine, &md(&[1, 2])), Err(Error::TotalDegree { .. })));
    }

    #[test]
    fn vine_enumerations() {
        let vine = DualGraph::vine(1, 1, 2).unwrap();
        assert_eq!(enumerate_semistable(&vine).unwrap(), vec![md(&[0, 2]), md(&[1, 1]), md(&[2, 0])]);
        assert_eq!(enumerate_stable(&vine).unwrap(), vec![md(&[1, 1])]);
        assert!(enumerate_stable(&DualGraph::vine(2, 3, 1).unwrap()).unwrap().is_empty());
    }

    #[test]
    fn irreducible_enumerations() {
        for (genus, loops) in [(0, 0), (2, 0), (1, 3)] {
            let g = DualGraph::irreducible(genus, loops);
            let expect = vec![md(&[genus as i64 + loops as i64 - 1])];
            assert_eq!(enumerate_semistable(&g).unwrap(), expect);
            assert_eq!(enumerate_stable(&g).unwrap(), expect);
        }
    }

    #[test]
    fn disconnected_enumerations() {
        let pts = [DualGraph::irreducible(2, 0), DualGraph::irreducible(3, 0)];
        assert_eq!(enumerate_stable_disconnected(&pts).unwrap(), vec![md(&[1, 2])]);

        let vine = DualGraph::vine(1, 1, 2).unwrap();
        assert_eq!(
            enumerate_stable_disconnected(std::slice::from_ref(&vine)).unwrap(),
            enumerate_stable(&vine).unwrap()
        );

        let mixed = [vine, DualGraph::irreducible(2, 0)];
        assert_eq!(enumerate_stable_disconnected(&mixed).unwrap(), vec![md(&[1, 1, 1])]);
    }

    #[test]
    fn normalized_checks_use_parent_order() {
        let g = DualGraph::new(
            vec![Vertex::new("a", 1), Vertex::new("b", 0), Vertex::new("c", 2)],
            vec![(0, 2), (0, 2), (1, 2)],
        )
        .unwrap();
        let pn = normalize(&g, &NodeSet::new(&g, vec![2]).unwrap()).unwrap();
        assert_eq!(pn.components.len(), 2);
        let stable = enumerate_stable_normalized(&pn, &Limits::default()).unwrap();
        assert_eq!(stable, vec![md(&[1, -1, 2])]);
        let v = check_stability_normalized(&pn, &stable[0], &Limits::default()).unwrap();
        assert!(v.is_stable());
        let v = check_stability_normalized(&pn, &md(&[0, -1, 3]), &Limits::default()).unwrap();
        assert_eq!(v.status, StabilityStatus::StrictlySemistable);
        assert_eq!(v.witnesses, vec![Subcurve::new(vec![0])]);
        assert!(matches!(
            check_stability_normalized(&pn, &md(&[1, 0, 2]), &Limits::default()),
            Err(Error::ComponentDegree { component: 1, expected: -1, found: 0 })
        ));
    }

    #[test]
    fn box_cap_is_reported() {
        let limits = Limits { max_box_points: 2, ..Limits::default() };
        let err = enumerate_semistable_with(&DualGraph::vine(0, 0, 5).unwrap(), &limits).unwrap_err();
        assert_eq!(err, Error::CapExceeded { what: "multidegree box", limit: 2, required: 6 });
    }
}
