//! Abel map predicates.
//!
//! Naturality of the degree `g-1` Abel map is decided in closed form for
//! vine curves only. In general degree only a necessary condition is
//! available, so that test never answers `Natural`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classgroup::{semistabilize, Multidegree};
use crate::error::{Error, Result};
use crate::graph::{bridges, counts, essential_connectivity, Connectivity, DualGraph};
use crate::picard::{d_general_verdict, DGeneral};
use crate::stability::is_semistable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NaturalityStatus {
    Natural,
    NotNatural,
    PossiblyNatural,
}

impl fmt::Display for NaturalityStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NaturalityStatus::Natural => "natural",
            NaturalityStatus::NotNatural => "not natural",
            NaturalityStatus::PossiblyNatural => "possibly natural",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum NaturalityReason {
    /// One node: twisters are determined by their multidegree.
    SingleNode,
    /// Both genera at most one, so every `(l, g-1-l)` is semistable.
    SmallGenera { g1: u32, g2: u32 },
    /// Some `(l, g-1-l)` is unstable, so the Abel map needs a twist.
    /// `exceptional` marks the case `{g1, g2} = {0, 2}` with `delta = g-1`.
    UnstableMultidegrees { unstable: Vec<Multidegree>, delta_at_least_g_minus_1: bool, exceptional: bool },
    /// `d` reaches the essential connectivity.
    ConnectivityBound { epsilon: Connectivity, d: i64 },
    /// `d` is below the essential connectivity; nothing more is known.
    BelowConnectivity { epsilon: Connectivity, d: i64, d_general: Option<DGeneral> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NaturalityVerdict {
    pub status: NaturalityStatus,
    pub reason: NaturalityReason,
}

fn vine_genus(g1: u32, g2: u32, delta: usize) -> Result<i64> {
    if delta < 1 {
        return Err(Error::InvalidVine("at least one node is required".into()));
    }
    let genus = i64::from(g1) + i64::from(g2) + delta as i64 - 1;
    if genus < 2 {
        return Err(Error::GenusTooSmall(genus));
    }
    Ok(genus)
}

/// Multidegrees `(l, g-1-l)` for `l = 0..g-1`.
fn abel_multidegrees(genus: i64) -> impl Iterator<Item = Multidegree> {
    (0..genus).map(move |l| Multidegree::new(vec![l, genus - 1 - l]))
}

/// Naturality of the degree `g-1` Abel map of the vine curve.
pub fn natural_g_minus_1_vine(g1: u32, g2: u32, delta: usize) -> Result<NaturalityVerdict> {
    let genus = vine_genus(g1, g2, delta)?;
    if delta == 1 {
        return Ok(NaturalityVerdict { status: NaturalityStatus::Natural, reason: NaturalityReason::SingleNode });
    }
    if g1 <= 1 && g2 <= 1 {
        return Ok(NaturalityVerdict {
            status: NaturalityStatus::Natural,
            reason: NaturalityReason::SmallGenera { g1, g2 },
        });
    }
    let vine = DualGraph::vine(g1, g2, delta)?;
    let unstable = abel_multidegrees(genus)
        .map(|d| Ok((!is_semistable(&vine, &d)?).then_some(d)))
        .filter_map(Result::transpose)
        .collect::<Result<Vec<_>>>()?;
    let delta_at_least_g_minus_1 = delta as i64 >= genus - 1;
    Ok(NaturalityVerdict {
        status: NaturalityStatus::NotNatural,
        reason: NaturalityReason::UnstableMultidegrees {
            unstable,
            delta_at_least_g_minus_1,
            exceptional: delta_at_least_g_minus_1 && (g1.min(g2), g1.max(g2)) == (0, 2),
        },
    })
}

/// The vine closed form applied to a two-component curve without
/// self-nodes; other curves are outside what is known.
pub fn natural_g_minus_1(g: &DualGraph) -> Result<NaturalityVerdict> {
    if g.vertex_count() != 2 || g.edges().iter().any(|e| e.is_loop()) {
        return Err(Error::NotCovered(
            "degree g-1 naturality is only decided for two smooth components meeting in nodes".into(),
        ));
    }
    let v = g.vertices();
    natural_g_minus_1_vine(v[0].geometric_genus, v[1].geometric_genus, g.edge_count())
}

/// Necessary condition for naturality in degree `d`: `d < epsilon(X)`.
pub fn naturality_necessary(g: &DualGraph, d: i64) -> Result<NaturalityVerdict> {
    if d < 1 {
        return Err(Error::DegreeTooSmall(d));
    }
    let epsilon = essential_connectivity(g);
    if !epsilon.exceeds(d) {
        return Ok(NaturalityVerdict {
            status: NaturalityStatus::NotNatural,
            reason: NaturalityReason::ConnectivityBound { epsilon, d },
        });
    }
    let d_general = d_general_verdict(counts(g).genus, d, Some(g)).ok();
    Ok(NaturalityVerdict {
        status: NaturalityStatus::PossiblyNatural,
        reason: NaturalityReason::BelowConnectivity { epsilon, d, d_general },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrectionEntry {
    pub l: i64,
    pub a: i64,
    pub input: Multidegree,
    pub corrected: Multidegree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrectionProfile {
    pub entries: Vec<CorrectionEntry>,
}

impl CorrectionProfile {
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.a == 0)
    }
}

/// For each `l`, an integer `a(l)` with `(l, g-1-l) + (-a delta, a delta)`
/// semistable, zero when `(l, g-1-l)` already is.
pub fn correction_profile_vine(g1: u32, g2: u32, delta: usize) -> Result<CorrectionProfile> {
    let genus = vine_genus(g1, g2, delta)?;
    let vine = DualGraph::vine(g1, g2, delta)?;
    let entries = abel_multidegrees(genus)
        .enumerate()
        .map(|(l, input)| {
            let out = semistabilize(&vine, &input)?;
            Ok(CorrectionEntry { l: l as i64, a: out.twist[0] - out.twist[1], input, corrected: out.multidegree })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CorrectionProfile { entries })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Degree1Embedding {
    pub embedding: bool,
    /// Smooth rational components attached only through separating nodes.
    pub offenders: Vec<usize>,
}

/// The degree-1 Abel map is an embedding unless some smooth rational
/// component meets the rest of the curve only in separating nodes.
pub fn degree1_abel_is_embedding(g: &DualGraph) -> Degree1Embedding {
    let is_bridge = bridges(g);
    let offenders: Vec<usize> = (0..g.vertex_count())
        .filter(|&v| {
            let incident: Vec<usize> = (0..g.edge_count()).filter(|&e| g.edges()[e].touches(v)).collect();
            g.vertices()[v].geometric_genus == 0
                && incident.iter().all(|&e| !g.edges()[e].is_loop() && is_bridge[e])
        })
        .collect();
    Degree1Embedding { embedding: offenders.is_empty(), offenders }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Vertex;

    fn md(v: &[i64]) -> Multidegree {
        Multidegree::new(v.to_vec())
    }

    #[test]
    fn vine_naturality_examples() {
        let v = natural_g_minus_1_vine(0, 2, 3).unwrap();
        assert_eq!(v.status, NaturalityStatus::NotNatural);
        match v.reason {
            NaturalityReason::UnstableMultidegrees { unstable, exceptional, delta_at_least_g_minus_1 } => {
                assert!(unstable.contains(&md(&[3, 0])));
                assert!(exceptional && delta_at_least_g_minus_1);
            }
            other => panic!("unexpected reason {other:?}"),
        }
        assert_eq!(natural_g_minus_1_vine(1, 1, 2).unwrap().status, NaturalityStatus::Natural);
        assert_eq!(natural_g_minus_1_vine(3, 2, 1).unwrap().reason, NaturalityReason::SingleNode);
        assert_eq!(natural_g_minus_1_vine(0, 0, 2), Err(Error::GenusTooSmall(1)));
        assert!(natural_g_minus_1_vine(1, 1, 0).is_err());
    }

    #[test]
    fn general_curves_are_not_covered() {
        let tri = DualGraph::new(
            vec![Vertex::new("a", 1), Vertex::new("b", 0), Vertex::new("c", 0)],
            vec![(0, 1), (1, 2), (2, 0)],
        )
        .unwrap();
        assert!(matches!(natural_g_minus_1(&tri), Err(Error::NotCovered(_))));
        let vine = DualGraph::vine(1, 1, 3).unwrap();
        assert_eq!(natural_g_minus_1(&vine).unwrap().status, NaturalityStatus::Natural);
    }

    #[test]
    fn necessary_condition_examples() {
        let vine = DualGraph::vine(1, 1, 2).unwrap();
        assert_eq!(naturality_necessary(&vine, 2).unwrap().status, NaturalityStatus::NotNatural);
        assert_eq!(naturality_necessary(&vine, 1).unwrap().status, NaturalityStatus::PossiblyNatural);
        let irr = DualGraph::irreducible(1, 2);
        for d in [1, 5, 40] {
            assert_eq!(naturality_necessary(&irr, d).unwrap().status, NaturalityStatus::PossiblyNatural);
        }
        assert_eq!(naturality_necessary(&irr, 0), Err(Error::DegreeTooSmall(0)));
    }

    #[test]
    fn correction_profiles() {
        let p = correction_profile_vine(1, 1, 2).unwrap();
        assert!(p.is_zero());
        let inputs: Vec<Multidegree> = p.entries.iter().map(|e| e.input.clone()).collect();
        assert_eq!(inputs, vec![md(&[0, 2]), md(&[1, 1]), md(&[2, 0])]);

        let p = correction_profile_vine(0, 2, 3).unwrap();
        let last = &p.entries[3];
        assert_eq!((last.input.clone(), last.corrected.clone()), (md(&[3, 0]), md(&[0, 3])));
        assert_ne!(last.a, 0);

        for delta in 3..7 {
            assert!(correction_profile_vine(0, 0, delta).unwrap().is_zero());
        }
    }

    #[test]
    fn degree1_embedding_examples() {
        assert!(degree1_abel_is_embedding(&DualGraph::vine(0, 0, 3).unwrap()).embedding);
        let r = degree1_abel_is_embedding(&DualGraph::vine(0, 2, 1).unwrap());
        assert_eq!((r.embedding, r.offenders), (false, vec![0]));
        assert!(degree1_abel_is_embedding(&DualGraph::irreducible(0, 1)).embedding);
    }
}
