mod common;

use common::*;
use nodal::abel::NaturalityReason;
use nodal::{correction_profile_vine, natural_g_minus_1_vine, DualGraph, NaturalityStatus};
use nodal::stability::is_semistable;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn degrees_at_the_connectivity_are_not_natural(g in graph_strategy(6, 10, 2), d in 1i64..12) {
        check_naturality_bound(&g, d)?;
    }
}

#[test]
fn degree1_embedding_on_hand_built_curves() {
    check_degree1_cases().unwrap();
}

#[test]
fn two_formulations_of_vine_naturality_agree() {
    for g1 in 0..=3u32 {
        for g2 in 0..=3u32 {
            for delta in 2..=6usize {
                let genus = (g1 + g2) as i64 + delta as i64 - 1;
                let first = delta as i64 >= genus - 1 && (g1.min(g2), g1.max(g2)) != (0, 2);
                let second = g1 <= 1 && g2 <= 1;
                assert_eq!(first, second, "g1={g1} g2={g2} delta={delta}");
            }
        }
    }
}

#[test]
fn correction_profile_tracks_semistability() {
    for g1 in 0..=3u32 {
        for g2 in 0..=3u32 {
            for delta in 1..=6usize {
                let genus = (g1 + g2) as i64 + delta as i64 - 1;
                if genus < 2 {
                    continue;
                }
                let vine = DualGraph::vine(g1, g2, delta).unwrap();
                let p = correction_profile_vine(g1, g2, delta).unwrap();
                for e in &p.entries {
                    assert_eq!(e.a == 0, is_semistable(&vine, &e.input).unwrap(), "{e:?}");
                    assert!(is_semistable(&vine, &e.corrected).unwrap());
                }
                if delta as i64 <= genus - 2 {
                    assert!(!p.is_zero(), "g1={g1} g2={g2} delta={delta}");
                }
                let v = natural_g_minus_1_vine(g1, g2, delta).unwrap();
                if let NaturalityReason::UnstableMultidegrees { unstable, .. } = &v.reason {
                    assert_eq!(unstable.len(), p.entries.iter().filter(|e| e.a != 0).count());
                }
                if delta >= 2 {
                    assert_eq!(p.is_zero(), v.status == NaturalityStatus::Natural);
                }
            }
        }
    }
}
