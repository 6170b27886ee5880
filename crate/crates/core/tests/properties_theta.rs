mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn theta_strata_sit_in_codimension_one(g in graph_strategy(5, 8, 2)) {
        check_theta_vs_strata(&g)?;
    }
}
