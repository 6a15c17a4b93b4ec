use proptest::prelude::*;
use swcalc_core::vertex::properties::{check_instance, Property};

fn holds(prop: Property, seed: u64) -> Result<(), TestCaseError> {
    check_instance(prop, seed).map_err(TestCaseError::fail)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn skew_symmetry(seed in any::<u64>()) {
        holds(Property::SkewSymmetry, seed)?;
    }

    #[test]
    fn derivative_compatibility(seed in any::<u64>()) {
        holds(Property::Derivative, seed)?;
    }

    #[test]
    fn zeroth_product_is_a_derivation(seed in any::<u64>()) {
        holds(Property::Derivation, seed)?;
    }

    #[test]
    fn weight_additivity(seed in any::<u64>()) {
        holds(Property::WeightAdditivity, seed)?;
    }

    #[test]
    fn canonical_form_confluence(seed in any::<u64>()) {
        holds(Property::Confluence, seed)?;
    }
}
