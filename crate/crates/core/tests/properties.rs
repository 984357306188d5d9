mod common;

macro_rules! suites {
    ($($name:ident),* $(,)?) => {
        $(
            #[test]
            fn $name() {
                if let Err(e) = common::$name() {
                    panic!("{e}");
                }
            }
        )*
    };
}

suites!(
    buchberger_criterion,
    exactness_and_minimality,
    saturation_idempotence,
    winnow_agreement,
    lemma_vanishing,
    serre_duality,
    delta_sets_match_resolutions,
    length_at_least_codim,
    truncation_hilbert_functions,
    saturated_monomial_resolutions_are_virtual,
);
