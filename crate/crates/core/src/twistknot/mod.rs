//! Twist knots `K_p`: the cyclotomic kernel, `Ĵ_p`, `J_p`, the recursion
//! pipeline and the checks against published data.

mod fixtures;
mod pipeline;
mod q1;
mod values;

pub use fixtures::{apoly_fixture, rec_fixture, rec_fixture_path, FixtureSource, RecFixture};
pub use pipeline::{
    annihilation_check, compare_with_fixture, expected_order, jhat_recursion, noncomm_a, random_points,
    recs_proportional_at, AnnihilationReport, FixtureMatch, JhatRecursion,
};
pub use q1::{
    check_aj, hoste_shanahan_check, m_squared_to_q, q_to_m_squared, specialize_q1, AJReport, Q1Shadow, StepReport,
    LM_NAMES, LQ_NAMES,
};
pub use values::{
    colored_jones, colored_jones_from, colored_jones_range, cyclotomic_kernel, gauss_binomial, jhat, jhat_summand,
    jhat_summand_value, kernel_value, kernel_value_braces, qpoch_q,
};
