//! Exact computation of Dedekind sums and their mean values.
//!
//! The crate evaluates `s(h, k)` by two independent algorithms (the O(k)
//! defining sum and the O(log k) continued-fraction formula), verifies the
//! classical identities exactly in rational arithmetic, dissects the unit
//! interval into Farey neighborhoods, evaluates every analytic constant as
//! an exact rational via Bernoulli numbers, reproduces the moment
//! asymptotics empirically, and checks the Walum L-function identity.
//!
//! All exact results are independent of the worker-thread count; floating
//! accumulation orders are fixed where floats appear at all.

pub mod cf;
pub mod cli;
pub mod constants;
pub mod dedekind;
pub mod diophantine;
pub mod error;
pub mod factor;
pub mod moments;
pub mod rational;
pub mod real;
pub mod walum;

pub use cf::{cf_expand, cf_partial_quotient_sum, ContinuedFraction};
pub use constants::{
    bernoulli, coprime_zeta_factor, divisor_sum_partial, euler_product_partial, moment_constant,
    zeta_even, PiPower,
};
pub use dedekind::{
    dedekind_fast, dedekind_naive, dedekind_signed, dedekind_table, hall_huxley_residual,
    rademacher_residual, reciprocity_residual, sawtooth,
};
pub use diophantine::{
    approx_eps, approx_error, build_dissection, dirichlet_approx, lemma8_bound_check,
    lemma_main_term, ApproxTriple, Dissection, FareyInterval,
};
pub use error::{Error, Result};
pub use moments::{
    fm, fm_oracle, growth_check, main_term_prime, moment, moment_report, vardi_histogram,
    FmOracle, GrowthRow, MomentReport, VardiHistogram,
};
pub use rational::{gcd, mod_inverse, Rational};
pub use walum::{build_characters, heath_brown_ratio, walum_check, CharacterTable, WalumReport};
