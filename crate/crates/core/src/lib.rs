//! Cube-ending positions in Fibonacci, Sturmian and morphic words.
//!
//! The pipeline is: generate a prefix of an infinite binary word
//! ([`words`]), find its maximal repetitions and mark every position where
//! a cube ends ([`repetitions`]), then study the runs of the resulting
//! 0/1 sequence ([`runlen`]) against Zeckendorf-numeration patterns
//! ([`zeckendorf`], [`automata`]). [`analysis`] assembles the checks into
//! reports.
//!
//! Numeric code is generic over its scalar through the traits in [`num`];
//! the aliases below fix the unbounded choices used by default.

pub mod analysis;
pub mod automata;
pub mod num;
pub mod repetitions;
pub mod runlen;
pub mod words;
pub mod zeckendorf;

/// Unbounded natural number for Fibonacci values and path counts.
pub type Count = num_bigint::BigUint;

/// Slopes `(p + q·√d)/r` of characteristic Sturmian words.
pub type Slope = num::QuadraticIrrational<num_bigint::BigInt>;

/// Exact exponent (length over period) of a repetition.
pub type Exponent = num_rational::Ratio<u64>;

pub use analysis::{
    compare_sums, density_report, max_no_cubes_estimate, partial_sums, verify_run_starts,
    verify_theorem1, verify_theorem2,
};
pub use automata::{compile, compile_str, Dfa, GrowthClass, PatternExpr};
pub use repetitions::{
    brute_cube_ends, cube_marks, find_runs, max_exponent, CubeMarkSequence, GoldenConstants,
    RepetitionRun,
};
pub use runlen::{census, runs_of, RunCensus, SymbolRun};
pub use words::{Prefix, WordSpec};
pub use zeckendorf::{fib_number, zeck_decode, zeck_encode, ZeckRepr};
