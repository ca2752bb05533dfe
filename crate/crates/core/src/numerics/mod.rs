//! Exact rationals and configurable-precision floats.

mod elementary;
mod hpfloat;
mod rational;

pub use elementary::{hp_ln, hp_log10_scaled};
pub use hpfloat::{HpFloat, Precision};
pub use rational::{rat_arith, ArithOp, Rational};
