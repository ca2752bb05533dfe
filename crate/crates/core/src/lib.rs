//! Gaussian quadrature reconstructed from exact moment-series algebra.
//!
//! The pipeline runs entirely over exact rationals until the very last step:
//!
//! 1. [`momseries`] builds the moment series of the integration measure as a
//!    formal series in descending powers and splits node-polynomial products
//!    into a polynomial part (which encodes the weights) and a tail (which
//!    encodes the error series).
//! 2. [`gausscf`] expands the moment series of `du/2` on `[-1, 1]` as a
//!    continued fraction; its convergent denominators are the node
//!    polynomials of the Gaussian rules.
//! 3. [`rootfind`] extracts the nodes at configurable decimal precision and
//!    [`interprule`] turns any node set into a weighted rule, applies it and
//!    computes its error coefficients two independent ways.
//!
//! The `quad` binary ([`cli`]) prints rule tables, runs the classical
//! `∫ dx / ln x` convergence demonstration on `[100000, 200000]`, and applies
//! rules to built-in or tabulated integrands.

pub mod cli;
pub mod error;
pub mod gausscf;
pub mod interprule;
pub mod momseries;
pub mod numerics;
pub mod ratpoly;
pub mod rootfind;

pub use error::{Error, Result};
pub use gausscf::{
    cf_coefficient, gauss_rule, leading_error_constant, legendre_pair, weight_polynomial,
    LegendrePair,
};
pub use interprule::{
    apply_rule, error_coefficients, interpolatory_rule, newton_cotes, Convention, ErrorSeries,
    Nodes, QuadRule,
};
pub use momseries::{moment_series_t, moment_series_u, product_split, SeriesTail};
pub use numerics::{HpFloat, Precision, Rational};
pub use ratpoly::RatPoly;
pub use rootfind::{real_roots_symmetric, RootSet};
