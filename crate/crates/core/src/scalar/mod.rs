//! Exact coefficient arithmetic.
//!
//! Everything downstream is computed over one of these fields:
//! rationals, Gaussian rationals, and the rational-function fields they
//! generate in an indeterminate (`q` for the vector-module tower, `t`
//! with `t^4 = q` for the spinor tower).

mod field;
mod gaussian;
mod laurent;
mod ratfun;
pub(crate) mod sqrt;

pub use field::{Field, Rational, ScalarError, SqrtSplit};
pub use gaussian::GaussianRational;
pub use laurent::LaurentPoly;
pub use ratfun::{RationalFunction, Substitution};
pub use sqrt::Radical;

/// Rational functions in `q` over the rationals.
pub type Fq = RationalFunction<Rational, 'q'>;
/// Rational functions in `t` (`t^4 = q`) over the Gaussian rationals.
pub type Ft = RationalFunction<GaussianRational, 't'>;

/// Convenience: `q` as an element of `Fq`.
pub fn q() -> Fq {
    Fq::gen()
}

/// Convenience: `q^k` as an element of `Fq`.
pub fn qpow(k: i64) -> Fq {
    Fq::gen_pow(k)
}
