//! Exact-arithmetic models of the centraliser algebras of tensor powers of
//! the fundamental U_q(osp(1|2n))-module: permuted R-matrices, the
//! Birman-Wenzl-Murakami tower specialised at r = -q^{2n}, Bratteli-path
//! projections and matrix units, Markov traces and link evaluation, plus the
//! rank-one spinor tower carrying a Hecke-algebra action.
//!
//! All computation is exact: scalars are rational functions of q over the
//! rationals (or of t = q^{1/4} over the Gaussian rationals for the spinor
//! tower), and every identity is checked by structural equality.

pub mod scalar;

pub mod roots;

pub mod graded;

pub mod rmatrix;

pub mod bmw;

pub mod centralizer;

pub mod spinor;

pub mod verify;

pub use graded::{FundamentalModule, Gen, GradedOperator, GradedSpace};
pub use roots::{
    bilinear_form, branch, dim_module, normal_ordering, partitions, reduced_roots, sdim_q,
    simple_roots, two_rho, NormalOrder, Root, Weight, YoungDiagram,
};
pub use scalar::{
    Field, Fq, Ft, GaussianRational, LaurentPoly, Radical, Rational, RationalFunction,
    ScalarError, SqrtSplit, Substitution,
};
