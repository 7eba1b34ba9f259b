//! Pointwise alternating multilinear algebra on an `n`-dimensional inner
//! product space: graded products of endomorphism-, tangent- and
//! polyvector-valued forms, their module actions, the metric pairing `∧_g`,
//! and the extension of a tangent-valued 2-form to higher polyvectors.

mod dense;
mod forms;
mod inner;
pub mod perm;
mod polyvector;
mod products;

pub use forms::{EndForm, PolyForm, ScalarForm, VForm};
pub use inner::InnerProduct;
pub use polyvector::Polyvector;
pub use products::{
    act_left, act_left_with, act_right, act_right_with, p_extend, p_extend_decomposable, p_squared, wedge_end,
    wedge_end_with, wedge_g, wedge_g_with, wedge_poly, wedge_poly_with, wedge_scalar, wedge_scalar_with, Backend,
};

/// Equality tolerance for pointwise algebraic identities.
pub const ALGEBRA_TOL: f64 = 1e-12;
