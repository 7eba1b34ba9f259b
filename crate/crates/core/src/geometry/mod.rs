//! Chart-based geometry: dual-number jets, Levi-Civita connection,
//! curvature and covariant exterior derivatives.

mod chart;
mod connection;
pub mod dual;

pub use chart::{jets, metric_fd_residual, sample_point, Chart, FieldJets, Jet};
pub use connection::{
    christoffel, const_curv_r, cov_deriv_end, cov_ext_deriv, cov_ext_deriv_jet, curvature, sectional, ConnectionAt,
    CurvatureAt, PointGeometry, VFormJet, VFormJet2,
};
pub use dual::{Dual, Scalar};
