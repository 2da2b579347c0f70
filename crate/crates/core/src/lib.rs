//! Verification engine for Calabi's standard minimal 2-spheres in `S^{2s}`:
//! jets of the harmonic immersion, covariant derivatives of the second
//! fundamental form, pointwise and integral identity checks, exact polynomial
//! certificates and the pinching-gap numerics.

pub mod algebra;
pub mod error;
pub mod gap;
pub mod geometry;
pub mod identities;
pub mod immersion;
pub mod jet;
pub mod quadrature;
pub mod real;
pub mod sampling;

pub use algebra::{certify, certify_all, pinch_inequality, pinch_sweep, Certificate, Identity, RationalPoly, VectorPair};
pub use error::{Error, Result};
pub use gap::{critical_point, gap_function, gap_report, theorem_bound, CriticalPoint, GapReport, GapResult};
pub use geometry::{geometry_jet, invariants, GeometryJet, InvariantReport, Precision};
pub use identities::{check_suite, check_suite_with, CheckId, ResidualReport, SuiteConfig};
pub use immersion::{build_calabi, AmbientPoly, Chart, ChartPoint, HarmonicImmersion};
pub use jet::Jet;
pub use quadrature::{build_rule, QuadratureRule, SurfaceIntegrator};
pub use real::{DoubleDouble, Real};
