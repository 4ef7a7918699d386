//! Exact computational toolkit for affine hyperplane arrangements in C^n
//! over a cyclotomic field Q(zeta_M).
//!
//! The library builds intersection posets, applies the convolution operator
//! mc_v (sweep every codimension-2 flat along a direction and adjoin the
//! resulting hyperplanes), decides v-closedness and stability, decomposes
//! and reduces arrangements, classifies stable arrangements against the
//! reflection-type normal-form families, and checks integrability of
//! logarithmic connections. Every predicate is exact: scalars are elements
//! of Q(zeta_M) with arbitrary-precision rational coefficients, and no
//! floating point appears anywhere.
//!
//! Two stability notions are deliberately kept separate:
//!
//! * [`convolve::is_stable`] — some basis of n independent directions keeps
//!   the arrangement closed (basis-existential);
//! * [`convolve::is_axis_stable`] — the given coordinate axes do.
//!
//! An arrangement can satisfy the first while no axis-stable superset of it
//! exists in the given coordinates; `convolve::axis_closure` exposes that
//! behaviour as budget-bounded divergence.

pub mod classify;
pub mod convolve;
pub mod cyclo;
pub mod geom;
pub mod oracle;
pub mod pfaffian;
pub mod poset;
pub mod structure;
pub mod text;

pub use cyclo::{CycError, CycField, CycScalar};
pub use geom::{Flat, GeomError, Hyperplane, Subspace, Vector};
pub use poset::{build_poset, Arrangement, IntersectionPoset};
