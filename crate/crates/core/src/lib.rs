//! Exact nested-square constructions for the Pythagorean identity.
//!
//! The crate builds the Chou-pei family of nested squares (one orientation
//! bit per layer), the perpendicular-foot variant, and Bhāskara's rotated
//! squares, all in exact arithmetic. [`verify`] evaluates the area and length
//! identities over the built figures and insists on a residual of exactly
//! zero; [`render`] turns figures into SVG or TikZ.
//!
//! ```
//! use nested_squares::{build_choupei, verify_recursive, TriangleSides};
//!
//! let sides = TriangleSides::from_integers(3, 4).unwrap();
//! let check = verify_recursive(&sides, &"10".parse().unwrap()).unwrap();
//! assert!(check.pass);
//! let fig = build_choupei(&sides, &"1".parse().unwrap()).unwrap();
//! assert_eq!(fig.layers[0].c_n_sq, 25.into());
//! ```

pub mod constructions;
pub mod exact;
pub mod geometry;
pub mod render;
pub mod verify;

pub use constructions::{
    bhaskara_closed_form, build_bhaskara, build_choupei, build_proof2, closed_form_lengths,
    d_closed_form, ConstructionError, Family, FootStage, Layer, NestedFigure, OrientationString,
    Proof2Figure, ScalarKind, TriangleSides,
};
pub use exact::{ratio, ExactError, ExactValue, QuadExt, Rational, Scalar, Sign};
pub use geometry::{GeometryError, Point, Polygon};
pub use render::{to_svg, to_tikz, Figure, RenderFormat, RenderOptions};
pub use verify::{
    geometric_sum_from_pythagoras, run_suite, verify_bhaskara, verify_closed_form,
    verify_d_telescoping, verify_fractal1_tail, verify_geometric_sum, verify_proof1,
    verify_proof2, verify_recursive, FigureDescriptor, IdentityCheck, SuiteParams,
    VerificationReport, VerifyError,
};
