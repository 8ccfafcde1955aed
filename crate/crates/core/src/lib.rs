//! Exact computer-algebra toolkit for classifying rational-angle
//! configurations in plane lattices.
//!
//! The crate is organised around a pipeline of exact computations:
//!
//! * [`exactnum`] — arbitrary-precision rationals and cyclotomic field
//!   arithmetic (the substrate for everything else);
//! * [`polyring`] — sparse multivariate polynomials over ℚ in
//!   `(a, b, c, d, x, y, z)`, the master equations and their symmetries;
//! * [`subsum`] — the vanishing-subsum engine: Smith normal forms of
//!   difference modules, subset sweeps, Conway–Jones order bounds;
//! * [`triples`] — symmetry-reduced enumeration of root-of-unity triples;
//! * [`descent`] — Galois-conjugate systems and their trace descent to ℚ;
//! * [`atlas`] — the classification database and verifier: named spaces,
//!   parametrised families, elliptic-curve certificates;
//! * [`geomviz`] — polygon constructions and deterministic SVG rendering.

pub mod atlas;
pub mod dd;
pub mod descent;
pub mod exactnum;
pub mod geomviz;
pub mod polyring;
pub mod report;
pub mod subsum;
pub mod triples;

pub use exactnum::{Cyclotomic, NumError, Rational};
pub use polyring::{MultiPoly, Solution, SymmetryElement};
pub use report::{CheckResult, CheckStatus, RunReport};
