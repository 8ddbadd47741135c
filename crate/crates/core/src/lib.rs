//! Exact computation of global residues for sparse Laurent polynomial systems.
//!
//! Given Laurent polynomials `f_1, ..., f_n` in `n` variables whose Newton
//! polytopes are full-dimensional, the global residue of a Laurent polynomial
//! `g` is the sum of `g(a) / J(a)` over the common torus zeroes `a` of the
//! system, where `J` is the toric Jacobian `det(t_j ∂f_i/∂t_j)`. It is a
//! rational function of the coefficients of the `f_i`, and this crate computes
//! it exactly by assembling and solving one linear system over the coefficient
//! field per target monomial.
//!
//! The pieces:
//!
//! * [`mpoly`] / [`ratfunc`] — sparse multivariate polynomials over exact
//!   rationals in named parameters, and their fraction field.
//! * [`geometry`] — lattice polytopes: hulls, facets, Minkowski sums,
//!   interior lattice points, normalized and mixed volumes.
//! * [`laurent`] — sparse Laurent polynomials, Newton polytopes, the toric
//!   Jacobian, and square systems with cached polytope data.
//! * [`engine`] — the residue algorithm: critical-degree linear system
//!   assembly and fraction-free elimination.
//! * [`delta0`] — construction of the auxiliary polytope the algorithm
//!   needs, via exact rational linear programming over a zonotope support
//!   function.
//! * [`oracle`] — floating-point verification: root finding for `n ≤ 2`,
//!   root-sum residues, Euler–Jacobi vanishing checks, and sparse
//!   interpolation over the zero set.

pub mod coeff;
pub mod delta0;
pub mod engine;
pub mod geometry;
pub mod json;
pub mod laurent;
pub mod mpoly;
pub mod oracle;
pub mod rational;
pub mod ratfunc;

pub use coeff::Coeff;
pub use geometry::{ExpVec, Facet, LatticePolytope};
pub use laurent::{Laurent, SparseSystem};
pub use mpoly::MPoly;
pub use rational::Rational;
pub use ratfunc::RatFunc;
