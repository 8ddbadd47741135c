//! Sparse interpolation over the zero set: given values `φ(a)` at the torus
//! roots, produce `g = h + (c/MV) J` with `h` supported on the interior
//! lattice points of the Minkowski sum, so that `g(a) = φ(a)` at every root.
//!
//! `c` is the root sum `Σ φ(a)/J(a)`; subtracting `c/MV` from `φ/J` leaves a
//! function with zero root sum, which is exactly the condition under which an
//! interior-supported interpolant exists. The numeric path solves the
//! (usually underdetermined) linear system in least squares and returns the
//! minimum-norm `h`; the exact path, available when the roots are rational,
//! solves it with free unknowns set to zero.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;

use super::{pairwise_sum, validate_roots, OracleError, RootSet, INTERPOLATION_TOL};
use crate::coeff::Coeff;
use crate::engine::linsolve::{solve_affine, SolveOutcome};
use crate::geometry::ExpVec;
use crate::laurent::{complex_pow, Laurent, LaurentError, SparseSystem};
use crate::rational::{rational_to_f64, Rational};

/// The interpolant `g = h + (c/MV) J` together with its parts.
#[derive(Debug, Clone)]
pub struct InterpolationResult<C: Coeff> {
    pub g: Laurent<C>,
    pub h: Laurent<C>,
    pub c: C,
    pub mv: i64,
    /// Largest deviation |g(a) - φ(a)| observed (exact path: always 0).
    pub residual: f64,
}

/// Numeric interpolation at floating-point roots.
pub fn sparse_interpolate(
    sys: &SparseSystem<Rational>,
    roots: &RootSet,
    phi: &[Complex64],
) -> Result<InterpolationResult<Complex64>, OracleError> {
    assert_eq!(phi.len(), roots.len(), "φ must assign a value to every root");
    let jac = sys.toric_jacobian();
    let jac_values = validate_roots(sys, &jac, roots)?;
    let mv = sys.mixed_volume();

    let mut ratio: Vec<Complex64> = phi
        .iter()
        .zip(&jac_values)
        .map(|(p, j)| p / j)
        .collect();
    let c = pairwise_sum(&mut ratio);
    let c_over_mv = c / mv as f64;

    let basis: Vec<ExpVec> = sys
        .delta()
        .interior_lattice_points()
        .map_err(LaurentError::from)?;
    let nroots = roots.len();
    let targets: Vec<Complex64> = (0..nroots)
        .map(|i| phi[i] - c_over_mv * jac_values[i])
        .collect();

    let h = if basis.is_empty() {
        Laurent::zero(sys.dim())
    } else {
        let mat = DMatrix::<Complex64>::from_fn(nroots, basis.len(), |i, j| {
            basis[j]
                .iter()
                .zip(&roots.roots[i])
                .map(|(&e, &z)| complex_pow(z, e))
                .product()
        });
        let rhs = DMatrix::<Complex64>::from_fn(nroots, 1, |i, _| targets[i]);
        let svd = mat.svd(true, true);
        let sol = svd.solve(&rhs, 1e-12).map_err(|e| {
            OracleError::NonGenericInput(format!("least-squares solve failed: {e}"))
        })?;
        let scale = phi.iter().map(|v| v.norm()).fold(1.0f64, f64::max);
        let mut h = Laurent::zero(sys.dim());
        for (j, e) in basis.iter().enumerate() {
            let coeff = sol[(j, 0)];
            if coeff.norm() > 1e-13 * scale {
                h.add_term(e.clone(), coeff);
            }
        }
        h
    };

    // g = h + (c/MV) J over complex coefficients.
    let mut g = h.clone();
    for (e, v) in jac.terms() {
        g.add_term(e.clone(), c_over_mv * Complex64::new(rational_to_f64(v), 0.0));
    }

    let mut residual = 0.0f64;
    for (a, want) in roots.roots.iter().zip(phi) {
        let got = g.eval_complex(a)?;
        residual = residual.max((got - want).norm());
    }
    let scale = phi.iter().map(|v| v.norm()).fold(1.0f64, f64::max);
    if residual > INTERPOLATION_TOL * scale {
        return Err(OracleError::GenericityFailure(residual));
    }
    Ok(InterpolationResult { g, h, c, mv, residual })
}

/// Exact interpolation when every root is rational. Free unknowns of the
/// interior-basis system are set to zero.
pub fn sparse_interpolate_exact(
    sys: &SparseSystem<Rational>,
    roots: &[Vec<Rational>],
    phi: &[Rational],
) -> Result<InterpolationResult<Rational>, OracleError> {
    assert_eq!(phi.len(), roots.len(), "φ must assign a value to every root");
    let mv = sys.mixed_volume();
    if roots.len() != mv as usize {
        return Err(OracleError::IncompleteRootSet { found: roots.len(), expected: mv as usize });
    }
    let jac = sys.toric_jacobian();
    let mut jac_values = Vec::with_capacity(roots.len());
    for (i, a) in roots.iter().enumerate() {
        let v = jac.eval_rational(a)?;
        if v.is_zero() {
            return Err(OracleError::MultipleRootSuspected { index: i, jac: 0.0 });
        }
        jac_values.push(v);
    }

    let mut c = Rational::zero();
    for (p, j) in phi.iter().zip(&jac_values) {
        c += p / j;
    }
    let c_over_mv = &c / Rational::from_integer(mv.into());

    let basis: Vec<ExpVec> = sys
        .delta()
        .interior_lattice_points()
        .map_err(LaurentError::from)?;
    let targets: Vec<Rational> = phi
        .iter()
        .zip(&jac_values)
        .map(|(p, j)| p - &c_over_mv * j)
        .collect();

    let h = if basis.is_empty() {
        Laurent::zero(sys.dim())
    } else {
        let mat: Vec<Vec<Rational>> = roots
            .iter()
            .map(|a| {
                basis
                    .iter()
                    .map(|e| {
                        let m = Laurent::monomial(sys.dim(), e.clone(), Rational::from_integer(1.into()));
                        m.eval_rational(a).expect("torus point")
                    })
                    .collect()
            })
            .collect();
        let defer = vec![false; basis.len()];
        let sol = solve_affine(mat, targets.clone(), &defer)
            .map_err(|SolveOutcome::Inconsistent| OracleError::GenericityFailure(f64::INFINITY))?;
        let values = sol.particular();
        let mut h = Laurent::zero(sys.dim());
        for (e, v) in basis.iter().zip(values) {
            h.add_term(e.clone(), v);
        }
        h
    };

    let mut g = h.clone();
    for (e, v) in jac.terms() {
        g.add_term(e.clone(), &c_over_mv * v);
    }
    // Exact verification.
    for (a, want) in roots.iter().zip(phi) {
        let got = g.eval_rational(a)?;
        if &got != want {
            return Err(OracleError::GenericityFailure(f64::INFINITY));
        }
    }
    Ok(InterpolationResult { g, h, c, mv, residual: 0.0 })
}
