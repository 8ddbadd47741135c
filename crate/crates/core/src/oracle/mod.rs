//! Floating-point verification oracle.
//!
//! The engine is exact; this module re-derives residues from the definition —
//! a sum of `g(a)/J(a)` over the torus roots `a` — in complex floating-point
//! arithmetic, checks the Euler-Jacobi vanishing of interior-supported
//! polynomials, and performs sparse interpolation over the zero set. Root
//! sets can be produced by the built-in solvers for one and two variables or
//! supplied externally for higher dimensions.

mod interp;
mod roots;

pub use interp::{sparse_interpolate, sparse_interpolate_exact, InterpolationResult};
pub use roots::{solve_bivariate, solve_univariate};

use num_complex::Complex64;
use thiserror::Error;

use crate::laurent::{Laurent, LaurentError, SparseSystem};
use crate::rational::Rational;

/// Relative residual every accepted root must satisfy.
pub const ROOT_RESIDUAL_TOL: f64 = 1e-10;
/// Relative agreement demanded between engine and oracle residues.
pub const RESIDUE_AGREEMENT_TOL: f64 = 1e-8;
/// Residual allowed when interpolating values over the zero set.
pub const INTERPOLATION_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("root set has {found} roots but the mixed volume is {expected}")]
    IncompleteRootSet { found: usize, expected: usize },
    #[error("|J| = {jac:.3e} at root #{index}; multiple root suspected")]
    MultipleRootSuspected { index: usize, jac: f64 },
    #[error("non-generic input: {0}")]
    NonGenericInput(String),
    #[error("interpolation residual {0:.3e} exceeds tolerance; genericity failure")]
    GenericityFailure(f64),
    #[error("zero polynomial passed to a root solver")]
    ZeroPolynomial,
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootSource {
    UserSupplied,
    UnivariateSolver,
    BivariateSolver,
}

impl RootSource {
    pub fn as_str(&self) -> &'static str {
        match self {
            RootSource::UserSupplied => "user-supplied",
            RootSource::UnivariateSolver => "univariate-solver",
            RootSource::BivariateSolver => "bivariate-solver",
        }
    }
}

/// A finite set of torus points tied to the system that produced it.
#[derive(Debug, Clone)]
pub struct RootSet {
    pub roots: Vec<Vec<Complex64>>,
    pub source: RootSource,
    /// Stable hash of the originating system, for cross-checking externally
    /// stored root files.
    pub fingerprint: u64,
    /// Largest relative residual observed when the set was built.
    pub max_residual: f64,
}

impl RootSet {
    pub fn user_supplied(roots: Vec<Vec<Complex64>>, fingerprint: u64) -> Self {
        RootSet { roots, source: RootSource::UserSupplied, fingerprint, max_residual: f64::NAN }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

/// FNV-1a over the display form; stable across runs and platforms.
pub(crate) fn fingerprint_polys(polys: &[Laurent<Rational>]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for p in polys {
        for b in p.to_string().bytes().chain([b';']) {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    h
}

pub fn fingerprint_system(sys: &SparseSystem<Rational>) -> u64 {
    fingerprint_polys(sys.polys())
}

/// Deterministic pairwise summation; per-root terms are accumulated in root
/// order regardless of future parallel evaluation.
fn pairwise_sum(values: &mut [Complex64]) -> Complex64 {
    match values.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => values[0],
        n => {
            let (a, b) = values.split_at_mut(n / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}

/// Validates a root set against the system: the count must match the mixed
/// volume and the toric Jacobian must be comfortably nonzero at every root.
pub(crate) fn validate_roots(
    sys: &SparseSystem<Rational>,
    jac: &Laurent<Rational>,
    roots: &RootSet,
) -> Result<Vec<Complex64>, OracleError> {
    let expected = sys.mixed_volume() as usize;
    if roots.len() != expected {
        return Err(OracleError::IncompleteRootSet { found: roots.len(), expected });
    }
    let mut jac_values = Vec::with_capacity(roots.len());
    for (i, a) in roots.roots.iter().enumerate() {
        let jv = jac.eval_complex(a)?;
        let scale = roots::relative_residual(jac, a);
        // `relative_residual` is |J(a)| / Σ|terms|; a tiny ratio flags a
        // near-multiple root.
        if scale < 1e-9 {
            return Err(OracleError::MultipleRootSuspected { index: i, jac: jv.norm() });
        }
        jac_values.push(jv);
    }
    Ok(jac_values)
}

/// `Σ_a g(a) / J(a)` over a complete set of simple torus roots.
pub fn residue_root_sum(
    sys: &SparseSystem<Rational>,
    g: &Laurent<Rational>,
    roots: &RootSet,
) -> Result<Complex64, OracleError> {
    let jac = sys.toric_jacobian();
    let jac_values = validate_roots(sys, &jac, roots)?;
    let mut terms: Vec<Complex64> = Vec::with_capacity(roots.len());
    for (a, jv) in roots.roots.iter().zip(&jac_values) {
        terms.push(g.eval_complex(a)? / jv);
    }
    Ok(pairwise_sum(&mut terms))
}

/// Magnitude of the root sum of an interior-supported polynomial; near zero
/// for generic systems. The support condition is validated exactly.
pub fn euler_jacobi_check(
    sys: &SparseSystem<Rational>,
    roots: &RootSet,
    h: &Laurent<Rational>,
) -> Result<f64, OracleError> {
    for (e, _) in h.terms() {
        if !sys.delta().contains(e, true).map_err(LaurentError::from)? {
            return Err(OracleError::Laurent(LaurentError::Support(format!(
                "exponent {e:?} is not strictly interior to the Minkowski sum"
            ))));
        }
    }
    if h.is_zero() {
        return Ok(0.0);
    }
    Ok(residue_root_sum(sys, h, roots)?.norm())
}
