//! The residue algorithm: write a target Laurent polynomial `g` as
//!
//! ```text
//! g = h_0 + Σ_i h_i f_i + c J
//! ```
//!
//! with each `h_i` supported on the interior lattice points of the Minkowski
//! sum that omits the matching polytope, solve the resulting linear system
//! for `c` exactly, and output the residue `c · n!V(Δ_1, ..., Δ_n)`.
//!
//! `c` is unique whenever the system is generic; the solver tracks every
//! unknown as an affine form over the free columns, so uniqueness is checked
//! rather than assumed. Each successful run also returns the `h_i`
//! certificate, and the identity above is re-verified exactly before the
//! result is released.

pub mod linsolve;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::coeff::Coeff;
use crate::delta0::{choose_delta0, validate_delta0, Delta0Error, Strategy, DEFAULT_RETRIES};
use crate::geometry::{ExpVec, GeomError, LatticePolytope};
use crate::laurent::{boundary_restrict, Laurent, LaurentError, SparseSystem};
use linsolve::{solve_affine, SolveOutcome};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EngineError {
    #[error("invalid auxiliary polytope: {0}")]
    Delta0Invalid(String),
    #[error("the linear system is inconsistent; the coefficient choice is non-generic")]
    NonGenericSystem,
    #[error("the residue coordinate is not uniquely determined; degenerate system")]
    DegenerateSystem,
    #[error("certificate identity failed to verify; internal inconsistency")]
    CertificateMismatch,
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Delta0(#[from] Delta0Error),
}

/// The assembled critical-degree linear system.
///
/// Rows are indexed by the interior lattice points of `Δ₀ + Δ`; columns come
/// in blocks — interior points of each omit-one sum, then a final column
/// holding the (optionally boundary-restricted) toric Jacobian.
#[derive(Debug, Clone)]
pub struct ResidueLinearSystem<C: Coeff> {
    pub rows: Vec<ExpVec>,
    /// Column exponent blocks: `blocks[0]` for `h_0`, ..., `blocks[n]` for
    /// `h_n`. The Jacobian column is appended after these.
    pub blocks: Vec<Vec<ExpVec>>,
    pub mat: Vec<Vec<C>>,
    pub rhs: Vec<C>,
    pub jacobian_used: Laurent<C>,
    pub delta0: LatticePolytope,
    pub tilde: LatticePolytope,
    pub restricted: bool,
}

impl<C: Coeff> ResidueLinearSystem<C> {
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum::<usize>() + 1
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.blocks.iter().map(Vec::len).collect();
        sizes.push(1);
        sizes
    }

    pub fn c_column(&self) -> usize {
        self.ncols() - 1
    }
}

/// Builds the linear system for `g` over the given Δ₀.
///
/// Allows a zero `g` (zero right-hand side); otherwise every exponent of `g`
/// must be strictly interior to `Δ₀ + Δ`.
pub fn assemble_system<C: Coeff>(
    sys: &SparseSystem<C>,
    g: &Laurent<C>,
    delta0: &LatticePolytope,
    restrict_jacobian: bool,
) -> Result<ResidueLinearSystem<C>, EngineError> {
    let n = sys.dim();
    let origin = vec![0i64; n];
    if !delta0.is_full_dim() || !delta0.contains(&origin, true)? {
        return Err(EngineError::Delta0Invalid(
            "Δ₀ must be full-dimensional with 0 strictly interior".into(),
        ));
    }
    let tilde = delta0.minkowski(sys.delta())?;
    for (e, _) in g.terms() {
        if !tilde.contains(e, true)? {
            return Err(EngineError::Delta0Invalid(format!(
                "target exponent {e:?} is not strictly interior to Δ₀ + Δ"
            )));
        }
    }

    let rows = tilde.interior_lattice_points()?;
    let row_index: BTreeMap<&ExpVec, usize> =
        rows.iter().enumerate().map(|(i, e)| (e, i)).collect();

    // Omit-one sums: blocks[0] uses Δ alone, blocks[i >= 1] use Δ₀ plus every
    // Newton polytope except the i-th.
    let mut blocks: Vec<Vec<ExpVec>> = Vec::with_capacity(n + 1);
    blocks.push(sys.delta().interior_lattice_points()?);
    for i in 0..n {
        let mut sum = delta0.clone();
        for (j, p) in sys.newton_polytopes().iter().enumerate() {
            if j != i {
                sum = sum.minkowski(p)?;
            }
        }
        blocks.push(sum.interior_lattice_points()?);
    }

    let jacobian = sys.toric_jacobian();
    let jacobian_used = if restrict_jacobian {
        boundary_restrict(&jacobian, sys.delta())?
    } else {
        jacobian
    };

    let ncols = blocks.iter().map(Vec::len).sum::<usize>() + 1;
    let mut mat: Vec<Vec<C>> = vec![vec![C::zero(); ncols]; rows.len()];
    let mut col = 0usize;
    for beta in &blocks[0] {
        let r = row_index[beta];
        mat[r][col] = C::one();
        col += 1;
    }
    for (i, block) in blocks.iter().enumerate().skip(1) {
        let f = &sys.polys()[i - 1];
        for beta in block {
            for (alpha, coeff) in f.terms() {
                let e: ExpVec = beta.iter().zip(alpha).map(|(a, b)| a + b).collect();
                let r = *row_index
                    .get(&e)
                    .expect("shifted support exponent must be interior to Δ₀ + Δ");
                mat[r][col] = mat[r][col].clone() + coeff.clone();
            }
            col += 1;
        }
    }
    let c_col = col;
    for (alpha, coeff) in jacobian_used.terms() {
        let r = *row_index
            .get(alpha)
            .expect("Jacobian exponent must be interior to Δ₀ + Δ");
        mat[r][c_col] = coeff.clone();
    }

    let mut rhs = vec![C::zero(); rows.len()];
    for (e, coeff) in g.terms() {
        rhs[row_index[e]] = coeff.clone();
    }

    Ok(ResidueLinearSystem {
        rows,
        blocks,
        mat,
        rhs,
        jacobian_used,
        delta0: delta0.clone(),
        tilde,
        restricted: restrict_jacobian,
    })
}

/// Solution of one assembled system: the unique `c` plus the certificate
/// polynomials `h_0, ..., h_n`.
#[derive(Debug, Clone)]
pub struct CSolution<C: Coeff> {
    pub c: C,
    pub h: Vec<Laurent<C>>,
}

/// Solves the assembled system for the Jacobian coordinate. The system must
/// be consistent (else the coefficients are non-generic) and `c` must take
/// the same value in every solution (else the system is degenerate).
pub fn solve_for_c<C: Coeff>(lin: &ResidueLinearSystem<C>) -> Result<CSolution<C>, EngineError> {
    let ncols = lin.ncols();
    let mut defer = vec![false; ncols];
    defer[lin.c_column()] = true;
    let sol = solve_affine(lin.mat.clone(), lin.rhs.clone(), &defer)
        .map_err(|SolveOutcome::Inconsistent| EngineError::NonGenericSystem)?;
    let c_form = &sol.forms[lin.c_column()];
    if !c_form.is_unique() {
        return Err(EngineError::DegenerateSystem);
    }
    let particular = sol.particular();
    let nvars = lin.delta0.ambient_dim();
    let mut h = Vec::with_capacity(lin.blocks.len());
    let mut col = 0usize;
    for block in &lin.blocks {
        let mut poly = Laurent::zero(nvars);
        for beta in block {
            poly.add_term(beta.clone(), particular[col].clone());
            col += 1;
        }
        h.push(poly);
    }
    Ok(CSolution { c: c_form.cst.clone(), h })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// One Δ₀ and one linear solve for the whole target polynomial.
    WholePolytope,
    /// One Δ₀ and one solve per monomial of the target; results are summed.
    PerMonomial,
}

#[derive(Debug, Clone)]
pub struct ResidueOptions {
    pub delta0: Option<LatticePolytope>,
    pub mode: Mode,
    pub restrict_jacobian: bool,
    pub delta0_retries: usize,
}

impl Default for ResidueOptions {
    fn default() -> Self {
        ResidueOptions {
            delta0: None,
            mode: Mode::PerMonomial,
            restrict_jacobian: true,
            delta0_retries: DEFAULT_RETRIES,
        }
    }
}

/// One linear solve inside a residue computation, kept for auditing.
#[derive(Debug, Clone)]
pub struct SolveRun<C: Coeff> {
    pub target: Laurent<C>,
    pub delta0: LatticePolytope,
    pub delta0_strategy: Option<Strategy>,
    pub c: C,
    pub h: Vec<Laurent<C>>,
    pub restricted: bool,
    pub rows: usize,
    pub cols: usize,
}

/// The global residue of `g` with audit data.
#[derive(Debug, Clone)]
pub struct ResidueResult<C: Coeff> {
    pub residue: C,
    /// `residue / mv`; the aggregated Jacobian coordinate.
    pub c: C,
    pub mv: i64,
    pub runs: Vec<SolveRun<C>>,
}

impl<C: Coeff> ResidueResult<C> {
    /// The Δ₀ of a single-solve run, if there was exactly one.
    pub fn delta0(&self) -> Option<&LatticePolytope> {
        match self.runs.as_slice() {
            [run] => Some(&run.delta0),
            _ => None,
        }
    }
}

/// Computes the global residue of `g` for the system.
///
/// With no explicit Δ₀ the optimizer picks one (per monomial by default,
/// which keeps each linear system minimal; summing per-monomial residues is
/// valid because the residue is linear in `g`). An explicit Δ₀ is validated
/// and used for a single whole-polynomial solve.
pub fn global_residue<C: Coeff>(
    sys: &SparseSystem<C>,
    g: &Laurent<C>,
    opts: &ResidueOptions,
) -> Result<ResidueResult<C>, EngineError> {
    let mv = sys.mixed_volume();
    if g.is_zero() {
        return Ok(ResidueResult { residue: C::zero(), c: C::zero(), mv, runs: Vec::new() });
    }

    let mut runs: Vec<SolveRun<C>> = Vec::new();
    match (&opts.delta0, opts.mode) {
        (Some(d0), _) => {
            let targets: Vec<ExpVec> = g.terms().map(|(e, _)| e.clone()).collect();
            if validate_delta0(d0, sys.delta(), &targets)?.is_none() {
                return Err(EngineError::Delta0Invalid(
                    "supplied Δ₀ fails the validator for the target support".into(),
                ));
            }
            runs.push(run_one(sys, g.clone(), d0.clone(), None, opts.restrict_jacobian)?);
        }
        (None, Mode::WholePolytope) => {
            let targets: Vec<ExpVec> = g.terms().map(|(e, _)| e.clone()).collect();
            let choice = choose_delta0(sys.delta(), &targets, opts.delta0_retries)?;
            runs.push(run_one(
                sys,
                g.clone(),
                choice.polytope,
                Some(choice.strategy),
                opts.restrict_jacobian,
            )?);
        }
        (None, Mode::PerMonomial) => {
            for (e, coeff) in g.terms() {
                let mono = Laurent::monomial(g.nvars(), e.clone(), coeff.clone());
                let choice =
                    choose_delta0(sys.delta(), std::slice::from_ref(e), opts.delta0_retries)?;
                runs.push(run_one(
                    sys,
                    mono,
                    choice.polytope,
                    Some(choice.strategy),
                    opts.restrict_jacobian,
                )?);
            }
        }
    }

    let mut c_total = C::zero();
    for run in &runs {
        c_total = c_total + run.c.clone();
    }
    let residue = c_total.clone() * C::from_i64(mv);
    Ok(ResidueResult { residue, c: c_total, mv, runs })
}

fn run_one<C: Coeff>(
    sys: &SparseSystem<C>,
    target: Laurent<C>,
    delta0: LatticePolytope,
    strategy: Option<Strategy>,
    restrict: bool,
) -> Result<SolveRun<C>, EngineError> {
    let lin = assemble_system(sys, &target, &delta0, restrict)?;
    let csol = solve_for_c(&lin)?;
    verify_certificate(sys, &target, &lin.jacobian_used, &csol)?;
    Ok(SolveRun {
        rows: lin.nrows(),
        cols: lin.ncols(),
        target,
        delta0,
        delta0_strategy: strategy,
        c: csol.c,
        h: csol.h,
        restricted: restrict,
    })
}

/// Re-checks `h_0 + Σ h_i f_i + c J = g` as an exact Laurent identity.
fn verify_certificate<C: Coeff>(
    sys: &SparseSystem<C>,
    g: &Laurent<C>,
    jacobian_used: &Laurent<C>,
    csol: &CSolution<C>,
) -> Result<(), EngineError> {
    let mut total = csol.h[0].clone();
    for (hi, fi) in csol.h[1..].iter().zip(sys.polys()) {
        total = total.add(&hi.mul(fi));
    }
    total = total.add(&jacobian_used.scale(&csol.c));
    if &total == g {
        Ok(())
    } else {
        Err(EngineError::CertificateMismatch)
    }
}

#[cfg(test)]
pub(crate) mod tests;
