//! Construction of the auxiliary polytope Δ₀ the residue algorithm needs:
//! full-dimensional, with the origin strictly interior, such that Δ₀ + Δ
//! contains every target exponent strictly.
//!
//! The size of the resulting linear system is governed by the interior
//! lattice points of Δ₀ + Δ, so Δ₀ should be narrow. Minimizing the volume of
//! Δ + [0, v] over segment directions `v` reaching a target reduces to
//! minimizing the zonotope support function `h_Z` of the volume-scaled facet
//! normals over the translated polytope — an exact linear program. The LP
//! optimizer is rounded to a lattice direction and a narrow simplex is built
//! around it. Rounding is heuristic; a strict validator plus bump/dilate
//! retries and a dilation fallback guarantee a correct result regardless.

mod simplex;

pub use simplex::{solve_standard, LpError, StandardLp};

use num_traits::Zero;
use thiserror::Error;

use crate::geometry::{unit_cross_polytope, ExpVec, GeomError, LatticePolytope, ZonotopeSupport};
use crate::rational::{rat_int, round_to_i64, Rational};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Delta0Error {
    #[error("cannot build a polytope around the zero direction")]
    ZeroDirection,
    #[error("auxiliary polytope search exhausted its retry budget ({0})")]
    SearchFailed(usize),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Default retry budget for bump and dilation rounds.
pub const DEFAULT_RETRIES: usize = 8;

/// `h_Z(v)`: the support function of the zonotope of volume-scaled facet
/// normals of `delta`. Half of it is the volume added to `delta` when
/// sweeping along `[0, v]`.
pub fn zonotope_support(delta: &LatticePolytope, v: &[Rational]) -> Result<Rational, GeomError> {
    Ok(ZonotopeSupport::new(delta)?.eval(v))
}

#[derive(Debug, Clone)]
pub struct SupportOpt {
    /// Exact minimizer inside `delta - u`.
    pub minimizer: Vec<Rational>,
    /// Minimal support-function value.
    pub value: Rational,
}

/// Minimizes `h_Z` over `delta - u` by exact simplex. The segment
/// `[0, -minimizer]` then carries `u` into `delta + segment`.
pub fn min_support(delta: &LatticePolytope, u: &ExpVec) -> Result<SupportOpt, GeomError> {
    let n = delta.ambient_dim();
    let gens = delta.zonotope_generators()?;
    let facets = delta.facets()?;
    let nf = gens.len();

    // Variables: x+ (n), x- (n), s (nf), slack (3 nf). Constraints:
    //   <V a, x> - s <= 0,  -<V a, x> - s <= 0,  <a, x> <= b - <a, u>.
    let nvars = 2 * n + nf;
    let nslack = 3 * nf;
    let total = nvars + nslack;
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(3 * nf);
    let mut rhs: Vec<Rational> = Vec::with_capacity(3 * nf);
    let mut add_le = |coeffs: Vec<(usize, Rational)>, bound: Rational, slack: usize| {
        let mut row = vec![Rational::zero(); total];
        for (j, c) in coeffs {
            row[j] += c;
        }
        row[nvars + slack] = Rational::from_integer(1.into());
        rows.push(row);
        rhs.push(bound);
    };

    for (k, ((normal, vol), facet)) in gens.iter().zip(facets).enumerate() {
        debug_assert_eq!(&facet.normal, normal);
        let scaled: Vec<Rational> = normal.iter().map(|&a| vol * rat_int(a)).collect();
        let mut pos: Vec<(usize, Rational)> = Vec::new();
        let mut neg: Vec<(usize, Rational)> = Vec::new();
        for (i, c) in scaled.iter().enumerate() {
            pos.push((i, c.clone()));
            pos.push((n + i, -c.clone()));
            neg.push((i, -c.clone()));
            neg.push((n + i, c.clone()));
        }
        pos.push((2 * n + k, -rat_int(1)));
        neg.push((2 * n + k, -rat_int(1)));
        add_le(pos, Rational::zero(), 3 * k);
        add_le(neg, Rational::zero(), 3 * k + 1);

        let shift: i64 = normal.iter().zip(u).map(|(a, b)| a * b).sum();
        let mut mem: Vec<(usize, Rational)> = Vec::new();
        for (i, &a) in normal.iter().enumerate() {
            mem.push((i, rat_int(a)));
            mem.push((n + i, rat_int(-a)));
        }
        add_le(mem, rat_int(facet.offset - shift), 3 * k + 2);
    }

    let mut objective = vec![Rational::zero(); total];
    for k in 0..nf {
        objective[2 * n + k] = Rational::from_integer(1.into());
    }

    let lp = StandardLp { objective, rows, rhs };
    let (value, x) = solve_standard(&lp).expect("support LP is feasible and bounded");
    let minimizer: Vec<Rational> = (0..n).map(|i| &x[i] - &x[n + i]).collect();
    Ok(SupportOpt { minimizer, value })
}

/// A narrow full-dimensional polytope with `0` strictly interior and `m` a
/// vertex: the simplex `conv{-e_1, ..., -e_n, m}` when every coordinate of
/// `m` is positive, otherwise the unit cross-polytope with `m` adjoined.
pub fn build_delta0(m: &ExpVec) -> Result<LatticePolytope, Delta0Error> {
    if m.iter().all(|&c| c == 0) {
        return Err(Delta0Error::ZeroDirection);
    }
    Ok(build_around(std::slice::from_ref(m)))
}

/// Multi-direction variant of [`build_delta0`]; `dirs` must be nonempty with
/// nonzero members.
fn build_around(dirs: &[ExpVec]) -> LatticePolytope {
    let n = dirs[0].len();
    let mut pts: Vec<ExpVec> = Vec::new();
    if dirs.iter().all(|m| m.iter().all(|&c| c > 0)) {
        for i in 0..n {
            let mut e = vec![0i64; n];
            e[i] = -1;
            pts.push(e);
        }
    } else {
        for i in 0..n {
            let mut e = vec![0i64; n];
            e[i] = 1;
            pts.push(e.clone());
            e[i] = -1;
            pts.push(e);
        }
    }
    pts.extend(dirs.iter().cloned());
    LatticePolytope::convex_hull(&pts).expect("nonempty point set")
}

/// How `choose_delta0` arrived at its answer; kept for run reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Strategy {
    Rounded,
    Bumped(usize),
    Dilated(usize),
    Fallback { dilation: i64 },
}

impl Strategy {
    pub fn describe(&self) -> String {
        match self {
            Strategy::Rounded => "rounded".into(),
            Strategy::Bumped(k) => format!("bumped x{k}"),
            Strategy::Dilated(k) => format!("dilated x{k}"),
            Strategy::Fallback { dilation } => format!("fallback dilation {dilation}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Delta0Choice {
    pub polytope: LatticePolytope,
    /// Minkowski sum `polytope + delta`, already validated.
    pub tilde: LatticePolytope,
    /// Per-target LP results, in target order.
    pub lp: Vec<SupportOpt>,
    pub strategy: Strategy,
}

fn origin_interior(p: &LatticePolytope) -> bool {
    let z = vec![0i64; p.ambient_dim()];
    p.is_full_dim() && p.contains(&z, true).unwrap_or(false)
}

/// The Step-1 validator: Δ₀ full-dimensional, origin strictly interior, and
/// every target strictly interior to Δ₀ + Δ. Returns the validated sum.
pub fn validate_delta0(
    delta0: &LatticePolytope,
    delta: &LatticePolytope,
    targets: &[ExpVec],
) -> Result<Option<LatticePolytope>, GeomError> {
    if !origin_interior(delta0) {
        return Ok(None);
    }
    let tilde = delta0.minkowski(delta)?;
    for t in targets {
        if !tilde.contains(t, true)? {
            return Ok(None);
        }
    }
    Ok(Some(tilde))
}

/// Chooses a validated Δ₀ for the given targets: LP-guided rounding, then
/// minimal bumps along the rounded directions, then repeated dilation, then a
/// guaranteed fallback built from a dilate of Δ itself.
pub fn choose_delta0(
    delta: &LatticePolytope,
    targets: &[ExpVec],
    retries: usize,
) -> Result<Delta0Choice, Delta0Error> {
    assert!(!targets.is_empty(), "need at least one target exponent");
    let n = delta.ambient_dim();

    let mut lp_results = Vec::with_capacity(targets.len());
    let mut dirs: Vec<ExpVec> = Vec::new();
    for u in targets {
        let opt = min_support(delta, u)?;
        let m: ExpVec = opt.minimizer.iter().map(|c| -round_to_i64(c)).collect();
        lp_results.push(opt);
        if m.iter().any(|&c| c != 0) && !dirs.contains(&m) {
            dirs.push(m);
        }
    }

    // Rounded candidate, then minimal bumps along each direction.
    let mut current = dirs.clone();
    for bump in 0..=retries {
        let candidate = if current.is_empty() {
            unit_cross_polytope(n)
        } else {
            build_around(&current)
        };
        if let Some(tilde) = validate_delta0(&candidate, delta, targets)? {
            let strategy = if bump == 0 { Strategy::Rounded } else { Strategy::Bumped(bump) };
            return Ok(Delta0Choice { polytope: candidate, tilde, lp: lp_results, strategy });
        }
        if current.is_empty() {
            break; // a cross-polytope that fails cannot be bumped
        }
        for m in current.iter_mut() {
            for c in m.iter_mut() {
                *c += c.signum();
            }
        }
    }

    // Dilation rounds on the last candidate shape.
    let base = if current.is_empty() {
        unit_cross_polytope(n)
    } else {
        build_around(&current)
    };
    let mut candidate = base;
    for round in 1..=retries {
        candidate = candidate.dilate(2);
        if let Some(tilde) = validate_delta0(&candidate, delta, targets)? {
            return Ok(Delta0Choice {
                polytope: candidate,
                tilde,
                lp: lp_results,
                strategy: Strategy::Dilated(round),
            });
        }
    }

    // Fallback: a dilate of Δ recentered on one of its interior lattice
    // points. Grows around the origin with k, so it eventually swallows
    // every target.
    let coord_bound = targets
        .iter()
        .flat_map(|t| t.iter())
        .chain(delta.vertices().iter().flatten())
        .map(|&c| c.abs())
        .max()
        .unwrap_or(1);
    let k_max = 4 * (coord_bound + n as i64 + 2);
    let centroid: Vec<Rational> = {
        let verts = delta.vertices();
        let count = rat_int(verts.len() as i64);
        (0..n)
            .map(|i| {
                verts
                    .iter()
                    .map(|v| rat_int(v[i]))
                    .fold(Rational::zero(), |acc, c| acc + c)
                    / count.clone()
            })
            .collect()
    };
    for k in 1..=k_max {
        let dilated = delta.dilate(k);
        let interior = dilated.interior_lattice_points()?;
        if interior.is_empty() {
            continue;
        }
        let target_center: Vec<Rational> = centroid.iter().map(|c| c * rat_int(k)).collect();
        let w = interior
            .iter()
            .min_by_key(|p| {
                p.iter()
                    .zip(&target_center)
                    .map(|(&a, b)| {
                        let d = rat_int(a) - b.clone();
                        d.clone() * d
                    })
                    .fold(Rational::zero(), |acc, d| acc + d)
            })
            .expect("nonempty interior")
            .clone();
        let shifted = dilated.translate(&w.iter().map(|&c| -c).collect());
        if let Some(tilde) = validate_delta0(&shifted, delta, targets)? {
            return Ok(Delta0Choice {
                polytope: shifted,
                tilde,
                lp: lp_results,
                strategy: Strategy::Fallback { dilation: k },
            });
        }
    }
    Err(Delta0Error::SearchFailed(retries))
}
