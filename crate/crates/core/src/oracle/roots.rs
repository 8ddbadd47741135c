//! Numeric root finding for the verification oracle: univariate roots via
//! companion-matrix eigenvalues, complex-coefficient roots via Durand-Kerner
//! for back-substitution, and bivariate torus roots via exact Sylvester
//! resultants followed by numeric solving.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;

use super::{OracleError, RootSet, RootSource, ROOT_RESIDUAL_TOL};
use crate::geometry::mixed_volume_lenient;
use crate::laurent::{complex_pow, Laurent};
use crate::mpoly::MPoly;
use crate::rational::{rational_to_f64, Rational};

/// Dense complex coefficients `c_0..c_d` with `c_d != 0` after trimming.
fn trim_complex(mut c: Vec<Complex64>, eps: f64) -> Vec<Complex64> {
    let scale = c.iter().map(|z| z.norm()).fold(0.0f64, f64::max).max(1.0);
    while c.len() > 1 && c.last().unwrap().norm() <= eps * scale {
        c.pop();
    }
    c
}

fn poly_eval(c: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::zero();
    for k in (0..c.len()).rev() {
        acc = acc * z + c[k];
    }
    acc
}

fn poly_derivative(c: &[Complex64]) -> Vec<Complex64> {
    (1..c.len()).map(|k| c[k] * k as f64).collect()
}

fn newton_polish(c: &[Complex64], dc: &[Complex64], mut z: Complex64) -> Complex64 {
    for _ in 0..20 {
        let f = poly_eval(c, z);
        let d = poly_eval(dc, z);
        if d.norm() == 0.0 {
            break;
        }
        let step = f / d;
        z -= step;
        if step.norm() < 1e-15 * z.norm().max(1.0) {
            break;
        }
    }
    z
}

/// All roots of a monic-izable complex polynomial by Durand-Kerner with
/// Newton polishing. Deterministic start configuration.
pub(crate) fn complex_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let c = trim_complex(coeffs.to_vec(), 1e-14);
    let d = c.len() - 1;
    if d == 0 {
        return Vec::new();
    }
    let lead = c[d];
    let monic: Vec<Complex64> = c.iter().map(|v| v / lead).collect();
    let radius = 1.0
        + monic[..d]
            .iter()
            .map(|v| v.norm())
            .fold(0.0f64, f64::max);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * (k as f64 + 0.37) / d as f64;
            Complex64::from_polar(radius, angle)
        })
        .collect();
    for _ in 0..300 {
        let mut max_step = 0.0f64;
        for k in 0..d {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if j != k {
                    denom *= z[k] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                continue;
            }
            let step = poly_eval(&monic, z[k]) / denom;
            z[k] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-14 * radius {
            break;
        }
    }
    let dc = poly_derivative(&monic);
    z.into_iter().map(|r| newton_polish(&monic, &dc, r)).collect()
}

/// Companion-matrix eigenvalues of a real-coefficient polynomial, polished
/// against the exact coefficients.
fn real_poly_roots(coeffs: &[Rational]) -> Vec<Complex64> {
    let cf: Vec<Complex64> = coeffs
        .iter()
        .map(|c| Complex64::new(rational_to_f64(c), 0.0))
        .collect();
    let cf = trim_complex(cf, 0.0);
    let d = cf.len() - 1;
    if d == 0 {
        return Vec::new();
    }
    let lead = cf[d];
    let mut companion = DMatrix::<f64>::zeros(d, d);
    for i in 1..d {
        companion[(i, i - 1)] = 1.0;
    }
    for i in 0..d {
        companion[(i, d - 1)] = -(cf[i] / lead).re;
    }
    let eigen = companion.complex_eigenvalues();
    let dc = poly_derivative(&cf);
    eigen
        .iter()
        .map(|&z| newton_polish(&cf, &dc, z))
        .collect()
}

/// Relative residual of `f` at a point, scaled by the coefficient magnitude
/// at that point.
pub(crate) fn relative_residual(f: &Laurent<Rational>, point: &[Complex64]) -> f64 {
    let value = match f.eval_complex(point) {
        Ok(v) => v.norm(),
        Err(_) => return f64::INFINITY,
    };
    let mut scale = 0.0f64;
    for (e, c) in f.terms() {
        let mut t = rational_to_f64(c).abs();
        for (k, &ek) in e.iter().enumerate() {
            t *= complex_pow(point[k], ek).norm();
        }
        scale += t;
    }
    value / scale.max(1e-300)
}

/// Nonzero roots of a univariate Laurent polynomial, via companion-matrix
/// eigenvalues after the monomial factor is cleared. The root count is the
/// lattice length of the Newton polytope.
pub fn solve_univariate(f: &Laurent<Rational>) -> Result<RootSet, OracleError> {
    if f.is_zero() {
        return Err(OracleError::ZeroPolynomial);
    }
    assert_eq!(f.nvars(), 1, "univariate solver needs one variable");
    let min_exp = f.terms().map(|(e, _)| e[0]).min().unwrap();
    let max_exp = f.terms().map(|(e, _)| e[0]).max().unwrap();
    let d = (max_exp - min_exp) as usize;
    let mut coeffs = vec![Rational::zero(); d + 1];
    for (e, c) in f.terms() {
        coeffs[(e[0] - min_exp) as usize] = c.clone();
    }
    let roots: Vec<Vec<Complex64>> = real_poly_roots(&coeffs)
        .into_iter()
        .filter(|z| z.norm() > 0.0)
        .map(|z| vec![z])
        .collect();
    let max_residual = roots
        .iter()
        .map(|r| relative_residual(f, r))
        .fold(0.0f64, f64::max);
    Ok(RootSet {
        roots,
        source: RootSource::UnivariateSolver,
        fingerprint: super::fingerprint_polys(std::slice::from_ref(f)),
        max_residual,
    })
}

/// Laurent polynomial in two variables as a dense matrix of coefficients
/// after clearing negative exponents: entry `(i, j)` is the coefficient of
/// `x^i y^j` as an exact univariate polynomial context.
fn bivariate_as_y_poly(f: &Laurent<Rational>) -> Vec<MPoly> {
    let minx = f.terms().map(|(e, _)| e[0]).min().unwrap();
    let miny = f.terms().map(|(e, _)| e[1]).min().unwrap();
    let maxy = f.terms().map(|(e, _)| e[1]).max().unwrap();
    let px = crate::mpoly::params(&["x"]);
    let mut coeffs = vec![MPoly::zero(px.clone()); (maxy - miny + 1) as usize];
    for (e, c) in f.terms() {
        let xe = (e[0] - minx) as u32;
        let ye = (e[1] - miny) as usize;
        coeffs[ye].add_term(crate::mpoly::Mono(vec![xe]), c.clone());
    }
    coeffs
}

/// Exact Sylvester resultant eliminating `y`; a univariate polynomial in `x`.
fn sylvester_resultant(fy: &[MPoly], gy: &[MPoly]) -> MPoly {
    let px = fy
        .iter()
        .chain(gy.iter())
        .next()
        .expect("nonempty coefficient lists")
        .params()
        .clone();
    let m = fy.len() - 1;
    let n = gy.len() - 1;
    if m == 0 {
        return fy[0].pow(n as u32);
    }
    if n == 0 {
        return gy[0].pow(m as u32);
    }
    let size = m + n;
    let zero = MPoly::zero(px.clone());
    let mut rows: Vec<Vec<MPoly>> = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![zero.clone(); size];
        for (k, c) in fy.iter().enumerate() {
            row[shift + (m - k)] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![zero.clone(); size];
        for (k, c) in gy.iter().enumerate() {
            row[shift + (n - k)] = c.clone();
        }
        rows.push(row);
    }
    bareiss_det(rows)
}

/// Fraction-free determinant over the polynomial ring.
fn bareiss_det(mut m: Vec<Vec<MPoly>>) -> MPoly {
    let n = m.len();
    let params = m[0][0].params().clone();
    if n == 0 {
        return MPoly::one(params);
    }
    let mut prev = MPoly::one(params.clone());
    let mut sign = false;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return MPoly::zero(params);
            };
            m.swap(k, swap);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = MPoly::zero(params.clone());
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        -&det
    } else {
        det
    }
}

/// Torus roots of a bivariate system by resultant elimination, numeric
/// univariate solving, Durand-Kerner back-substitution and residual
/// filtering. Root count is checked against the lenient mixed volume.
pub fn solve_bivariate(
    f1: &Laurent<Rational>,
    f2: &Laurent<Rational>,
) -> Result<RootSet, OracleError> {
    assert_eq!(f1.nvars(), 2);
    assert_eq!(f2.nvars(), 2);
    if f1.is_zero() || f2.is_zero() {
        return Err(OracleError::ZeroPolynomial);
    }
    let fy = bivariate_as_y_poly(f1);
    let gy = bivariate_as_y_poly(f2);
    let res = sylvester_resultant(&fy, &gy);
    if res.is_zero() {
        return Err(OracleError::NonGenericInput(
            "Sylvester resultant vanishes identically".into(),
        ));
    }
    let res_coeffs = {
        let deg = res.terms().map(|(m, _)| m.0[0]).max().unwrap() as usize;
        let mut v = vec![Rational::zero(); deg + 1];
        for (mo, c) in res.terms() {
            v[mo.0[0] as usize] = c.clone();
        }
        // Clear the power of x dividing the resultant; x = 0 is off-torus.
        let shift = v.iter().position(|c| !c.is_zero()).unwrap();
        v.drain(..shift);
        v
    };
    let x_candidates: Vec<Complex64> = real_poly_roots(&res_coeffs)
        .into_iter()
        .filter(|z| z.norm() > 1e-12)
        .collect();

    let expected = expected_root_count(f1, f2)?;

    let mut roots: Vec<Vec<Complex64>> = Vec::new();
    for &x0 in &x_candidates {
        let mut y_candidates = roots_in_y_at(&fy, x0);
        y_candidates.extend(roots_in_y_at(&gy, x0));
        for &y0 in &y_candidates {
            if y0.norm() <= 1e-12 {
                continue;
            }
            let point = polish_bivariate(f1, f2, [x0, y0]);
            if relative_residual(f1, &point) > ROOT_RESIDUAL_TOL
                || relative_residual(f2, &point) > ROOT_RESIDUAL_TOL
            {
                continue;
            }
            if point.iter().any(|z| z.norm() <= 1e-12) {
                continue;
            }
            let dup = roots.iter().any(|r| {
                (r[0] - point[0]).norm() + (r[1] - point[1]).norm()
                    < 1e-7 * (1.0 + point[0].norm() + point[1].norm())
            });
            if !dup {
                roots.push(point.to_vec());
            }
        }
    }

    if roots.len() != expected {
        return Err(OracleError::IncompleteRootSet { found: roots.len(), expected });
    }
    let max_residual = roots
        .iter()
        .map(|r| relative_residual(f1, r).max(relative_residual(f2, r)))
        .fold(0.0f64, f64::max);
    Ok(RootSet {
        roots,
        source: RootSource::BivariateSolver,
        fingerprint: super::fingerprint_polys(&[f1.clone(), f2.clone()]),
        max_residual,
    })
}

/// Bernstein count for the pair, tolerating degenerate Newton polytopes.
pub(crate) fn expected_root_count(
    f1: &Laurent<Rational>,
    f2: &Laurent<Rational>,
) -> Result<usize, OracleError> {
    let p1 = f1.newton_polytope().map_err(|_| OracleError::ZeroPolynomial)?;
    let p2 = f2.newton_polytope().map_err(|_| OracleError::ZeroPolynomial)?;
    let mv = mixed_volume_lenient(&[p1, p2])
        .map_err(|e| OracleError::NonGenericInput(e.to_string()))?;
    Ok(mv as usize)
}

fn roots_in_y_at(fy: &[MPoly], x0: Complex64) -> Vec<Complex64> {
    let coeffs: Vec<Complex64> = fy
        .iter()
        .map(|c| {
            let mut acc = Complex64::zero();
            for (mo, v) in c.terms() {
                acc += Complex64::new(rational_to_f64(v), 0.0) * complex_pow(x0, mo.0[0] as i64);
            }
            acc
        })
        .collect();
    complex_roots(&coeffs)
}

/// A couple of Newton steps on the full 2x2 system.
fn polish_bivariate(
    f1: &Laurent<Rational>,
    f2: &Laurent<Rational>,
    mut z: [Complex64; 2],
) -> [Complex64; 2] {
    for _ in 0..10 {
        let (Ok(v1), Ok(v2)) = (f1.eval_complex(&z), f2.eval_complex(&z)) else {
            return z;
        };
        let j = [
            [partial(f1, &z, 0), partial(f1, &z, 1)],
            [partial(f2, &z, 0), partial(f2, &z, 1)],
        ];
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det.norm() < 1e-300 {
            return z;
        }
        let dx = (v1 * j[1][1] - v2 * j[0][1]) / det;
        let dy = (v2 * j[0][0] - v1 * j[1][0]) / det;
        z[0] -= dx;
        z[1] -= dy;
        if dx.norm() + dy.norm() < 1e-15 * (z[0].norm() + z[1].norm()).max(1.0) {
            break;
        }
    }
    z
}

fn partial(f: &Laurent<Rational>, z: &[Complex64; 2], var: usize) -> Complex64 {
    let mut acc = Complex64::zero();
    for (e, c) in f.terms() {
        if e[var] == 0 {
            continue;
        }
        let mut t = Complex64::new(rational_to_f64(c) * e[var] as f64, 0.0);
        for (k, &ek) in e.iter().enumerate() {
            let p = if k == var { ek - 1 } else { ek };
            t *= complex_pow(z[k], p);
        }
        acc += t;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    #[test]
    fn univariate_t2_minus_4() {
        let f = Laurent::from_terms(1, [(vec![2], rat_int(1)), (vec![0], rat_int(-4))]);
        let rs = solve_univariate(&f).unwrap();
        let mut re: Vec<f64> = rs.roots.iter().map(|r| r[0].re).collect();
        re.sort_by(f64::total_cmp);
        assert_eq!(rs.roots.len(), 2);
        assert!((re[0] + 2.0).abs() < 1e-12 && (re[1] - 2.0).abs() < 1e-12);
        assert!(rs.max_residual < ROOT_RESIDUAL_TOL);
    }

    #[test]
    fn univariate_clears_monomial_factor() {
        // t^3 - t: support {3, 1}, nonzero roots ±1.
        let f = Laurent::from_terms(1, [(vec![3], rat_int(1)), (vec![1], rat_int(-1))]);
        let rs = solve_univariate(&f).unwrap();
        assert_eq!(rs.roots.len(), 2);
        let mut re: Vec<f64> = rs.roots.iter().map(|r| r[0].re).collect();
        re.sort_by(f64::total_cmp);
        assert!((re[0] + 1.0).abs() < 1e-12 && (re[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn univariate_roots_of_unity() {
        for d in 1..=6i64 {
            let f = Laurent::from_terms(1, [(vec![d], rat_int(1)), (vec![0], rat_int(-1))]);
            let rs = solve_univariate(&f).unwrap();
            assert_eq!(rs.roots.len(), d as usize);
            for r in &rs.roots {
                assert!((r[0].norm() - 1.0).abs() < 1e-10);
                let v = f.eval_complex(&r.clone()).unwrap();
                assert!(v.norm() < 1e-10);
            }
        }
    }

    #[test]
    fn bivariate_trivial_pair() {
        // x - 1 and y - 2 meet at (1, 2); lenient mixed volume 1.
        let f1 = Laurent::from_terms(2, [(vec![1, 0], rat_int(1)), (vec![0, 0], rat_int(-1))]);
        let f2 = Laurent::from_terms(2, [(vec![0, 1], rat_int(1)), (vec![0, 0], rat_int(-2))]);
        assert_eq!(expected_root_count(&f1, &f2).unwrap(), 1);
        let rs = solve_bivariate(&f1, &f2).unwrap();
        assert_eq!(rs.roots.len(), 1);
        assert!((rs.roots[0][0] - Complex64::new(1.0, 0.0)).norm() < 1e-10);
        assert!((rs.roots[0][1] - Complex64::new(2.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn bivariate_identical_inputs_rejected() {
        let f = Laurent::from_terms(
            2,
            [(vec![1, 0], rat_int(1)), (vec![0, 1], rat_int(1)), (vec![0, 0], rat_int(-3))],
        );
        assert!(matches!(
            solve_bivariate(&f, &f),
            Err(OracleError::NonGenericInput(_))
        ));
    }

    #[test]
    fn resultant_of_simple_pair() {
        // f = y - x, g = y + x: res_y = -2x... up to sign, degree 1 in x
        // after clearing, roots at x = 0 only (off torus).
        let f1 = Laurent::from_terms(2, [(vec![0, 1], rat_int(1)), (vec![1, 0], rat_int(-1))]);
        let f2 = Laurent::from_terms(2, [(vec![0, 1], rat_int(1)), (vec![1, 0], rat_int(1))]);
        let fy = bivariate_as_y_poly(&f1);
        let gy = bivariate_as_y_poly(&f2);
        let r = sylvester_resultant(&fy, &gy);
        assert!(!r.is_zero());
        assert_eq!(r.num_terms(), 1);
    }

    #[test]
    fn durand_kerner_quadratic() {
        // z^2 + 1 = 0.
        let roots = complex_roots(&[
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        ]);
        assert_eq!(roots.len(), 2);
        for r in roots {
            assert!((r * r + Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }
}
