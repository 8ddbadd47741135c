//! Multivariate GCD by recursive subresultant pseudo-remainder sequences.
//!
//! A polynomial is treated as univariate in the first parameter that occurs,
//! with coefficients in the remaining parameters; contents are extracted at
//! every level and rational scalar content is stripped from each remainder
//! to control growth. Over the rationals the gcd is only defined up to a
//! nonzero scalar, so results are normalized to coprime integer coefficients
//! with a positive leading coefficient.

use num_traits::One;

use super::{ArithError, MPoly};
use crate::rational::Rational;

/// Greatest common divisor, normalized integer-primitive with positive
/// leading coefficient. Errors when both inputs are zero.
pub fn mpoly_gcd(a: &MPoly, b: &MPoly) -> Result<MPoly, ArithError> {
    a.same_params(b)?;
    if a.is_zero() && b.is_zero() {
        return Err(ArithError::UndefinedGcd);
    }
    if a.is_zero() {
        return Ok(b.primitive_normalize().0);
    }
    if b.is_zero() {
        return Ok(a.primitive_normalize().0);
    }
    Ok(gcd_inner(a, b))
}

fn gcd_inner(a: &MPoly, b: &MPoly) -> MPoly {
    debug_assert!(!a.is_zero() && !b.is_zero());
    if a.is_constant() || b.is_constant() {
        return MPoly::one(a.params().clone());
    }
    let v = first_variable(a).min(first_variable(b));

    let ua = to_univar(a, v);
    let ub = to_univar(b, v);
    let (cont_a, pa) = content_and_primitive(&ua);
    let (cont_b, pb) = content_and_primitive(&ub);
    let cont_gcd = gcd_inner(&cont_a, &cont_b);

    let prim_gcd = if pa.len() == 1 || pb.len() == 1 {
        // One side is free of `v` after content extraction.
        MPoly::one(a.params().clone())
    } else {
        subresultant_prs(pa, pb, v, a)
    };
    (&cont_gcd * &prim_gcd).primitive_normalize().0
}

/// Lowest parameter index with positive degree; callers guarantee one exists.
fn first_variable(p: &MPoly) -> usize {
    let n = p.params().len();
    let mut best = n;
    for (m, _) in p.terms() {
        for (i, &e) in m.0.iter().enumerate() {
            if e > 0 && i < best {
                best = i;
            }
        }
    }
    debug_assert!(best < n, "constant polynomial has no variable");
    best
}

/// Dense coefficient vector of `p` in variable `v`; coefficients have zero
/// `v`-exponent. Index = degree.
fn to_univar(p: &MPoly, v: usize) -> Vec<MPoly> {
    let deg = p.terms().map(|(m, _)| m.0[v]).max().unwrap_or(0) as usize;
    let mut coeffs = vec![MPoly::zero(p.params().clone()); deg + 1];
    for (m, c) in p.terms() {
        let d = m.0[v] as usize;
        let mut stripped = m.clone();
        stripped.0[v] = 0;
        coeffs[d].add_term(stripped, c.clone());
    }
    coeffs
}

fn from_univar(coeffs: &[MPoly], v: usize, like: &MPoly) -> MPoly {
    let mut out = MPoly::zero(like.params().clone());
    for (d, c) in coeffs.iter().enumerate() {
        for (m, val) in c.terms() {
            let mut m = m.clone();
            m.0[v] += d as u32;
            out.add_term(m, val.clone());
        }
    }
    out
}

fn trim(mut u: Vec<MPoly>) -> Vec<MPoly> {
    while u.len() > 1 && u.last().unwrap().is_zero() {
        u.pop();
    }
    u
}

fn is_upoly_zero(u: &[MPoly]) -> bool {
    u.iter().all(|c| c.is_zero())
}

/// Content (gcd of the `v`-coefficients) and the corresponding primitive part.
fn content_and_primitive(u: &[MPoly]) -> (MPoly, Vec<MPoly>) {
    let nonzero: Vec<&MPoly> = u.iter().filter(|c| !c.is_zero()).collect();
    debug_assert!(!nonzero.is_empty());
    let mut cont = nonzero[0].primitive_normalize().0;
    for c in &nonzero[1..] {
        if cont.is_constant() {
            break;
        }
        cont = gcd_inner(&cont, c);
    }
    let prim: Vec<MPoly> = u
        .iter()
        .map(|c| c.div_exact(&cont).expect("content divides"))
        .collect();
    (cont, trim(prim))
}

/// Strips rational scalar content; keeps coefficients integer and small.
fn scalar_reduce(u: Vec<MPoly>) -> Vec<MPoly> {
    let mut content = Rational::one();
    let mut first = true;
    for c in &u {
        if c.is_zero() {
            continue;
        }
        let rc = c.rational_content();
        content = if first { rc } else { rational_gcd(&content, &rc) };
        first = false;
    }
    if first || content.is_one() {
        return u;
    }
    let inv = content.recip();
    u.into_iter().map(|c| c.scale(&inv)).collect()
}

fn rational_gcd(a: &Rational, b: &Rational) -> Rational {
    // gcd of numerators over lcm of denominators.
    Rational::new(
        num_integer::gcd(a.numer().clone(), b.numer().clone()),
        num_integer::lcm(a.denom().clone(), b.denom().clone()),
    )
}

/// `lc(b)^(deg a - deg b + 1) * a mod b` computed without fractions in `v`.
fn pseudo_rem(a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    let db = b.len() - 1;
    debug_assert!(a.len() - 1 >= db);
    let lcb = b.last().unwrap().clone();
    let mut r = trim(a.to_vec());
    let mut pending = (a.len() - db) as i64; // da - db + 1
    while !is_upoly_zero(&r) && r.len() - 1 >= db {
        let dr = r.len() - 1;
        let lcr = r.last().unwrap().clone();
        let shift = dr - db;
        // r <- lcb * r - lcr * x^shift * b; the leading terms cancel.
        let mut next = vec![MPoly::zero(lcb.params().clone()); dr + 1];
        for (i, c) in r.iter().enumerate() {
            next[i] = c * &lcb;
        }
        for (i, c) in b.iter().enumerate() {
            next[i + shift] = &next[i + shift] - &(c * &lcr);
        }
        r = trim(next);
        pending -= 1;
    }
    // Remaining premultiplier so the total factor is lcb^(da-db+1).
    if pending > 0 && !is_upoly_zero(&r) {
        let mut factor = MPoly::one(lcb.params().clone());
        for _ in 0..pending {
            factor = &factor * &lcb;
        }
        r = r.into_iter().map(|c| &c * &factor).collect();
    }
    r
}

/// Subresultant PRS on primitive inputs; returns the normalized gcd of the
/// primitive parts.
fn subresultant_prs(mut f2: Vec<MPoly>, mut f1: Vec<MPoly>, v: usize, like: &MPoly) -> MPoly {
    if f2.len() < f1.len() {
        std::mem::swap(&mut f2, &mut f1);
    }
    let one = MPoly::one(like.params().clone());
    let mut g = one.clone();
    let mut h = one.clone();

    loop {
        let d = f2.len() - f1.len();
        let rem = pseudo_rem(&f2, &f1);
        if is_upoly_zero(&rem) {
            let (_, prim) = content_and_primitive(&f1);
            return from_univar(&prim, v, like).primitive_normalize().0;
        }
        if rem.len() == 1 {
            // Nonzero remainder of degree 0: primitive parts are coprime.
            return one;
        }
        // divisor = g * h^d
        let mut divisor = g.clone();
        for _ in 0..d {
            divisor = &divisor * &h;
        }
        let next: Vec<MPoly> = rem
            .iter()
            .map(|c| c.div_exact(&divisor).expect("subresultant division is exact"))
            .collect();
        let next = scalar_reduce(trim(next));

        g = f1.last().unwrap().clone();
        // h = g^d / h^(d-1)
        let mut gd = one.clone();
        for _ in 0..d {
            gd = &gd * &g;
        }
        let mut hd = one.clone();
        for _ in 0..d.saturating_sub(1) {
            hd = &hd * &h;
        }
        h = gd.div_exact(&hd).expect("subresultant h update is exact");

        f2 = f1;
        f1 = next;
    }
}

/// Dividing both polynomials by their gcd must succeed exactly; exposed for
/// reuse by the fraction field.
pub(crate) fn divide_out_gcd(a: &MPoly, b: &MPoly) -> (MPoly, MPoly) {
    let g = gcd_inner(a, b);
    if g.is_constant() {
        return (a.clone(), b.clone());
    }
    (
        a.div_exact(&g).expect("gcd divides numerator"),
        b.div_exact(&g).expect("gcd divides denominator"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::params;
    use crate::rational::rat_int;

    fn setup() -> (super::super::ParamList, impl Fn(&str) -> MPoly) {
        let p = params(&["a1", "a2", "a3", "b1", "b2", "b3"]);
        let q = p.clone();
        (p, move |s: &str| super::super::parse_expr(s, &q).unwrap())
    }

    #[test]
    fn gcd_with_zero() {
        let (p, e) = setup();
        let f = e("-2*a1*b2 + 4*a2");
        let z = MPoly::zero(p.clone());
        let g = mpoly_gcd(&f, &z).unwrap();
        assert_eq!(g, e("a1*b2 - 2*a2"));
        assert!(matches!(mpoly_gcd(&z, &z), Err(ArithError::UndefinedGcd)));
    }

    #[test]
    fn coprime_variables() {
        let (_, e) = setup();
        let g = mpoly_gcd(&e("a1"), &e("b1")).unwrap();
        assert_eq!(g, e("1"));
    }

    #[test]
    fn shared_bracket_factor() {
        // gcd(a1^2*b2*(a1*b3-a3*b1), a3*(a1*b3-a3*b1)^2) = a1*b3-a3*b1,
        // verified by multiplying back.
        let (_, e) = setup();
        let bracket = e("a1*b3 - a3*b1");
        let f = e("a1^2*b2*(a1*b3 - a3*b1)");
        let g = e("a3*(a1*b3 - a3*b1)^2");
        let d = mpoly_gcd(&f, &g).unwrap();
        assert_eq!(d, bracket);
        assert_eq!(&d * &f.div_exact(&d).unwrap(), f);
        assert_eq!(&d * &g.div_exact(&d).unwrap(), g);
    }

    #[test]
    fn gcd_divides_products() {
        let (_, e) = setup();
        let u = e("a1 + 2*a2 - b3");
        let v = e("a3*b1 - 1");
        let w = e("b2 + 3");
        let f = &u * &v;
        let g = &u * &w;
        let d = mpoly_gcd(&f, &g).unwrap();
        assert_eq!(d, u.primitive_normalize().0);
    }

    #[test]
    fn univariate_chain() {
        let p = params(&["t"]);
        let t = MPoly::var(p.clone(), "t").unwrap();
        // gcd(t^4 - 1, t^2 - 1) = t^2 - 1
        let t2 = &t * &t;
        let one = MPoly::one(p.clone());
        let f = &(&t2 * &t2) - &one;
        let g = &t2 - &one;
        assert_eq!(mpoly_gcd(&f, &g).unwrap(), g);
        // gcd(t^2+t, t+1) = t+1
        let h = &t2 + &t;
        let k = &t + &one;
        assert_eq!(mpoly_gcd(&h, &k).unwrap(), k);
    }

    #[test]
    fn constant_inputs() {
        let (p, e) = setup();
        let c = MPoly::constant(p.clone(), rat_int(6));
        let f = e("4*a1");
        assert_eq!(mpoly_gcd(&c, &f).unwrap(), e("1"));
    }
}
