//! Sparse multivariate polynomials over exact rationals in named parameters.
//!
//! Terms are kept in a `BTreeMap` keyed by graded-lexicographic monomial
//! order, which gives deterministic iteration, printing and leading-term
//! selection. Zero coefficients are never stored.

mod gcd;
mod grammar;

pub use gcd::mpoly_gcd;
pub(crate) use gcd::divide_out_gcd;
pub use grammar::{parse_expr, GrammarError};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::{bigint_gcd_many, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("parameter lists differ: [{0}] vs [{1}]")]
    Arity(String, String),
    #[error("assignment missing parameter `{0}`")]
    MissingSymbol(String),
    #[error("gcd of two zero polynomials is undefined")]
    UndefinedGcd,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("denominator vanishes at the evaluation point")]
    EvalPole,
}

/// Parameter exponent vector with graded-lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn constant(nparams: usize) -> Self {
        Mono(vec![0; nparams])
    }

    pub fn var(nparams: usize, idx: usize) -> Self {
        let mut e = vec![0; nparams];
        e[idx] = 1;
        Mono(e)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise division; `None` if any exponent would go negative.
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Mono)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub type ParamList = Arc<Vec<String>>;

/// Sparse multivariate polynomial over `Rational` in a fixed parameter list.
///
/// Two polynomials compare equal when they have the same parameter list and
/// the same terms, or when both are constants with the same value (constants
/// built without context carry an empty parameter list).
#[derive(Debug, Clone, Eq)]
pub struct MPoly {
    params: ParamList,
    terms: BTreeMap<Mono, Rational>,
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.params == other.params {
            return self.terms == other.terms;
        }
        match (self.constant_value(), other.constant_value()) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    }
}

impl MPoly {
    pub fn zero(params: ParamList) -> Self {
        MPoly { params, terms: BTreeMap::new() }
    }

    pub fn constant(params: ParamList, c: Rational) -> Self {
        let mut p = MPoly::zero(params);
        if !c.is_zero() {
            p.terms.insert(Mono::constant(p.params.len()), c);
        }
        p
    }

    pub fn one(params: ParamList) -> Self {
        Self::constant(params, Rational::one())
    }

    /// The polynomial `name`, which must be in the parameter list.
    pub fn var(params: ParamList, name: &str) -> Option<Self> {
        let idx = params.iter().position(|p| p == name)?;
        let mono = Mono::var(params.len(), idx);
        let mut p = MPoly::zero(params);
        p.terms.insert(mono, Rational::one());
        Some(p)
    }

    pub fn from_terms(params: ParamList, terms: impl IntoIterator<Item = (Mono, Rational)>) -> Self {
        let mut p = MPoly::zero(params);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn params(&self) -> &ParamList {
        &self.params
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_constant())
    }

    /// The constant value if `is_constant`, else `None`.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            Some(Rational::zero())
        } else if self.is_constant() {
            Some(self.terms.values().next().unwrap().clone())
        } else {
            None
        }
    }

    pub fn add_term(&mut self, mono: Mono, coeff: Rational) {
        debug_assert_eq!(mono.0.len(), self.params.len());
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Mono, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn same_params(&self, other: &MPoly) -> Result<(), ArithError> {
        if self.params == other.params {
            Ok(())
        } else {
            Err(ArithError::Arity(self.params.join(","), other.params.join(",")))
        }
    }

    /// Re-homes a constant onto another parameter list; identity when the
    /// lists already match. Panics on a genuine mismatch.
    pub fn lift_params(&self, params: &ParamList) -> MPoly {
        if &self.params == params {
            return self.clone();
        }
        let c = self
            .constant_value()
            .expect("only constants can change parameter lists");
        MPoly::constant(params.clone(), c)
    }

    /// Brings two polynomials onto a shared parameter list, lifting a
    /// context-free constant if necessary.
    pub fn unify_params(a: MPoly, b: MPoly) -> Result<(MPoly, MPoly), ArithError> {
        if a.params == b.params {
            return Ok((a, b));
        }
        if a.params.is_empty() && a.is_constant() {
            let p = b.params.clone();
            return Ok((a.lift_params(&p), b));
        }
        if b.params.is_empty() && b.is_constant() {
            let p = a.params.clone();
            return Ok((a, b.lift_params(&p)));
        }
        Err(ArithError::Arity(a.params.join(","), b.params.join(",")))
    }

    pub fn checked_add(&self, other: &MPoly) -> Result<MPoly, ArithError> {
        let (a, b) = MPoly::unify_params(self.clone(), other.clone())?;
        Ok(&a + &b)
    }

    pub fn checked_sub(&self, other: &MPoly) -> Result<MPoly, ArithError> {
        let (a, b) = MPoly::unify_params(self.clone(), other.clone())?;
        Ok(&a - &b)
    }

    pub fn checked_mul(&self, other: &MPoly) -> Result<MPoly, ArithError> {
        let (a, b) = MPoly::unify_params(self.clone(), other.clone())?;
        Ok(&a * &b)
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.params.clone());
        }
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        MPoly { params: self.params.clone(), terms }
    }

    pub fn mul_mono(&self, mono: &Mono, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.params.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, v)| (m.mul(mono), v * c))
            .collect();
        MPoly { params: self.params.clone(), terms }
    }

    pub fn pow(&self, mut e: u32) -> MPoly {
        let mut acc = MPoly::one(self.params.clone());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Exact polynomial division: `Some(q)` with `self = q * d`, or `None`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(MPoly::zero(self.params.clone()));
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (dm, dc) = d.leading().unwrap();
        let mut rem = self.clone();
        let mut quo = MPoly::zero(self.params.clone());
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div(dm)?;
            let qc = rc / dc;
            rem = &rem - &d.mul_mono(&qm, &qc);
            quo.add_term(qm, qc);
        }
        Some(quo)
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients. Zero polynomial yields 1.
    pub fn rational_content(&self) -> Rational {
        if self.is_zero() {
            return Rational::one();
        }
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = num_integer::lcm(den_lcm, c.denom().clone());
        }
        let num_gcd = bigint_gcd_many(
            self.terms
                .values()
                .map(|c| c.numer())
                .collect::<Vec<_>>()
                .into_iter(),
        );
        Rational::new(num_gcd, den_lcm)
    }

    /// Scales to coprime integer coefficients with positive leading
    /// coefficient; returns `(primitive, factor)` with `self = factor * primitive`.
    pub fn primitive_normalize(&self) -> (MPoly, Rational) {
        if self.is_zero() {
            return (self.clone(), Rational::one());
        }
        let mut content = self.rational_content();
        if self.leading().unwrap().1.is_negative() {
            content = -content;
        }
        (self.scale(&content.recip()), content)
    }

    /// Exact evaluation; the assignment must cover every parameter.
    pub fn eval(&self, assignment: &BTreeMap<String, Rational>) -> Result<Rational, ArithError> {
        let mut values = Vec::with_capacity(self.params.len());
        for name in self.params.iter() {
            values.push(
                assignment
                    .get(name)
                    .ok_or_else(|| ArithError::MissingSymbol(name.clone()))?
                    .clone(),
            );
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t *= &values[i];
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Number of stored terms; used as a pivot-complexity measure.
    pub fn complexity(&self) -> usize {
        self.terms.len()
    }
}

impl std::ops::Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        debug_assert_eq!(self.params, rhs.params);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        debug_assert_eq!(self.params, rhs.params);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl std::ops::Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        debug_assert_eq!(self.params, rhs.params);
        let mut out = MPoly::zero(self.params.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl std::ops::Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect();
        MPoly { params: self.params.clone(), terms }
    }
}

macro_rules! owned_ops {
    ($($trait:ident :: $method:ident),*) => {$(
        impl std::ops::$trait for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
    )*}
}
owned_ops!(Add::add, Sub::sub, Mul::mul);

impl std::ops::Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Leading term first: iterate graded-lex descending.
        for (i, (mono, coeff)) in self.terms.iter().rev().enumerate() {
            let neg = coeff.is_negative();
            let mag = coeff.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || mono.is_constant() {
                factors.push(mag.to_string());
            }
            for (idx, &e) in mono.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.params[idx].clone()),
                    _ => factors.push(format!("{}^{}", self.params[idx], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Convenience constructor for a shared parameter list.
pub fn params(names: &[&str]) -> ParamList {
    Arc::new(names.iter().map(|s| s.to_string()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn ab() -> ParamList {
        params(&["a1", "a2", "a3", "b1", "b2", "b3"])
    }

    fn var(p: &ParamList, name: &str) -> MPoly {
        MPoly::var(p.clone(), name).unwrap()
    }

    #[test]
    fn additive_inverse() {
        let p = ab();
        let a1 = var(&p, "a1");
        let a2 = var(&p, "a2");
        let sum = &(&a1 + &a2) + &(-&a2);
        assert_eq!(sum, a1);
    }

    #[test]
    fn square_of_bracket() {
        // (a1*b3 - a3*b1)^2 expanded by hand.
        let p = ab();
        let bracket = &(&var(&p, "a1") * &var(&p, "b3")) - &(&var(&p, "a3") * &var(&p, "b1"));
        let sq = &bracket * &bracket;
        let mut expect = MPoly::zero(p.clone());
        expect.add_term(Mono(vec![2, 0, 0, 0, 0, 2]), rat_int(1));
        expect.add_term(Mono(vec![1, 0, 1, 1, 0, 1]), rat_int(-2));
        expect.add_term(Mono(vec![0, 0, 2, 2, 0, 0]), rat_int(1));
        assert_eq!(sq, expect);
        assert_eq!(sq.num_terms(), 3);
    }

    #[test]
    fn zero_absorbs() {
        let p = ab();
        let z = MPoly::zero(p.clone());
        let q = &(&var(&p, "a1") + &MPoly::constant(p.clone(), rat(7, 3))) * &var(&p, "b2");
        assert!((&z * &q).is_zero());
    }

    #[test]
    fn arity_mismatch() {
        let p = params(&["a"]);
        let q = params(&["b"]);
        let pa = MPoly::one(p);
        let qb = MPoly::one(q);
        assert!(matches!(pa.checked_add(&qb), Err(ArithError::Arity(_, _))));
    }

    #[test]
    fn exact_division() {
        let p = ab();
        let f = &var(&p, "a1") + &var(&p, "a2");
        let g = &var(&p, "a1") - &var(&p, "b1");
        let prod = &f * &g;
        assert_eq!(prod.div_exact(&g).unwrap(), f);
        assert_eq!(prod.div_exact(&f).unwrap(), g);
        assert!(prod.div_exact(&(&f + &MPoly::one(p.clone()))).is_none());
    }

    #[test]
    fn eval_simple() {
        let p = ab();
        let expr = &(&var(&p, "a1") * &var(&p, "b2")) - &MPoly::one(p.clone());
        let mut asn = BTreeMap::new();
        for name in ["a1", "a2", "a3", "b1", "b2", "b3"] {
            asn.insert(name.to_string(), rat_int(1));
        }
        asn.insert("a1".into(), rat_int(2));
        asn.insert("b2".into(), rat_int(3));
        assert_eq!(expr.eval(&asn).unwrap(), rat_int(5));
        asn.remove("b3");
        let needs_b3 = var(&p, "b3");
        assert!(matches!(needs_b3.eval(&asn), Err(ArithError::MissingSymbol(_))));
    }

    #[test]
    fn display_roundtrip_form() {
        let p = ab();
        let e = &(&var(&p, "a1") * &var(&p, "b3")) - &(&var(&p, "a3") * &var(&p, "b1"));
        assert_eq!(e.to_string(), "a1*b3 - a3*b1");
        let c = MPoly::constant(p.clone(), rat(-3, 2));
        let q = &c * &e;
        assert_eq!(q.to_string(), "-3/2*a1*b3 + 3/2*a3*b1");
    }

    #[test]
    fn primitive_normalization() {
        let p = ab();
        let e = (&var(&p, "a1") + &var(&p, "a2")).scale(&rat(-4, 6));
        let (prim, factor) = e.primitive_normalize();
        assert_eq!(prim, &var(&p, "a1") + &var(&p, "a2"));
        assert_eq!(factor, rat(-2, 3));
    }
}
