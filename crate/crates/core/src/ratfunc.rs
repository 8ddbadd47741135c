//! The fraction field of [`MPoly`]: reduced rational functions in the
//! parameters.
//!
//! Reduction is eager: on construction the polynomial gcd is divided out and
//! the pair is rescaled so numerator and denominator have integer
//! coefficients with no common integer factor and the denominator's leading
//! coefficient is positive. The representation is canonical, so structural
//! equality coincides with mathematical equality; [`RatFunc::equiv`] offers an
//! independent cross-multiplication check that does not rely on
//! canonicalization.
//!
//! Constants built without context (`Zero::zero`, `One::one`, integers) carry
//! an empty parameter list; binary operations lift them into the other
//! operand's parameters. A parameter mismatch between two non-constant
//! operands is a caller bug and panics; fallible construction goes through
//! [`RatFunc::new`].

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::mpoly::{divide_out_gcd, ArithError, MPoly, ParamList};
use crate::rational::Rational;

#[derive(Debug, Clone, Eq)]
pub struct RatFunc {
    num: MPoly,
    den: MPoly,
}

impl RatFunc {
    /// Builds and reduces `num / den`. Errors when `den` is zero.
    pub fn new(num: MPoly, den: MPoly) -> Result<RatFunc, ArithError> {
        let (num, den) = MPoly::unify_params(num, den)?;
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc { den: MPoly::one(num.params().clone()), num });
        }
        let (num, den) = if num.is_constant() || den.is_constant() {
            (num, den)
        } else {
            divide_out_gcd(&num, &den)
        };
        // num = cn * N, den = cd * D with N, D integer-primitive and D's
        // leading coefficient positive; fold cn/cd into the integer parts.
        let (n_prim, cn) = num.primitive_normalize();
        let (d_prim, cd) = den.primitive_normalize();
        let ratio = cn / cd;
        let num = n_prim.scale(&Rational::from_integer(ratio.numer().clone()));
        let den = d_prim.scale(&Rational::from_integer(ratio.denom().clone()));
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: MPoly) -> RatFunc {
        let den = MPoly::one(p.params().clone());
        RatFunc::new(p, den).expect("denominator 1")
    }

    pub fn constant(c: Rational) -> RatFunc {
        let params: ParamList = Arc::new(Vec::new());
        RatFunc::from_poly(MPoly::constant(params, c))
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn params(&self) -> &ParamList {
        self.num.params()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Cross-multiplication equality: `a/b == c/d` iff `a*d == c*b`. Does not
    /// rely on the canonical form.
    pub fn equiv(&self, other: &RatFunc) -> bool {
        let lhs = match self.num.checked_mul(&other.den) {
            Ok(p) => p,
            Err(_) => return false,
        };
        let rhs = match other.num.checked_mul(&self.den) {
            Ok(p) => p,
            Err(_) => return false,
        };
        lhs == rhs
    }

    pub fn recip(&self) -> Result<RatFunc, ArithError> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    /// Exact evaluation at a parameter assignment.
    pub fn eval(&self, assignment: &BTreeMap<String, Rational>) -> Result<Rational, ArithError> {
        let d = self.den.eval(assignment)?;
        if d.is_zero() {
            return Err(ArithError::EvalPole);
        }
        Ok(self.num.eval(assignment)? / d)
    }

    fn unify(a: RatFunc, b: RatFunc) -> (RatFunc, RatFunc) {
        if a.params() == b.params() {
            return (a, b);
        }
        if a.params().is_empty() {
            let p = b.params().clone();
            return (a.lift(&p), b);
        }
        if b.params().is_empty() {
            let p = a.params().clone();
            return (a, b.lift(&p));
        }
        panic!(
            "parameter lists differ: [{}] vs [{}]",
            a.params().join(","),
            b.params().join(",")
        );
    }

    fn lift(&self, params: &ParamList) -> RatFunc {
        RatFunc {
            num: self.num.lift_params(params),
            den: self.den.lift_params(params),
        }
    }
}

/// Reduces `num / den` to canonical form — the fraction-field constructor as
/// a free function.
pub fn ratfunc_reduce(num: MPoly, den: MPoly) -> Result<RatFunc, ArithError> {
    RatFunc::new(num, den)
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl std::ops::Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        if self.num.is_zero() {
            return rhs;
        }
        if rhs.num.is_zero() {
            return self;
        }
        let (a, b) = RatFunc::unify(self, rhs);
        let num = &(&a.num * &b.den) + &(&b.num * &a.den);
        let den = &a.den * &b.den;
        RatFunc::new(num, den).expect("nonzero denominator")
    }
}

impl std::ops::Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        if rhs.num.is_zero() {
            return self;
        }
        if self.num.is_zero() {
            return -rhs;
        }
        let (a, b) = RatFunc::unify(self, rhs);
        let num = &(&a.num * &b.den) - &(&b.num * &a.den);
        let den = &a.den * &b.den;
        RatFunc::new(num, den).expect("nonzero denominator")
    }
}

impl std::ops::Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        if self.num.is_zero() || rhs.num.is_zero() {
            return RatFunc::zero();
        }
        if self.is_one() {
            return rhs;
        }
        if rhs.is_one() {
            return self;
        }
        let (a, b) = RatFunc::unify(self, rhs);
        RatFunc::new(&a.num * &b.num, &a.den * &b.den).expect("nonzero denominator")
    }
}

impl std::ops::Div for RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: RatFunc) -> RatFunc {
        assert!(!rhs.num.is_zero(), "division of rational functions by zero");
        if self.num.is_zero() {
            return RatFunc::zero();
        }
        if rhs.is_one() {
            return self;
        }
        let (a, b) = RatFunc::unify(self, rhs);
        // Polynomial entries dominate in elimination; try the cheap exact
        // quotient before falling back to a gcd reduction.
        if a.den.is_constant() && b.den.is_constant() {
            if let Some(q) = a.num.div_exact(&b.num) {
                let scale = b.den.constant_value().unwrap() / a.den.constant_value().unwrap();
                return RatFunc::from_poly(q.scale(&scale));
            }
        }
        RatFunc::new(&a.num * &b.den, &a.den * &b.num).expect("nonzero denominator")
    }
}

impl std::ops::Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den }
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::constant(Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::constant(Rational::one())
    }

    fn is_one(&self) -> bool {
        self.num.constant_value().map(|c| c.is_one()).unwrap_or(false)
            && self.den.constant_value().map(|c| c.is_one()).unwrap_or(false)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // A constant denominator folds into the rational coefficients, which
        // keeps the output inside the coefficient grammar. Only genuinely
        // rational functions need the (num)/(den) form.
        if let Some(c) = self.den.constant_value() {
            write!(f, "{}", self.num.scale(&c.recip()))
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::{params, parse_expr};
    use crate::rational::{rat, rat_int};

    fn e(src: &str) -> MPoly {
        let p = params(&["a1", "a2", "a3", "b1", "b2", "b3"]);
        parse_expr(src, &p).unwrap()
    }

    #[test]
    fn constant_reduction() {
        let r = RatFunc::new(e("2*a1"), e("4*a1")).unwrap();
        assert_eq!(r.num(), &e("1"));
        assert_eq!(r.den(), &e("2"));
    }

    #[test]
    fn paper_style_reduction() {
        // (a1^2*b2*(a1*b3-a3*b1)) / (4*a3*(a1*b3-a3*b1)^3)
        //   = a1^2*b2 / (4*a3*(a1*b3-a3*b1)^2), checked by cross-multiplication.
        let num = e("a1^2*b2*(a1*b3 - a3*b1)");
        let den = e("4*a3*(a1*b3 - a3*b1)^3");
        let r = RatFunc::new(num.clone(), den.clone()).unwrap();
        let expect = RatFunc::new(e("a1^2*b2"), e("4*a3*(a1*b3 - a3*b1)^2")).unwrap();
        assert_eq!(r, expect);
        // Independent check: r.num * den == num * r.den.
        assert_eq!(&(r.num().clone() * den) , &(num * r.den().clone()));
    }

    #[test]
    fn zero_numerator_and_zero_denominator() {
        let r = RatFunc::new(MPoly::zero(e("a1").params().clone()), e("a3*b1 + 1")).unwrap();
        assert!(r.is_zero());
        assert_eq!(r.den(), &e("1"));
        assert!(matches!(
            RatFunc::new(e("a1"), MPoly::zero(e("a1").params().clone())),
            Err(ArithError::DivisionByZero)
        ));
    }

    #[test]
    fn equivalence_checks() {
        let one = RatFunc::one();
        let a1_over_a1 = RatFunc::new(e("a1"), e("a1")).unwrap();
        assert!(a1_over_a1.equiv(&one.lift(a1_over_a1.params())));
        assert!(a1_over_a1.is_one());

        let lhs = RatFunc::new(e("a1*b3 - a3*b1"), e("1")).unwrap();
        let rhs = RatFunc::new(e("a3*b1 - a1*b3"), e("-1")).unwrap();
        assert!(lhs.equiv(&rhs));
        assert_eq!(lhs, rhs);

        let x = RatFunc::new(e("a1"), e("a2")).unwrap();
        let y = RatFunc::new(e("a2"), e("a1")).unwrap();
        assert!(!x.equiv(&y));
    }

    #[test]
    fn field_ops() {
        let x = RatFunc::new(e("a1"), e("a2")).unwrap();
        let y = RatFunc::new(e("a2"), e("a1")).unwrap();
        let prod = x.clone() * y.clone();
        assert!(prod.is_one());
        let s = x.clone() + y.clone();
        let expect = RatFunc::new(e("a1^2 + a2^2"), e("a1*a2")).unwrap();
        assert_eq!(s, expect);
        let q = x.clone() / y;
        assert_eq!(q, RatFunc::new(e("a1^2"), e("a2^2")).unwrap());
        assert!((x.clone() - x).is_zero());
    }

    #[test]
    fn eval_with_pole() {
        let r = RatFunc::new(e("a1^2*b2"), e("a3*(a1*b3 - a3*b1)^2")).unwrap();
        let mut asn = BTreeMap::new();
        for name in ["a1", "a2", "a3", "b1", "b2"] {
            asn.insert(name.to_string(), rat_int(1));
        }
        asn.insert("b3".to_string(), rat_int(2));
        assert_eq!(r.eval(&asn).unwrap(), rat_int(1));
        asn.insert("b3".to_string(), rat_int(1));
        assert!(matches!(r.eval(&asn), Err(ArithError::EvalPole)));
    }

    #[test]
    fn untyped_constants_mix_with_parameters() {
        let half = RatFunc::constant(rat(1, 2));
        let x = RatFunc::new(e("a1"), e("2")).unwrap();
        let s = half.clone() * x.clone();
        assert_eq!(s, RatFunc::new(e("a1"), e("4")).unwrap());
        assert!((x.clone() - x) .is_zero());
        assert_eq!(half + RatFunc::constant(rat(1, 2)), RatFunc::one());
    }
}
