//! Sparse Laurent polynomials over a coefficient field, Newton polytopes,
//! the toric Jacobian, and square sparse systems with cached polytope data.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::Zero;
use thiserror::Error;

use crate::coeff::Coeff;
use crate::geometry::{mixed_volume, ExpVec, GeomError, LatticePolytope};
use crate::mpoly::ArithError;
use crate::rational::{rational_to_f64, Rational};
use crate::ratfunc::RatFunc;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LaurentError {
    #[error("the zero polynomial has no Newton polytope")]
    ZeroPolynomial,
    #[error("support error: {0}")]
    Support(String),
    #[error("evaluation outside the torus: coordinate {0} is zero")]
    TorusDomain(usize),
    #[error("system must be square: {npolys} polynomials in {nvars} variables")]
    NotSquare { npolys: usize, nvars: usize },
    #[error("Newton polytope of f_{0} is not full-dimensional")]
    DegenerateNewton(usize),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Sparse Laurent polynomial: exponent vectors in `Z^n` with nonzero
/// coefficients, kept in lexicographic key order.
#[derive(Debug, Clone, PartialEq)]
pub struct Laurent<C: Coeff> {
    nvars: usize,
    terms: BTreeMap<ExpVec, C>,
}

impl<C: Coeff> Laurent<C> {
    pub fn zero(nvars: usize) -> Self {
        Laurent { nvars, terms: BTreeMap::new() }
    }

    pub fn monomial(nvars: usize, exp: ExpVec, coeff: C) -> Self {
        let mut l = Laurent::zero(nvars);
        l.add_term(exp, coeff);
        l
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (ExpVec, C)>) -> Self {
        let mut l = Laurent::zero(nvars);
        for (e, c) in terms {
            l.add_term(e, c);
        }
        l
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &ExpVec) -> Option<&C> {
        self.terms.get(exp)
    }

    pub fn add_term(&mut self, exp: ExpVec, coeff: C) {
        assert_eq!(exp.len(), self.nvars, "exponent arity mismatch");
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
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

    pub fn add(&self, other: &Laurent<C>) -> Laurent<C> {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Laurent<C>) -> Laurent<C> {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Laurent<C>) -> Laurent<C> {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Laurent::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: ExpVec = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &C) -> Laurent<C> {
        if c.is_zero() {
            return Laurent::zero(self.nvars);
        }
        Laurent {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn neg(&self) -> Laurent<C> {
        Laurent {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    /// `t_j ∂/∂t_j`: multiplies each term by its `j`-th exponent. Maps the
    /// support into itself.
    pub fn log_derivative(&self, j: usize) -> Laurent<C> {
        let mut out = Laurent::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone() * C::from_i64(e[j]));
        }
        out
    }

    /// Convex hull of the support.
    pub fn newton_polytope(&self) -> Result<LatticePolytope, LaurentError> {
        if self.terms.is_empty() {
            return Err(LaurentError::ZeroPolynomial);
        }
        let pts: Vec<ExpVec> = self.terms.keys().cloned().collect();
        Ok(LatticePolytope::convex_hull(&pts)?)
    }
}

impl Laurent<Rational> {
    /// Exact evaluation at a rational point of the torus.
    pub fn eval_rational(&self, point: &[Rational]) -> Result<Rational, LaurentError> {
        assert_eq!(point.len(), self.nvars);
        if let Some(k) = point.iter().position(|c| c.is_zero()) {
            return Err(LaurentError::TorusDomain(k));
        }
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, &ek) in e.iter().enumerate() {
                t *= rational_pow(&point[k], ek);
            }
            total += t;
        }
        Ok(total)
    }

    /// Floating-point evaluation at a complex point of the torus.
    pub fn eval_complex(&self, point: &[Complex64]) -> Result<Complex64, LaurentError> {
        assert_eq!(point.len(), self.nvars);
        if let Some(k) = point.iter().position(|c| c.norm() == 0.0) {
            return Err(LaurentError::TorusDomain(k));
        }
        let mut total = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = Complex64::new(rational_to_f64(c), 0.0);
            for (k, &ek) in e.iter().enumerate() {
                t *= complex_pow(point[k], ek);
            }
            total += t;
        }
        Ok(total)
    }
}

impl Laurent<Complex64> {
    pub fn eval_complex(&self, point: &[Complex64]) -> Result<Complex64, LaurentError> {
        assert_eq!(point.len(), self.nvars);
        if let Some(k) = point.iter().position(|c| c.norm() == 0.0) {
            return Err(LaurentError::TorusDomain(k));
        }
        let mut total = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = *c;
            for (k, &ek) in e.iter().enumerate() {
                t *= complex_pow(point[k], ek);
            }
            total += t;
        }
        Ok(total)
    }
}

impl Laurent<RatFunc> {
    /// Evaluates every coefficient at a parameter assignment, dropping terms
    /// that vanish.
    pub fn substitute_params(
        &self,
        assignment: &BTreeMap<String, Rational>,
    ) -> Result<Laurent<Rational>, LaurentError> {
        let mut out = Laurent::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.eval(assignment)?);
        }
        Ok(out)
    }
}

fn rational_pow(base: &Rational, e: i64) -> Rational {
    let mut acc = Rational::from_integer(1.into());
    let b = if e >= 0 { base.clone() } else { base.clone().recip() };
    for _ in 0..e.unsigned_abs() {
        acc *= &b;
    }
    acc
}

pub(crate) fn complex_pow(base: Complex64, e: i64) -> Complex64 {
    let b = if e >= 0 { base } else { base.inv() };
    let mut acc = Complex64::new(1.0, 0.0);
    for _ in 0..e.unsigned_abs() {
        acc *= b;
    }
    acc
}

impl<C: Coeff> fmt::Display for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &ek)| ek != 0)
                .map(|(k, &ek)| if ek == 1 { format!("t{k}") } else { format!("t{k}^{ek}") })
                .collect();
            if mono.is_empty() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Drops every term of `f` whose exponent is strictly interior to `delta`.
/// Errors if some term of `f` lies outside `delta`.
pub fn boundary_restrict<C: Coeff>(
    f: &Laurent<C>,
    delta: &LatticePolytope,
) -> Result<Laurent<C>, LaurentError> {
    let mut out = Laurent::zero(f.nvars());
    for (e, c) in f.terms() {
        if !delta.contains(e, false)? {
            return Err(LaurentError::Support(format!(
                "term exponent {e:?} lies outside the polytope"
            )));
        }
        if !delta.contains(e, true)? {
            out.add_term(e.clone(), c.clone());
        }
    }
    Ok(out)
}

/// A square sparse system with cached Newton polytopes, their Minkowski sum
/// and the normalized mixed volume. Construction validates that every Newton
/// polytope is full-dimensional.
#[derive(Debug, Clone)]
pub struct SparseSystem<C: Coeff> {
    n: usize,
    polys: Vec<Laurent<C>>,
    newton: Vec<LatticePolytope>,
    delta: LatticePolytope,
    mv: i64,
}

impl<C: Coeff> SparseSystem<C> {
    pub fn new(polys: Vec<Laurent<C>>) -> Result<Self, LaurentError> {
        let n = polys.len();
        if n == 0 || polys.iter().any(|f| f.nvars() != n) {
            return Err(LaurentError::NotSquare {
                npolys: n,
                nvars: polys.first().map(|f| f.nvars()).unwrap_or(0),
            });
        }
        let mut newton = Vec::with_capacity(n);
        for (i, f) in polys.iter().enumerate() {
            let p = f.newton_polytope()?;
            if !p.is_full_dim() {
                return Err(LaurentError::DegenerateNewton(i + 1));
            }
            newton.push(p);
        }
        let mut delta = newton[0].clone();
        for p in &newton[1..] {
            delta = delta.minkowski(p)?;
        }
        let mv = mixed_volume(&newton)?;
        Ok(SparseSystem { n, polys, newton, delta, mv })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn polys(&self) -> &[Laurent<C>] {
        &self.polys
    }

    pub fn newton_polytopes(&self) -> &[LatticePolytope] {
        &self.newton
    }

    /// Minkowski sum of the Newton polytopes.
    pub fn delta(&self) -> &LatticePolytope {
        &self.delta
    }

    /// Normalized mixed volume `n! V(Δ_1, ..., Δ_n)`: the generic torus root
    /// count.
    pub fn mixed_volume(&self) -> i64 {
        self.mv
    }

    /// The toric Jacobian `det(t_j ∂f_i/∂t_j)`, expanded by cofactors over
    /// the Laurent ring. Its support lies in the Minkowski sum of the Newton
    /// polytopes.
    pub fn toric_jacobian(&self) -> Laurent<C> {
        let n = self.n;
        let entries: Vec<Vec<Laurent<C>>> = (0..n)
            .map(|i| (0..n).map(|j| self.polys[i].log_derivative(j)).collect())
            .collect();
        laurent_det(&entries, &(0..n).collect::<Vec<_>>(), &(0..n).collect::<Vec<_>>())
    }
}

impl SparseSystem<RatFunc> {
    /// Numeric instantiation at a parameter assignment.
    pub fn substitute_params(
        &self,
        assignment: &BTreeMap<String, Rational>,
    ) -> Result<SparseSystem<Rational>, LaurentError> {
        let polys = self
            .polys
            .iter()
            .map(|f| f.substitute_params(assignment))
            .collect::<Result<Vec<_>, _>>()?;
        SparseSystem::new(polys)
    }
}

fn laurent_det<C: Coeff>(m: &[Vec<Laurent<C>>], rows: &[usize], cols: &[usize]) -> Laurent<C> {
    let nvars = m[0][0].nvars();
    match rows.len() {
        0 => Laurent::monomial(nvars, vec![0; nvars], C::one()),
        1 => m[rows[0]][cols[0]].clone(),
        _ => {
            let mut total = Laurent::zero(nvars);
            let sub_rows = &rows[1..];
            for (k, &c) in cols.iter().enumerate() {
                let entry = &m[rows[0]][c];
                if entry.is_zero() {
                    continue;
                }
                let sub_cols: Vec<usize> =
                    cols.iter().copied().filter(|&cc| cc != c).collect();
                let minor = laurent_det(m, sub_rows, &sub_cols);
                let signed = if k % 2 == 0 { minor } else { minor.neg() };
                total = total.add(&entry.mul(&signed));
            }
            total
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::{params, parse_expr, ParamList};
    use crate::rational::{rat, rat_int};

    fn paper_params() -> ParamList {
        params(&["a1", "a2", "a3", "b1", "b2", "b3"])
    }

    fn rf(src: &str, p: &ParamList) -> RatFunc {
        RatFunc::from_poly(parse_expr(src, p).unwrap())
    }

    pub(crate) fn paper_system() -> SparseSystem<RatFunc> {
        let p = paper_params();
        let f1 = Laurent::from_terms(
            2,
            [
                (vec![1, 0], rf("a1", &p)),
                (vec![0, 1], rf("a2", &p)),
                (vec![2, 2], rf("a3", &p)),
            ],
        );
        let f2 = Laurent::from_terms(
            2,
            [
                (vec![1, 0], rf("b1", &p)),
                (vec![1, 2], rf("b2", &p)),
                (vec![2, 2], rf("b3", &p)),
            ],
        );
        SparseSystem::new(vec![f1, f2]).unwrap()
    }

    #[test]
    fn newton_polytopes_of_example() {
        let sys = paper_system();
        assert_eq!(
            sys.newton_polytopes()[0].vertices(),
            &[vec![0, 1], vec![1, 0], vec![2, 2]]
        );
        assert_eq!(sys.mixed_volume(), 4);
        let g: Laurent<RatFunc> =
            Laurent::monomial(2, vec![5, 4], RatFunc::constant(rat_int(1)));
        let ng = g.newton_polytope().unwrap();
        assert_eq!(ng.vertices(), &[vec![5, 4]]);
        assert_eq!(ng.affine_dim(), 0);
        let one: Laurent<Rational> = Laurent::monomial(2, vec![0, 0], rat_int(1));
        assert_eq!(one.newton_polytope().unwrap().vertices(), &[vec![0, 0]]);
        let zero: Laurent<Rational> = Laurent::zero(2);
        assert!(matches!(zero.newton_polytope(), Err(LaurentError::ZeroPolynomial)));
    }

    #[test]
    fn toric_jacobian_of_example() {
        let p = paper_params();
        let sys = paper_system();
        let j = sys.toric_jacobian();
        let expect = Laurent::from_terms(
            2,
            [
                (vec![1, 1], rf("-a2*b1", &p)),
                (vec![1, 3], rf("-a2*b2", &p)),
                (vec![2, 2], rf("2*a1*b2", &p)),
                (vec![2, 3], rf("-2*a2*b3", &p)),
                (vec![3, 2], rf("2*(a1*b3 - a3*b1)", &p)),
                (vec![3, 4], rf("2*a3*b2", &p)),
            ],
        );
        assert_eq!(j, expect);
    }

    #[test]
    fn toric_jacobian_univariate_and_diagonal() {
        // n = 1, f = t^2 - w: J = t d/dt f = 2 t^2.
        let pw = params(&["w"]);
        let f = Laurent::from_terms(
            1,
            [(vec![2], rf("1", &pw)), (vec![0], rf("-w", &pw))],
        );
        let sys = SparseSystem::new(vec![f]).unwrap();
        let j = sys.toric_jacobian();
        assert_eq!(j, Laurent::monomial(1, vec![2], rf("2", &pw)));

        // n = 2, f1 = x, f2 = y: J = xy.
        let f1: Laurent<Rational> = Laurent::monomial(2, vec![1, 0], rat_int(1));
        let f2: Laurent<Rational> = Laurent::monomial(2, vec![0, 1], rat_int(1));
        // x and y have degenerate Newton polytopes, so build the Jacobian
        // matrix by hand through log_derivative.
        let j11 = f1.log_derivative(0);
        let j12 = f1.log_derivative(1);
        let j21 = f2.log_derivative(0);
        let j22 = f2.log_derivative(1);
        let det = j11.mul(&j22).sub(&j12.mul(&j21));
        assert_eq!(det, Laurent::monomial(2, vec![1, 1], rat_int(1)));
    }

    #[test]
    fn jacobian_support_inside_minkowski_sum() {
        let sys = paper_system();
        let j = sys.toric_jacobian();
        for (e, _) in j.terms() {
            assert!(sys.delta().contains(e, false).unwrap());
        }
    }

    #[test]
    fn boundary_restriction_of_example_jacobian() {
        let sys = paper_system();
        let j = sys.toric_jacobian();
        let restricted = boundary_restrict(&j, sys.delta()).unwrap();
        // The x^2y^2 and x^2y^3 terms are interior and get dropped.
        assert_eq!(restricted.num_terms(), 4);
        assert!(restricted.coeff(&vec![2, 2]).is_none());
        assert!(restricted.coeff(&vec![2, 3]).is_none());
        assert!(restricted.coeff(&vec![1, 1]).is_some());
        // Idempotent, and the dropped part is interior-supported.
        let again = boundary_restrict(&restricted, sys.delta()).unwrap();
        assert_eq!(again, restricted);
        let dropped = j.sub(&restricted);
        for (e, _) in dropped.terms() {
            assert!(sys.delta().contains(e, true).unwrap());
        }
        assert_eq!(restricted.add(&dropped), j);
    }

    #[test]
    fn boundary_restriction_edge_cases() {
        let sys = paper_system();
        // Supported only on vertices: unchanged.
        let f: Laurent<RatFunc> = Laurent::from_terms(
            2,
            [
                (vec![2, 0], RatFunc::constant(rat_int(1))),
                (vec![4, 4], RatFunc::constant(rat_int(2))),
            ],
        );
        assert_eq!(boundary_restrict(&f, sys.delta()).unwrap(), f);
        // A single interior monomial restricts to zero.
        let g: Laurent<RatFunc> =
            Laurent::monomial(2, vec![2, 2], RatFunc::constant(rat_int(1)));
        assert!(boundary_restrict(&g, sys.delta()).unwrap().is_zero());
        // Outside the polytope: SupportError.
        let h: Laurent<RatFunc> =
            Laurent::monomial(2, vec![9, 0], RatFunc::constant(rat_int(1)));
        assert!(matches!(
            boundary_restrict(&h, sys.delta()),
            Err(LaurentError::Support(_))
        ));
    }

    #[test]
    fn evaluation() {
        let m: Laurent<Rational> = Laurent::monomial(2, vec![5, 4], rat_int(1));
        assert_eq!(m.eval_rational(&[rat_int(1), rat_int(1)]).unwrap(), rat_int(1));

        let f: Laurent<Rational> = Laurent::monomial(1, vec![2], rat_int(2));
        assert_eq!(f.eval_rational(&[rat_int(-2)]).unwrap(), rat_int(8));

        // f1 with all parameters 1, evaluated at (1,1): 3.
        let sys = paper_system();
        let mut asn = BTreeMap::new();
        for name in ["a1", "a2", "a3", "b1", "b2", "b3"] {
            asn.insert(name.to_string(), rat_int(1));
        }
        let f1 = sys.polys()[0].substitute_params(&asn).unwrap();
        assert_eq!(f1.eval_rational(&[rat_int(1), rat_int(1)]).unwrap(), rat_int(3));

        // Negative exponents need nonzero coordinates.
        let inv: Laurent<Rational> = Laurent::monomial(1, vec![-2], rat_int(1));
        assert_eq!(inv.eval_rational(&[rat(1, 2)]).unwrap(), rat_int(4));
        assert!(matches!(
            inv.eval_rational(&[rat_int(0)]),
            Err(LaurentError::TorusDomain(0))
        ));
    }

    #[test]
    fn substitution_drops_vanishing_terms_and_detects_poles() {
        let p = paper_params();
        let f = Laurent::from_terms(
            2,
            [(vec![1, 0], rf("a1", &p)), (vec![0, 1], rf("a2", &p))],
        );
        let mut asn = BTreeMap::new();
        for name in ["a1", "a2", "a3", "b1", "b2", "b3"] {
            asn.insert(name.to_string(), rat_int(1));
        }
        asn.insert("a1".into(), rat_int(0));
        asn.insert("a2".into(), rat_int(5));
        let s = f.substitute_params(&asn).unwrap();
        assert_eq!(s, Laurent::monomial(2, vec![0, 1], rat_int(5)));

        // f2 at b1=1, b2=1, b3=2.
        let sys = paper_system();
        asn.insert("b3".into(), rat_int(2));
        let f2 = sys.polys()[1].substitute_params(&asn).unwrap();
        let expect = Laurent::from_terms(
            2,
            [
                (vec![1, 0], rat_int(1)),
                (vec![1, 2], rat_int(1)),
                (vec![2, 2], rat_int(2)),
            ],
        );
        assert_eq!(f2, expect);

        // A coefficient with a pole at the assignment.
        let pole = Laurent::monomial(
            2,
            vec![0, 0],
            RatFunc::new(
                parse_expr("1", &p).unwrap(),
                parse_expr("a1", &p).unwrap(),
            )
            .unwrap(),
        );
        assert!(matches!(
            pole.substitute_params(&asn),
            Err(LaurentError::Arith(ArithError::EvalPole))
        ));
    }

    #[test]
    fn system_constructor_validates() {
        let f: Laurent<Rational> = Laurent::monomial(2, vec![1, 0], rat_int(1));
        let g: Laurent<Rational> = Laurent::from_terms(
            2,
            [(vec![0, 0], rat_int(1)), (vec![1, 1], rat_int(1)), (vec![1, 0], rat_int(1)), (vec![0, 1], rat_int(1))],
        );
        // x has a degenerate Newton polytope.
        assert!(matches!(
            SparseSystem::new(vec![f, g.clone()]),
            Err(LaurentError::DegenerateNewton(1))
        ));
        assert!(matches!(
            SparseSystem::new(vec![g]),
            Err(LaurentError::NotSquare { .. })
        ));
    }
}
