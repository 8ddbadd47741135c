//! Facet-volume-scaled normals and the zonotope support function.
//!
//! For each facet Γ of a full-dimensional lattice polytope Δ let `u_Γ` be its
//! primitive outer normal and `V_Γ` the lattice (n-1)-volume of Γ measured in
//! the lattice induced on its own hyperplane. The Euclidean-volume-scaled
//! normal the support function wants is exactly `V_Γ · u_Γ`, because the
//! induced hyperplane lattice has covolume `|u_Γ|`. Sweeping Δ by a segment
//! `[0, v]` adds volume `1/2 Σ_Γ V_Γ |<u_Γ, v>|`.
//!
//! `V_Γ` is computed by projecting Γ along a coordinate axis `k` with
//! `u_Γ[k] ≠ 0`; the projection maps the hyperplane lattice onto a sublattice
//! of `Z^(n-1)` of index `|u_Γ[k]|`, so the lattice volume of Γ equals the
//! projected volume divided by `|u_Γ[k]|`.

use num_traits::Zero;

use super::{ExpVec, GeomError, LatticePolytope};
use crate::rational::{rat_int, Rational};

/// One generator per facet: `(primitive outer normal, lattice facet volume)`.
pub(crate) fn generators(p: &LatticePolytope) -> Result<Vec<(Vec<i64>, Rational)>, GeomError> {
    let facets = p.facets()?;
    let n = p.ambient_dim();
    let mut out = Vec::with_capacity(facets.len());
    for f in facets {
        let volume = if n == 1 {
            // Facets are points; their 0-dimensional volume is 1.
            Rational::from_integer(1.into())
        } else {
            let tight: Vec<ExpVec> = p
                .vertices()
                .iter()
                .filter(|v| f.eval(v) == 0)
                .cloned()
                .collect();
            let k = f
                .normal
                .iter()
                .position(|&c| c != 0)
                .expect("facet normal is nonzero");
            let projected: Vec<ExpVec> = tight
                .iter()
                .map(|v| {
                    v.iter()
                        .enumerate()
                        .filter(|(i, _)| *i != k)
                        .map(|(_, &c)| c)
                        .collect()
                })
                .collect();
            let proj_hull = LatticePolytope::convex_hull(&projected)?;
            let nvol = proj_hull.normalized_volume()?;
            let fact: i64 = (1..=(n as i64 - 1)).product();
            Rational::new(nvol.into(), (fact * f.normal[k].abs()).into())
        };
        out.push((f.normal.clone(), volume));
    }
    Ok(out)
}

/// The support function `h_Z(v) = Σ_Γ |<V_Γ u_Γ, v>|` of the zonotope built
/// from the volume-scaled facet normals of a polytope.
#[derive(Debug, Clone)]
pub struct ZonotopeSupport {
    generators: Vec<(Vec<i64>, Rational)>,
}

impl ZonotopeSupport {
    pub fn new(p: &LatticePolytope) -> Result<Self, GeomError> {
        Ok(ZonotopeSupport { generators: generators(p)? })
    }

    pub fn generators(&self) -> &[(Vec<i64>, Rational)] {
        &self.generators
    }

    pub fn eval(&self, v: &[Rational]) -> Rational {
        let mut total = Rational::zero();
        for (normal, vol) in &self.generators {
            let mut dot = Rational::zero();
            for (a, b) in normal.iter().zip(v) {
                dot += b * rat_int(*a);
            }
            if dot < Rational::zero() {
                dot = -dot;
            }
            total += dot * vol;
        }
        total
    }

    pub fn eval_lattice(&self, v: &ExpVec) -> Rational {
        let vr: Vec<Rational> = v.iter().map(|&c| rat_int(c)).collect();
        self.eval(&vr)
    }
}
