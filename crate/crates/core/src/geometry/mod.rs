//! Lattice polytopes in `Z^n`: hulls with exact facet descriptions, Minkowski
//! sums, lattice-point enumeration, normalized volumes and mixed volumes.

mod hull;
mod zonotope;

pub use zonotope::ZonotopeSupport;

use thiserror::Error;

use crate::rational::Rational;
use hull::HullData;

/// A lattice point, used both as a monomial exponent and a polytope vertex.
pub type ExpVec = Vec<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("convex hull of an empty point set")]
    EmptyHull,
    #[error("dimension error: {0}")]
    Dimension(String),
}

/// Facet inequality `<normal, x> <= offset` with primitive integer normal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Facet {
    pub fn eval(&self, z: &ExpVec) -> i128 {
        self.normal
            .iter()
            .zip(z)
            .map(|(a, b)| *a as i128 * *b as i128)
            .sum::<i128>()
            - self.offset as i128
    }
}

/// Convex hull of lattice points with cached facet description.
///
/// `facets` is present exactly when the polytope is full-dimensional in its
/// ambient space; lower-dimensional polytopes are representable but rejected
/// by the volume and interior-point operations.
#[derive(Debug, Clone)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<ExpVec>,
    facets: Option<Vec<Facet>>,
    tri: Option<Vec<Vec<ExpVec>>>,
    affine_dim: usize,
}

impl PartialEq for LatticePolytope {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}

impl Eq for LatticePolytope {}

impl LatticePolytope {
    /// Convex hull of a nonempty uniform-dimension point set.
    pub fn convex_hull(points: &[ExpVec]) -> Result<Self, GeomError> {
        let HullData { vertices, facets, tri, affine_dim } = hull::hull(points)?;
        let dim = vertices[0].len();
        Ok(LatticePolytope { dim, vertices, facets, tri, affine_dim })
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn is_full_dim(&self) -> bool {
        self.affine_dim == self.dim
    }

    /// Minimal vertex list, lexicographically sorted.
    pub fn vertices(&self) -> &[ExpVec] {
        &self.vertices
    }

    pub fn facets(&self) -> Result<&[Facet], GeomError> {
        self.facets
            .as_deref()
            .ok_or_else(|| GeomError::Dimension("degenerate polytope has no facet description".into()))
    }

    fn tri(&self) -> Result<&[Vec<ExpVec>], GeomError> {
        self.tri
            .as_deref()
            .ok_or_else(|| GeomError::Dimension("degenerate polytope has no triangulation".into()))
    }

    /// Minkowski sum; the hull of pairwise vertex sums.
    pub fn minkowski(&self, other: &LatticePolytope) -> Result<LatticePolytope, GeomError> {
        if self.dim != other.dim {
            return Err(GeomError::Dimension(format!(
                "Minkowski sum of ambient dimensions {} and {}",
                self.dim, other.dim
            )));
        }
        let mut sums = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                sums.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        LatticePolytope::convex_hull(&sums)
    }

    /// Membership via the facet inequalities. Requires a full-dimensional
    /// polytope.
    pub fn contains(&self, z: &ExpVec, strict: bool) -> Result<bool, GeomError> {
        let facets = self.facets()?;
        Ok(facets.iter().all(|f| {
            let v = f.eval(z);
            if strict {
                v < 0
            } else {
                v <= 0
            }
        }))
    }

    pub fn bounding_box(&self) -> (ExpVec, ExpVec) {
        let mut lo = self.vertices[0].clone();
        let mut hi = self.vertices[0].clone();
        for v in &self.vertices {
            for k in 0..self.dim {
                lo[k] = lo[k].min(v[k]);
                hi[k] = hi[k].max(v[k]);
            }
        }
        (lo, hi)
    }

    /// Strictly interior lattice points, in ascending lexicographic order.
    pub fn interior_lattice_points(&self) -> Result<Vec<ExpVec>, GeomError> {
        self.lattice_points_impl(true)
    }

    /// All lattice points of the polytope, in ascending lexicographic order.
    pub fn lattice_points(&self) -> Result<Vec<ExpVec>, GeomError> {
        self.lattice_points_impl(false)
    }

    fn lattice_points_impl(&self, strict: bool) -> Result<Vec<ExpVec>, GeomError> {
        let facets = self.facets()?;
        let (lo, hi) = self.bounding_box();
        let mut out = Vec::new();
        let mut cur = lo.clone();
        'scan: loop {
            let inside = facets.iter().all(|f| {
                let v = f.eval(&cur);
                if strict {
                    v < 0
                } else {
                    v <= 0
                }
            });
            if inside {
                out.push(cur.clone());
            }
            // Odometer increment, last coordinate fastest: lexicographic output.
            for k in (0..self.dim).rev() {
                if cur[k] < hi[k] {
                    cur[k] += 1;
                    continue 'scan;
                }
                cur[k] = lo[k];
            }
            break;
        }
        Ok(out)
    }

    /// `n! * Vol_n`, an exact non-negative integer; requires full dimension.
    pub fn normalized_volume(&self) -> Result<i64, GeomError> {
        let tri = self.tri()?;
        let apex = &self.vertices[0];
        let mut total: i128 = 0;
        for simplex in tri {
            let rows: Vec<Vec<i128>> = simplex
                .iter()
                .map(|w| w.iter().zip(apex).map(|(a, b)| *a as i128 - *b as i128).collect())
                .collect();
            total += hull::det(&rows).abs();
        }
        Ok(i64::try_from(total).expect("normalized volume out of i64 range"))
    }

    pub fn translate(&self, v: &ExpVec) -> LatticePolytope {
        assert_eq!(v.len(), self.dim);
        let shift = |p: &ExpVec| -> ExpVec { p.iter().zip(v).map(|(a, b)| a + b).collect() };
        LatticePolytope {
            dim: self.dim,
            vertices: self.vertices.iter().map(&shift).collect(),
            facets: self.facets.as_ref().map(|fs| {
                fs.iter()
                    .map(|f| {
                        let delta: i128 = f
                            .normal
                            .iter()
                            .zip(v)
                            .map(|(a, b)| *a as i128 * *b as i128)
                            .sum();
                        Facet {
                            normal: f.normal.clone(),
                            offset: i64::try_from(f.offset as i128 + delta)
                                .expect("offset out of range"),
                        }
                    })
                    .collect()
            }),
            tri: self
                .tri
                .as_ref()
                .map(|t| t.iter().map(|s| s.iter().map(&shift).collect()).collect()),
            affine_dim: self.affine_dim,
        }
    }

    /// Dilation by an integer factor `k >= 1`.
    pub fn dilate(&self, k: i64) -> LatticePolytope {
        assert!(k >= 1, "dilation factor must be >= 1");
        let scale = |p: &ExpVec| -> ExpVec { p.iter().map(|a| a * k).collect() };
        LatticePolytope {
            dim: self.dim,
            vertices: self.vertices.iter().map(&scale).collect(),
            facets: self.facets.as_ref().map(|fs| {
                fs.iter()
                    .map(|f| Facet { normal: f.normal.clone(), offset: f.offset * k })
                    .collect()
            }),
            tri: self
                .tri
                .as_ref()
                .map(|t| t.iter().map(|s| s.iter().map(&scale).collect()).collect()),
            affine_dim: self.affine_dim,
        }
    }

    /// Zonotope generators: one `(primitive outer normal, lattice facet
    /// volume)` pair per facet. The vector `volume * normal` plays the role
    /// of the volume-scaled outer normal.
    pub fn zonotope_generators(&self) -> Result<Vec<(Vec<i64>, Rational)>, GeomError> {
        zonotope::generators(self)
    }
}

/// Normalized mixed volume `n! V(P_1, ..., P_n)` of `n` full-dimensional
/// polytopes in dimension `n`, by inclusion-exclusion over subset sums.
pub fn mixed_volume(polys: &[LatticePolytope]) -> Result<i64, GeomError> {
    if polys.is_empty() {
        return Err(GeomError::Dimension("mixed volume of an empty collection".into()));
    }
    let n = polys[0].ambient_dim();
    if polys.len() != n {
        return Err(GeomError::Dimension(format!(
            "mixed volume needs {n} polytopes in dimension {n}, got {}",
            polys.len()
        )));
    }
    for p in polys {
        if p.ambient_dim() != n {
            return Err(GeomError::Dimension("mixed ambient dimensions".into()));
        }
        if !p.is_full_dim() {
            return Err(GeomError::Dimension("mixed volume of a degenerate polytope".into()));
        }
    }
    mixed_volume_lenient(polys)
}

/// Inclusion-exclusion mixed volume that tolerates lower-dimensional members
/// (their own volumes are zero). Used by the oracle where e.g. `x - 1`
/// legitimately has a segment as Newton polytope.
pub(crate) fn mixed_volume_lenient(polys: &[LatticePolytope]) -> Result<i64, GeomError> {
    let n = polys.len();
    let mut subset_sum: Vec<Option<LatticePolytope>> = vec![None; 1 << n];
    let mut total: i128 = 0;
    for mask in 1usize..(1 << n) {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let sum = if rest == 0 {
            polys[low].clone()
        } else {
            subset_sum[rest]
                .as_ref()
                .expect("smaller mask computed first")
                .minkowski(&polys[low])?
        };
        let vol = if sum.is_full_dim() {
            sum.normalized_volume()? as i128
        } else {
            0
        };
        let sign = if (n - mask.count_ones() as usize) % 2 == 0 { 1 } else { -1 };
        total += sign * vol;
        subset_sum[mask] = Some(sum);
    }
    let fact: i128 = (1..=n as i128).product();
    debug_assert_eq!(total % fact, 0, "inclusion-exclusion sum not divisible by n!");
    Ok(i64::try_from(total / fact).expect("mixed volume out of i64 range"))
}

/// `conv{0, e_1, ..., e_(n-1), m e_n}`: the simplex family whose mixed
/// volumes and interior point counts are known in closed form.
pub fn gamma_simplex(n: usize, m: i64) -> LatticePolytope {
    let mut pts: Vec<ExpVec> = vec![vec![0; n]];
    for i in 0..n - 1 {
        let mut e = vec![0; n];
        e[i] = 1;
        pts.push(e);
    }
    let mut last = vec![0; n];
    last[n - 1] = m;
    pts.push(last);
    LatticePolytope::convex_hull(&pts).expect("nonempty")
}

/// `conv{±e_1, ..., ±e_n}`: the smallest standard polytope with the origin
/// strictly interior.
pub fn unit_cross_polytope(n: usize) -> LatticePolytope {
    let mut pts = Vec::with_capacity(2 * n);
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = 1;
        pts.push(e.clone());
        e[i] = -1;
        pts.push(e);
    }
    LatticePolytope::convex_hull(&pts).expect("nonempty")
}
