//! Exact incremental convex hull for small dimensions (n ≤ 4 at desk scale).
//!
//! Works entirely in integer arithmetic (`i128` internally). The boundary is
//! maintained as simplicial facets; coplanar splits are allowed and merged
//! into geometric facets afterwards, and the simplicial list is kept as a
//! triangulation source for volume computation. Lower-dimensional point sets
//! are detected exactly and their extreme points recovered by recursing in
//! affine coordinates.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{ExpVec, Facet, GeomError};
use crate::rational::Rational;

#[derive(Debug, Clone)]
pub(crate) struct HullData {
    pub vertices: Vec<ExpVec>,
    pub facets: Option<Vec<Facet>>,
    /// Simplicial boundary facets by coordinates; triangulation source.
    pub tri: Option<Vec<Vec<ExpVec>>>,
    pub affine_dim: usize,
}

pub(crate) fn hull(points: &[ExpVec]) -> Result<HullData, GeomError> {
    if points.is_empty() {
        return Err(GeomError::EmptyHull);
    }
    let n = points[0].len();
    if points.iter().any(|p| p.len() != n) {
        return Err(GeomError::Dimension("points of mixed dimension".into()));
    }
    let mut pts: Vec<ExpVec> = points.to_vec();
    pts.sort();
    pts.dedup();

    if pts.len() == 1 {
        return Ok(HullData { vertices: pts, facets: None, tri: None, affine_dim: 0 });
    }

    // Greedy affinely independent subset starting at pts[0].
    let mut indep: Vec<usize> = vec![0];
    let mut dirs: Vec<Vec<i128>> = Vec::new();
    for i in 1..pts.len() {
        if dirs.len() == n {
            break;
        }
        let d: Vec<i128> = diff(&pts[i], &pts[0]);
        let mut trial = dirs.clone();
        trial.push(d.clone());
        if rank(trial) == dirs.len() + 1 {
            dirs.push(d);
            indep.push(i);
        }
    }
    let affine_dim = dirs.len();

    if affine_dim < n {
        return degenerate_hull(pts, indep, affine_dim);
    }
    full_dim_hull(pts, indep)
}

fn diff(a: &ExpVec, b: &ExpVec) -> Vec<i128> {
    a.iter().zip(b).map(|(x, y)| *x as i128 - *y as i128).collect()
}

fn dot(a: &[i128], b: &ExpVec) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * *y as i128).sum()
}

fn dot_i128(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Rank of an integer matrix by fraction-free elimination.
fn rank(mut rows: Vec<Vec<i128>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pivot);
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let (a, b) = (rows[r][c], rows[i][c]);
                for j in 0..cols {
                    rows[i][j] = rows[i][j] * a - rows[r][j] * b;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Determinant by cofactor expansion; matrices here are at most 4x4.
pub(crate) fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        k => {
            let mut total = 0i128;
            for j in 0..k {
                if m[0][j] == 0 {
                    continue;
                }
                let minor: Vec<Vec<i128>> = (1..k)
                    .map(|i| (0..k).filter(|&c| c != j).map(|c| m[i][c]).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                total += s * m[0][j] * det(&minor);
            }
            total
        }
    }
}

/// Generalized cross product: the integer normal of the hyperplane spanned
/// by `verts[1..] - verts[0]`. Zero vector iff the points are affinely
/// dependent.
fn hyperplane_normal(pts: &[ExpVec], verts: &[usize]) -> Vec<i128> {
    let n = pts[verts[0]].len();
    let span: Vec<Vec<i128>> = verts[1..]
        .iter()
        .map(|&v| diff(&pts[v], &pts[verts[0]]))
        .collect();
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> = span
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * det(&minor)
        })
        .collect()
}

#[derive(Debug, Clone)]
struct SimpFacet {
    verts: Vec<usize>,
    normal: Vec<i128>,
    offset: i128,
    alive: bool,
}

fn full_dim_hull(pts: Vec<ExpVec>, indep: Vec<usize>) -> Result<HullData, GeomError> {
    let n = pts[0].len();
    // Strictly interior rational reference point, scaled by (n+1) to stay
    // integral: the barycenter-sum of the initial simplex.
    let mut inside_ref = vec![0i128; n];
    for &i in &indep {
        for (k, c) in pts[i].iter().enumerate() {
            inside_ref[k] += *c as i128;
        }
    }
    let scale = (n + 1) as i128;

    let mut facets: Vec<SimpFacet> = Vec::new();
    for skip in 0..indep.len() {
        let verts: Vec<usize> = indep
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != skip)
            .map(|(_, &v)| v)
            .collect();
        let mut normal = hyperplane_normal(&pts, &verts);
        let mut offset = dot(&normal, &pts[verts[0]]);
        let side = dot(&normal, &pts[indep[skip]]);
        debug_assert!(side != offset, "initial simplex degenerate");
        if side > offset {
            normal.iter_mut().for_each(|c| *c = -*c);
            offset = -offset;
        }
        facets.push(SimpFacet { verts, normal, offset, alive: true });
    }

    let in_simplex: Vec<bool> = {
        let mut v = vec![false; pts.len()];
        for &i in &indep {
            v[i] = true;
        }
        v
    };

    for p in 0..pts.len() {
        if in_simplex[p] {
            continue;
        }
        let visible: Vec<usize> = facets
            .iter()
            .enumerate()
            .filter(|(_, f)| f.alive && dot(&f.normal, &pts[p]) > f.offset)
            .map(|(i, _)| i)
            .collect();
        if visible.is_empty() {
            continue;
        }
        // Ridge -> incident alive facets.
        let mut ridges: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (fi, f) in facets.iter().enumerate() {
            if !f.alive {
                continue;
            }
            for skip in 0..f.verts.len() {
                let mut r: Vec<usize> = f
                    .verts
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != skip)
                    .map(|(_, &v)| v)
                    .collect();
                r.sort_unstable();
                ridges.entry(r).or_default().push(fi);
            }
        }
        let is_visible = |fi: usize| visible.contains(&fi);
        let mut new_facets: Vec<SimpFacet> = Vec::new();
        for (ridge, incident) in &ridges {
            debug_assert_eq!(incident.len(), 2, "ridge not shared by exactly two facets");
            let vis_count = incident.iter().filter(|&&fi| is_visible(fi)).count();
            if vis_count != 1 {
                continue; // interior ridge of the visible region, or fully hidden
            }
            // Horizon ridge: build the cone facet to p.
            let mut verts = ridge.clone();
            verts.push(p);
            let mut normal = hyperplane_normal(&pts, &verts);
            debug_assert!(normal.iter().any(|&c| c != 0), "degenerate horizon facet");
            let mut offset = dot(&normal, &pts[verts[0]]);
            let side = scale * offset - dot_i128(&normal, &inside_ref);
            debug_assert!(side != 0, "reference point on facet hyperplane");
            if side < 0 {
                normal.iter_mut().for_each(|c| *c = -*c);
                offset = -offset;
            }
            new_facets.push(SimpFacet { verts, normal, offset, alive: true });
        }
        for fi in visible {
            facets[fi].alive = false;
        }
        facets.extend(new_facets);
    }

    // Merge coplanar simplicial facets into geometric facets.
    let mut geo: BTreeMap<(Vec<i64>, i64), ()> = BTreeMap::new();
    for f in facets.iter().filter(|f| f.alive) {
        let (nrm, off) = primitive(&f.normal, f.offset);
        geo.insert((nrm, off), ());
    }
    let geo_facets: Vec<Facet> = geo
        .keys()
        .map(|(normal, offset)| Facet { normal: normal.clone(), offset: *offset })
        .collect();

    // A hull point is a vertex iff its tight facet normals span R^n.
    let mut on_boundary: Vec<usize> = facets
        .iter()
        .filter(|f| f.alive)
        .flat_map(|f| f.verts.iter().copied())
        .collect();
    on_boundary.sort_unstable();
    on_boundary.dedup();
    let mut vertices: Vec<ExpVec> = Vec::new();
    for &p in &on_boundary {
        let active: Vec<Vec<i128>> = geo_facets
            .iter()
            .filter(|f| {
                f.normal
                    .iter()
                    .zip(&pts[p])
                    .map(|(a, b)| *a as i128 * *b as i128)
                    .sum::<i128>()
                    == f.offset as i128
            })
            .map(|f| f.normal.iter().map(|&c| c as i128).collect())
            .collect();
        if rank(active) == n {
            vertices.push(pts[p].clone());
        }
    }
    vertices.sort();

    let tri: Vec<Vec<ExpVec>> = facets
        .iter()
        .filter(|f| f.alive)
        .map(|f| f.verts.iter().map(|&v| pts[v].clone()).collect())
        .collect();

    Ok(HullData { vertices, facets: Some(geo_facets), tri: Some(tri), affine_dim: n })
}

fn primitive(normal: &[i128], offset: i128) -> (Vec<i64>, i64) {
    let mut g: i128 = 0;
    for &c in normal {
        g = gcd_i128(g, c.abs());
    }
    debug_assert!(g > 0, "zero facet normal");
    let nrm: Vec<i64> = normal
        .iter()
        .map(|&c| i64::try_from(c / g).expect("facet normal out of i64 range"))
        .collect();
    let off = i64::try_from(offset / g).expect("facet offset out of i64 range");
    (nrm, off)
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd_i128(b, a % b)
    }
}

/// Extreme points of a lower-dimensional point set: map to exact rational
/// coordinates in an affine basis, clear denominators, and recurse.
fn degenerate_hull(
    pts: Vec<ExpVec>,
    indep: Vec<usize>,
    affine_dim: usize,
) -> Result<HullData, GeomError> {
    if affine_dim == 0 {
        // Distinct points always span; only a single point lands here.
        return Ok(HullData { vertices: pts, facets: None, tri: None, affine_dim: 0 });
    }
    let basis: Vec<Vec<i128>> = indep[1..]
        .iter()
        .map(|&i| diff(&pts[i], &pts[0]))
        .collect();
    let mut coords: Vec<Vec<Rational>> = Vec::with_capacity(pts.len());
    for p in &pts {
        let rhs = diff(p, &pts[0]);
        let lam = solve_in_span(&basis, &rhs);
        coords.push(lam);
    }
    // Clear denominators.
    let mut denom: num_bigint::BigInt = 1.into();
    for c in coords.iter().flatten() {
        denom = num_integer::lcm(denom, c.denom().clone());
    }
    let scaled: Vec<ExpVec> = coords
        .iter()
        .map(|lam| {
            lam.iter()
                .map(|c| {
                    let v = c * Rational::from_integer(denom.clone());
                    crate::rational::bigint_to_i64(v.numer())
                })
                .collect()
        })
        .collect();
    let inner = hull(&scaled)?;
    let keep: std::collections::BTreeSet<&ExpVec> = inner.vertices.iter().collect();
    let vertices: Vec<ExpVec> = pts
        .iter()
        .zip(&scaled)
        .filter(|(_, s)| keep.contains(s))
        .map(|(p, _)| p.clone())
        .collect();
    Ok(HullData { vertices, facets: None, tri: None, affine_dim })
}

/// Solves `sum lam_i basis_i = rhs` where `rhs` is known to lie in the span
/// of the linearly independent `basis`.
fn solve_in_span(basis: &[Vec<i128>], rhs: &[i128]) -> Vec<Rational> {
    let n = rhs.len();
    let d = basis.len();
    // Rows: n equations, columns: d unknowns, augmented with rhs.
    let mut m: Vec<Vec<Rational>> = (0..n)
        .map(|r| {
            let mut row: Vec<Rational> = (0..d)
                .map(|c| Rational::from_integer(basis[c][r].into()))
                .collect();
            row.push(Rational::from_integer(rhs[r].into()));
            row
        })
        .collect();
    let mut pivot_rows: Vec<usize> = Vec::new();
    let mut r0 = 0;
    for c in 0..d {
        let Some(pr) = (r0..n).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(r0, pr);
        let inv = m[r0][c].clone().recip();
        for x in m[r0].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != r0 && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for cc in 0..=d {
                    let delta = &m[r0][cc] * &f;
                    m[r][cc] -= delta;
                }
            }
        }
        pivot_rows.push(c);
        r0 += 1;
        if r0 == n {
            break;
        }
    }
    let mut lam = vec![Rational::zero(); d];
    for (row, &col) in pivot_rows.iter().enumerate() {
        lam[col] = m[row][d].clone();
    }
    lam
}
