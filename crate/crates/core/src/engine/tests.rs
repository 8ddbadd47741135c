use super::*;
use crate::mpoly::{params, parse_expr, ParamList};
use crate::rational::rat_int;
use crate::ratfunc::RatFunc;
use num_traits::{One, Zero};

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

pub(crate) fn paper_delta0() -> LatticePolytope {
    LatticePolytope::convex_hull(&[vec![-1, 0], vec![0, -1], vec![2, 1]]).unwrap()
}

pub(crate) fn paper_g() -> Laurent<RatFunc> {
    Laurent::monomial(2, vec![5, 4], RatFunc::constant(rat_int(1)))
}

/// `f = t^d - w` over the single parameter `w`.
pub(crate) fn univariate_system(d: i64) -> SparseSystem<RatFunc> {
    let pw = params(&["w"]);
    let f = Laurent::from_terms(1, [(vec![d], rf("1", &pw)), (vec![0], rf("-w", &pw))]);
    SparseSystem::new(vec![f]).unwrap()
}

fn w_power(e: i64) -> RatFunc {
    let pw = params(&["w"]);
    if e >= 0 {
        rf(&format!("w^{e}"), &pw)
    } else {
        RatFunc::new(
            parse_expr("1", &pw).unwrap(),
            parse_expr(&format!("w^{}", -e), &pw).unwrap(),
        )
        .unwrap()
    }
}

#[test]
fn assemble_univariate_fixture() {
    // f = t^2 - w, g = t^4, Δ₀ = [-1, 3]: 5 rows (exponents 0..4), column
    // blocks 1 + 3 + 1.
    let sys = univariate_system(2);
    let g = Laurent::monomial(1, vec![4], RatFunc::constant(rat_int(1)));
    let d0 = LatticePolytope::convex_hull(&[vec![-1], vec![3]]).unwrap();
    let lin = assemble_system(&sys, &g, &d0, true).unwrap();
    assert_eq!(lin.nrows(), 5);
    assert_eq!(lin.rows, vec![vec![0], vec![1], vec![2], vec![3], vec![4]]);
    assert_eq!(lin.block_sizes(), vec![1, 3, 1]);
    assert_eq!(lin.ncols(), 5);
    // J = 2 t^2 touches only the boundary of [0,2], so restriction keeps it.
    assert_eq!(lin.jacobian_used.num_terms(), 1);
}

#[test]
fn solve_univariate_fixture_c_is_w_over_2() {
    let sys = univariate_system(2);
    let g = Laurent::monomial(1, vec![4], RatFunc::constant(rat_int(1)));
    let d0 = LatticePolytope::convex_hull(&[vec![-1], vec![3]]).unwrap();
    let lin = assemble_system(&sys, &g, &d0, true).unwrap();
    let sol = solve_for_c(&lin).unwrap();
    let pw = params(&["w"]);
    let expect = RatFunc::new(
        parse_expr("w", &pw).unwrap(),
        parse_expr("2", &pw).unwrap(),
    )
    .unwrap();
    assert!(sol.c.equiv(&expect));
    // Residue = c * mv = w.
    let res = global_residue(
        &sys,
        &g,
        &ResidueOptions { delta0: Some(d0), ..Default::default() },
    )
    .unwrap();
    assert!(res.residue.equiv(&rf("w", &pw)));
}

#[test]
fn assemble_paper_system_shape() {
    let sys = paper_system();
    let lin = assemble_system(&sys, &paper_g(), &paper_delta0(), true).unwrap();
    assert_eq!(lin.nrows(), 15);
    assert_eq!(lin.ncols(), 17);
    assert_eq!(lin.block_sizes(), vec![4, 6, 6, 1]);
    // Row basis in lexicographic order, as listed for the worked example.
    let expect_rows: Vec<ExpVec> = vec![
        vec![1, 1], vec![1, 2], vec![1, 3],
        vec![2, 0], vec![2, 1], vec![2, 2], vec![2, 3],
        vec![3, 1], vec![3, 2], vec![3, 3], vec![3, 4],
        vec![4, 2], vec![4, 3], vec![4, 4],
        vec![5, 4],
    ];
    assert_eq!(lin.rows, expect_rows);
    assert_eq!(
        lin.blocks[0],
        vec![vec![2, 1], vec![2, 2], vec![2, 3], vec![3, 3]]
    );
    assert_eq!(
        lin.blocks[1],
        vec![vec![1, 0], vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2], vec![3, 2]]
    );
    assert_eq!(
        lin.blocks[2],
        vec![vec![0, 1], vec![1, 0], vec![1, 1], vec![2, 1], vec![2, 2], vec![3, 2]]
    );
}

#[test]
fn assemble_paper_matrix_entries() {
    // Spot-check the printed matrix: h0 identity block, the x*f1 column and
    // the restricted Jacobian column.
    let p = paper_params();
    let sys = paper_system();
    let lin = assemble_system(&sys, &paper_g(), &paper_delta0(), true).unwrap();
    let row = |e: &[i64]| lin.rows.iter().position(|r| r == e).unwrap();

    // Column 0 is the basis monomial x^2 y of h_0.
    assert!(lin.mat[row(&[2, 1])][0].is_one());
    assert_eq!(lin.mat.iter().filter(|r| !r[0].is_zero()).count(), 1);

    // Column 4 is x * f1: entries a2 at xy, a1 at x^2, a3 at x^3 y^2.
    let col = 4;
    assert_eq!(lin.mat[row(&[1, 1])][col], rf("a2", &p));
    assert_eq!(lin.mat[row(&[2, 0])][col], rf("a1", &p));
    assert_eq!(lin.mat[row(&[3, 2])][col], rf("a3", &p));

    // The Jacobian column: four boundary terms, interior terms dropped.
    let c = lin.c_column();
    assert_eq!(lin.mat[row(&[1, 1])][c], rf("-a2*b1", &p));
    assert_eq!(lin.mat[row(&[1, 3])][c], rf("-a2*b2", &p));
    assert_eq!(lin.mat[row(&[3, 2])][c], rf("2*a1*b3 - 2*a3*b1", &p));
    assert_eq!(lin.mat[row(&[3, 4])][c], rf("2*a3*b2", &p));
    assert!(lin.mat[row(&[2, 2])][c].is_zero());
    assert!(lin.mat[row(&[2, 3])][c].is_zero());

    // Right-hand side: e_(5,4).
    assert!(lin.rhs[row(&[5, 4])].is_one());
    assert_eq!(lin.rhs.iter().filter(|v| !v.is_zero()).count(), 1);
}

#[test]
fn paper_residue_value() {
    let p = paper_params();
    let sys = paper_system();
    let res = global_residue(
        &sys,
        &paper_g(),
        &ResidueOptions { delta0: Some(paper_delta0()), ..Default::default() },
    )
    .unwrap();
    assert_eq!(res.mv, 4);
    let expect_c = RatFunc::new(
        parse_expr("a1^2*b2", &p).unwrap(),
        parse_expr("4*a3*(a1*b3 - a3*b1)^2", &p).unwrap(),
    )
    .unwrap();
    let expect_residue = RatFunc::new(
        parse_expr("a1^2*b2", &p).unwrap(),
        parse_expr("a3*(a1*b3 - a3*b1)^2", &p).unwrap(),
    )
    .unwrap();
    assert!(res.c.equiv(&expect_c), "c = {}", res.c);
    assert!(res.residue.equiv(&expect_residue), "residue = {}", res.residue);
}

#[test]
fn boundary_target_rejected() {
    let sys = paper_system();
    // (6,4) lies outside the validated interior for the worked Δ₀.
    let g = Laurent::monomial(2, vec![6, 4], RatFunc::constant(rat_int(1)));
    let err = assemble_system(&sys, &g, &paper_delta0(), true).unwrap_err();
    assert!(matches!(err, EngineError::Delta0Invalid(_)));
}

#[test]
fn zero_rhs_gives_zero_c() {
    let sys = univariate_system(2);
    let g = Laurent::zero(1);
    let d0 = LatticePolytope::convex_hull(&[vec![-1], vec![3]]).unwrap();
    let lin = assemble_system(&sys, &g, &d0, true).unwrap();
    let sol = solve_for_c(&lin).unwrap();
    assert!(sol.c.is_zero());
    let res = global_residue(&sys, &g, &ResidueOptions::default()).unwrap();
    assert!(res.residue.is_zero());
}

#[test]
fn univariate_closed_form_small() {
    // Engine residue of t^k for f = t^d - w equals w^(k/d - 1) when d | k,
    // else zero. The full sweep lives in the acceptance suite.
    for (d, k) in [(2i64, 4i64), (2, 3), (3, 3), (1, 0), (2, -2)] {
        let sys = univariate_system(d);
        let g = Laurent::monomial(1, vec![k], RatFunc::constant(rat_int(1)));
        let res = global_residue(&sys, &g, &ResidueOptions::default()).unwrap();
        if k % d == 0 {
            let expect = w_power(k / d - 1);
            assert!(res.residue.equiv(&expect), "d={d} k={k}: got {}", res.residue);
        } else {
            assert!(res.residue.is_zero(), "d={d} k={k}: got {}", res.residue);
        }
    }
}

#[test]
fn interior_monomial_residue_vanishes_symbolically() {
    // One instance of the vanishing theorem; the full basis sweep is in the
    // acceptance suite.
    let sys = paper_system();
    let g = Laurent::monomial(2, vec![2, 2], RatFunc::constant(rat_int(1)));
    let res = global_residue(&sys, &g, &ResidueOptions::default()).unwrap();
    assert!(res.residue.is_zero());
}

#[test]
fn delta0_independence_and_restriction_invariance_small() {
    let sys = univariate_system(2);
    let g = Laurent::monomial(1, vec![4], RatFunc::constant(rat_int(1)));
    let candidates = [
        LatticePolytope::convex_hull(&[vec![-1], vec![3]]).unwrap(),
        LatticePolytope::convex_hull(&[vec![-2], vec![4]]).unwrap(),
        LatticePolytope::convex_hull(&[vec![-1], vec![5]]).unwrap(),
    ];
    let mut values: Vec<RatFunc> = Vec::new();
    for d0 in candidates {
        for restrict in [true, false] {
            let res = global_residue(
                &sys,
                &g,
                &ResidueOptions {
                    delta0: Some(d0.clone()),
                    restrict_jacobian: restrict,
                    ..Default::default()
                },
            )
            .unwrap();
            values.push(res.residue);
        }
    }
    for v in &values[1..] {
        assert!(v.equiv(&values[0]));
    }
}

#[test]
fn per_monomial_mode_matches_whole_mode() {
    let pw = params(&["w"]);
    let sys = univariate_system(2);
    let g = Laurent::from_terms(
        1,
        [
            (vec![4], rf("3", &pw)),
            (vec![2], rf("-1", &pw)),
            (vec![1], rf("5", &pw)),
        ],
    );
    let per = global_residue(
        &sys,
        &g,
        &ResidueOptions { mode: Mode::PerMonomial, ..Default::default() },
    )
    .unwrap();
    let whole = global_residue(
        &sys,
        &g,
        &ResidueOptions { mode: Mode::WholePolytope, ..Default::default() },
    )
    .unwrap();
    assert!(per.residue.equiv(&whole.residue));
    // 3*w^1 - w^0 + 0.
    let expect = rf("3*w - 1", &pw);
    assert!(per.residue.equiv(&expect), "got {}", per.residue);
    assert_eq!(per.runs.len(), 3);
    assert_eq!(whole.runs.len(), 1);
}

#[test]
fn certificate_identity_holds() {
    let sys = paper_system();
    let res = global_residue(
        &sys,
        &paper_g(),
        &ResidueOptions { delta0: Some(paper_delta0()), ..Default::default() },
    )
    .unwrap();
    let run = &res.runs[0];
    let mut total = run.h[0].clone();
    for (hi, fi) in run.h[1..].iter().zip(sys.polys()) {
        total = total.add(&hi.mul(fi));
    }
    let jac = boundary_restrict(&sys.toric_jacobian(), sys.delta()).unwrap();
    total = total.add(&jac.scale(&run.c));
    assert_eq!(total, run.target);
    // h_0 is supported on the interior of Δ.
    let block0 = sys.delta().interior_lattice_points().unwrap();
    for (e, _) in run.h[0].terms() {
        assert!(block0.contains(e));
    }
}

#[test]
fn degenerate_system_detected() {
    // Identical polynomials make the toric Jacobian vanish identically, so c
    // is never pivoted and cannot be unique.
    let p = params(&["w"]);
    let f = Laurent::from_terms(
        2,
        [
            (vec![0, 0], rf("1", &p)),
            (vec![1, 0], rf("1", &p)),
            (vec![0, 1], rf("1", &p)),
            (vec![1, 1], rf("1", &p)),
        ],
    );
    let sys = SparseSystem::new(vec![f.clone(), f]).unwrap();
    assert!(sys.toric_jacobian().is_zero());
    let g = Laurent::monomial(2, vec![1, 1], RatFunc::constant(rat_int(1)));
    let err = global_residue(&sys, &g, &ResidueOptions::default()).unwrap_err();
    assert!(
        matches!(err, EngineError::DegenerateSystem | EngineError::NonGenericSystem),
        "got {err:?}"
    );
}

#[test]
fn linearity_on_univariate_fixture() {
    let pw = params(&["w"]);
    let sys = univariate_system(3);
    let g1 = Laurent::monomial(1, vec![3], RatFunc::constant(rat_int(1)));
    let g2 = Laurent::monomial(1, vec![6], RatFunc::constant(rat_int(1)));
    let alpha = rf("5", &pw);
    let beta = rf("-2/3", &pw);
    let combo = g1.scale(&alpha).add(&g2.scale(&beta));
    let r1 = global_residue(&sys, &g1, &ResidueOptions::default()).unwrap();
    let r2 = global_residue(&sys, &g2, &ResidueOptions::default()).unwrap();
    let rc = global_residue(&sys, &combo, &ResidueOptions::default()).unwrap();
    let expect = alpha * r1.residue + beta * r2.residue;
    assert!(rc.residue.equiv(&expect));
}
