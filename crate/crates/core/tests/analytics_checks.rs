//! Formula-side checks against direct sums and against the sorters.

use sortlab::analytics::{
    b_term, binary_total, c_constant, d_binary, d_fun, d_merge_branch, d_star, d_star_merge_branch, max_constant,
    total_formula, trapezoid_sum, FormulaCurve, SPLIT_HIGH, SPLIT_LOW, STAR_SPLIT, STAR_WINDOW, TWO_MERGE_WINDOW,
};
use sortlab::counting::{ceil_lg, PFraction};
use sortlab::oracles::{exact_sort_expectation, ExactCurve};
use sortlab::sorters::VariantPolicy;
use sortlab::{Algorithm, CombinationPolicy, Error, Rational, Scalar};

fn p_len(i: usize) -> f64 {
    PFraction::<f64>::of_len(i).unwrap().value()
}

#[test]
fn two_merge_branch_crosses_binary_at_window_ends() {
    let (lo, hi) = TWO_MERGE_WINDOW;
    for p in [lo, hi] {
        let gap = d_merge_branch(p).unwrap() - d_binary(p).unwrap();
        assert!(gap.abs() <= 2e-4, "p={p}: {gap}");
    }
    // strictly better inside, worse just outside
    assert!(d_merge_branch(0.75f64).unwrap() < d_binary(0.75f64).unwrap());
    assert!(d_merge_branch(0.53f64).unwrap() > d_binary(0.53f64).unwrap());
    assert!(d_merge_branch(0.95f64).unwrap() > d_binary(0.95f64).unwrap());
}

#[test]
fn star_branch_crosses_binary_at_window_ends() {
    let (lo, hi) = STAR_WINDOW;
    for p in [lo, hi] {
        let gap = d_star_merge_branch(p).unwrap() - d_binary(p).unwrap();
        assert!(gap.abs() <= 1e-9, "p={p}: {gap}");
    }
    for p in [0.6f64, 0.75, 0.85] {
        assert!(d_star(p).unwrap() <= d_fun(p).unwrap() + 1e-12, "p={p}");
    }
}

#[test]
fn binary_total_tracks_direct_sum() {
    for n in [1usize << 12, 3 << 10] {
        let terms: Vec<f64> = (1..=n).map(|i| ceil_lg(i as u64) as f64 + b_term::<f64>(i).unwrap()).collect();
        let direct = f64::sum_all(terms);
        let approx = binary_total::<f64>(n).unwrap().value;
        assert!((direct - approx).abs() <= 5.0 * (n as f64).log2(), "n={n}: {direct} vs {approx}");
    }
}

#[test]
fn trapezoid_sum_tracks_direct_sums() {
    // the quadrature touches the open end p = 1/2; use the one-sided limit
    let open = |p: f64| p.max(0.5 + f64::EPSILON);
    let d = |p: f64| d_fun(open(p)).unwrap();
    let ds = |p: f64| d_star(open(p)).unwrap();
    let d_breaks = [TWO_MERGE_WINDOW.0, SPLIT_LOW, SPLIT_HIGH, TWO_MERGE_WINDOW.1];
    let s_breaks = [STAR_WINDOW.0, STAR_SPLIT, STAR_WINDOW.1];
    let cases: [(&dyn Fn(f64) -> f64, &[f64], usize); 2] = [(&d, &d_breaks, 3 << 10), (&ds, &s_breaks, 1 << 12)];
    for (f, breaks, n) in cases {
        let direct = f64::sum_all((1..=n).map(|i| f(p_len(i))));
        let integral = trapezoid_sum(f, breaks, n).unwrap();
        let c = (direct - integral).abs() / (n as f64).log2();
        assert!(c <= 5.0, "n={n}: C = {c}");
    }
}

#[test]
fn grid_maximum_has_a_closed_form_everywhere_but_the_window() {
    let auto = Algorithm::Combination(CombinationPolicy::Auto);
    let curve = FormulaCurve::build(auto, 1 << 14).unwrap();
    let worst = max_constant(&curve, 1 << 14, 200).unwrap();
    assert!(!(0.638..=2.0 / 3.0).contains(&worst.p));
    assert!(matches!(c_constant::<f64>(Algorithm::MergeInsertion, 1000), Err(Error::NoClosedForm(_))));
}

#[test]
fn formula_totals_match_exhaustive_for_binary() {
    for n in [2usize, 4, 8] {
        let exact = exact_sort_expectation::<Rational>(Algorithm::Binary, n).unwrap().value;
        let formula = total_formula::<f64>(Algorithm::Binary, n).unwrap().value;
        assert!((num_traits::ToPrimitive::to_f64(&exact).unwrap() - formula).abs() < 1e-12, "n={n}");
    }
}

/// Where the combination is deployed it should never be materially worse than
/// (1,2)Insertion* alone.
#[test]
fn combination_not_worse_than_star_in_star_window() {
    let auto = Algorithm::Combination(CombinationPolicy::Auto);
    let curve = ExactCurve::build(VariantPolicy::OneTwoStar, 1 << 12).unwrap();
    let (lo, hi) = STAR_WINDOW;
    let mut checked = 0;
    for n in ((1 << 10)..=(1 << 12)).step_by(66) {
        let p = p_len(n);
        if n % 2 != 0 || p < lo || p > hi {
            continue;
        }
        let star = curve.sort_expectation(Algorithm::OneTwoStar, n).unwrap().value;
        let combo = curve.sort_expectation(auto, n).unwrap().value;
        assert!((combo - star) / n as f64 <= 0.001, "n={n}");
        checked += 1;
    }
    assert!(checked > 10);
}
