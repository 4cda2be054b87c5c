//! Integral approximation of sums `sum_{i=1}^{n} f(p_i)`.

use crate::counting::{next_pow2, PFraction};
use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_DEPTH: u32 = 48;

fn eval<T: Real, F: Fn(T) -> T>(f: &F, x: T) -> Result<T> {
    let y = f(x);
    if y.is_finite() {
        Ok(y)
    } else {
        Err(Error::NonFinite(format!("f({x:?}) = {y:?}")))
    }
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson<T, F>(f: &F, a: T, b: T, tol: T) -> Result<T>
where
    T: Real,
    F: Fn(T) -> T,
{
    if a == b {
        return Ok(T::zero());
    }
    let two = T::lit(2.0);
    let m = (a + b) / two;
    let (fa, fm, fb) = (eval(f, a)?, eval(f, m)?, eval(f, b)?);
    let whole = simpson(a, b, fa, fm, fb);
    refine(f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH)
}

fn simpson<T: Real>(a: T, b: T, fa: T, fm: T, fb: T) -> T {
    (b - a) / T::lit(6.0) * (fa + T::lit(4.0) * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn refine<T, F>(f: &F, a: T, b: T, fa: T, fm: T, fb: T, whole: T, tol: T, depth: u32) -> Result<T>
where
    T: Real,
    F: Fn(T) -> T,
{
    let two = T::lit(2.0);
    let m = (a + b) / two;
    let lm = (a + m) / two;
    let rm = (m + b) / two;
    let (flm, frm) = (eval(f, lm)?, eval(f, rm)?);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= T::lit(15.0) * tol {
        return Ok(left + right + delta / T::lit(15.0));
    }
    let half = tol / two;
    Ok(refine(f, a, m, fa, flm, fm, left, half, depth - 1)?
        + refine(f, m, b, fm, frm, fb, right, half, depth - 1)?)
}

/// Integrates over `[a, b]`, splitting panels at every breakpoint inside.
/// Endpoints of each panel are nudged inward so a piecewise `f` is sampled
/// on the branch that owns the open panel.
fn integrate_split<T, F>(f: &F, a: T, b: T, breakpoints: &[T], tol: T) -> Result<T>
where
    T: Real,
    F: Fn(T) -> T,
{
    if b <= a {
        return Ok(T::zero());
    }
    let mut cuts = vec![a];
    let mut inner: Vec<T> = breakpoints.iter().copied().filter(|&x| x > a && x < b).collect();
    inner.sort_by(|x, y| x.partial_cmp(y).unwrap());
    cuts.extend(inner);
    cuts.push(b);
    let mut total = T::zero();
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let shrink = (hi - lo) * T::epsilon() * T::lit(4.0);
        total = total + adaptive_simpson(f, lo + shrink, hi - shrink, tol)?;
    }
    Ok(total)
}

/// `2^ceil(lg n) * (int_{1/2}^{1} f + int_{1/2}^{p_n} f)`, the integral form of
/// `sum_{i=1}^{n} f(p_i)`; the two differ by `O(log n)`.
///
/// `breakpoints` are the discontinuities of `f`; every panel is integrated to
/// `1e-10` (or the float type's precision limit, whichever is larger).
pub fn trapezoid_sum<T, F>(f: F, breakpoints: &[T], n: usize) -> Result<T>
where
    T: Real,
    F: Fn(T) -> T,
{
    if n == 0 {
        return Err(Error::domain("trapezoid_sum needs n >= 1"));
    }
    let tol = T::lit(1e-10).max(T::epsilon() * T::lit(16.0));
    let half = T::lit(0.5);
    let pn = PFraction::<T>::of_len(n)?.value();
    let full = integrate_split(&f, half, T::one(), breakpoints, tol)?;
    let partial = integrate_split(&f, half, pn, breakpoints, tol)?;
    let scale = T::from_u64(next_pow2(n as u64)).unwrap();
    Ok(scale * (full + partial))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_integrates_polynomials() {
        let v = adaptive_simpson(&|x: f64| x * x * x - 2.0 * x, 0.0, 2.0, 1e-12).unwrap();
        assert!((v - 0.0).abs() < 1e-12);
        let v = adaptive_simpson(&|x: f64| 1.0 / x, 1.0, 2.0, 1e-12).unwrap();
        assert!((v - 2f64.ln()).abs() < 1e-11);
    }

    #[test]
    fn constant_function_matches_count() {
        for m in 1..12 {
            let n = 1usize << m;
            let v = trapezoid_sum(|_x: f64| 1.0, &[], n).unwrap();
            assert!((v - n as f64).abs() < 1e-6, "n={n} v={v}");
        }
    }

    #[test]
    fn non_finite_is_reported() {
        let err = trapezoid_sum(|x: f64| if x < 0.7 { f64::NAN } else { 1.0 }, &[], 16);
        assert!(matches!(err, Err(Error::NonFinite(_))));
    }

    #[test]
    fn split_panels_handle_jumps() {
        let step = |x: f64| if x <= 0.75 { 0.0 } else { 1.0 };
        let v = integrate_split(&step, 0.5, 1.0, &[0.75], 1e-12).unwrap();
        assert!((v - 0.25).abs() < 1e-12);
    }
}
