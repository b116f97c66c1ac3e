//! Scalar optimization helpers, used to cross-check closed-form optima
//! numerically (optimal squeezing, optimal local-squeezing gain).

#[allow(unused_imports)]
use num_traits::Float;

/// Golden-section minimization of a unimodal function on `[lo, hi]`.
/// Runs a fixed number of interval reductions (each shrinks the bracket by
/// the golden ratio, so 100 iterations narrow 1e6 down to ~1e-15) and
/// returns the bracket midpoint with its function value.
pub fn golden_section_min<F>(f: F, mut lo: f64, mut hi: f64, iters: usize) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    debug_assert!(lo < hi);
    let phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - phi * (hi - lo);
    let mut d = lo + phi * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..iters {
        if fc <= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + phi * (hi - lo);
            fd = f(d);
        }
    }
    let x = 0.5 * (lo + hi);
    let fx = f(x);
    (x, fx)
}

/// Golden-section maximization; see [`golden_section_min`].
pub fn golden_section_max<F>(f: F, lo: f64, hi: f64, iters: usize) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let (x, neg) = golden_section_min(|x| -f(x), lo, hi, iters);
    (x, -neg)
}
