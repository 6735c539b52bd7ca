//! Small numerical helpers shared across modules.

/// Signed power `|y|^{e-1} y` (odd extension of `y^e` to negative arguments).
///
/// Fractional powers of negative bases are undefined in ℝ; every place the
/// equations raise a possibly-negative quantity to a real exponent uses this
/// convention so the vector fields stay continuous through sign changes.
#[inline]
pub fn odd_pow(y: f64, e: f64) -> f64 {
    if y == 0.0 {
        0.0
    } else {
        y.signum() * y.abs().powf(e)
    }
}

/// `n` linearly spaced points over `[lo, hi]` (endpoints exact, `n >= 1`).
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 1);
    if n == 1 {
        return vec![lo];
    }
    let step = (hi - lo) / (n - 1) as f64;
    let mut v: Vec<f64> = (0..n).map(|i| lo + step * i as f64).collect();
    v[n - 1] = hi;
    v
}

/// `n` logarithmically spaced points over `[lo, hi]`, `lo, hi > 0`
/// (endpoints exact).
pub fn logspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > 0.0);
    let mut v: Vec<f64> = linspace(lo.ln(), hi.ln(), n)
        .into_iter()
        .map(f64::exp)
        .collect();
    v[0] = lo;
    if n > 1 {
        v[n - 1] = hi;
    }
    v
}

/// Relative difference `|a-b| / max(|a|, |b|, floor)`.
#[inline]
pub fn rel_diff(a: f64, b: f64, floor: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(floor)
}

/// Bracketed bisection followed by a Newton polish.
///
/// Requires `f(lo)` and `f(hi)` of opposite (non-strict) signs. Bisection
/// runs until the bracket is below `bisect_tol` relative width, then a few
/// Newton steps sharpen the root to machine precision; steps leaving the
/// bracket fall back to the bisection midpoint.
pub fn bisect_then_newton<F, G>(
    f: F,
    fprime: G,
    mut lo: f64,
    mut hi: f64,
    bisect_tol: f64,
) -> Option<f64>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if flo.signum() == fhi.signum() {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (hi - lo).abs() <= bisect_tol * mid.abs().max(1e-300) {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..6 {
        let fx = f(x);
        let dfx = fprime(x);
        if dfx == 0.0 || !dfx.is_finite() {
            break;
        }
        let step = fx / dfx;
        let next = x - step;
        if !next.is_finite() || next < lo.min(hi) || next > lo.max(hi) {
            break;
        }
        x = next;
        if step.abs() <= 1e-16 * x.abs().max(1e-300) {
            break;
        }
    }
    Some(x)
}

/// Least-squares line fit `y ≈ slope·x + intercept`; returns
/// `(slope, intercept, rms_residual)`.
pub fn line_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    assert!(n >= 2.0);
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let mut ss = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        let r = y - slope * x - intercept;
        ss += r * r;
    }
    (slope, intercept, (ss / n).sqrt())
}
