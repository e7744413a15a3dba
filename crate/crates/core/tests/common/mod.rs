//! Shared oracle helpers for the integration tests.
//!
//! The closed forms in the library are validated against *different*
//! numerics than the ones the library uses internally (Gauss–Legendre):
//! an adaptive Simpson rule with Richardson extrapolation, so a shared
//! bug in node placement or weight generation cannot hide.

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute accuracy
/// `tol`, with the standard |S_left + S_right − S_whole|/15 error gauge.
#[allow(dead_code)]
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        ((b - a) / 6.0 * (fa + 4.0 * fm + fb), m, fm)
    }

    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        fa: f64,
        m: f64,
        fm: f64,
        b: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (left, lm, flm) = simpson(f, a, fa, m, fm);
        let (right, rm, frm) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1)
            + recurse(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1)
    }

    let fa = f(a);
    let fb = f(b);
    let (whole, m, fm) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, m, fm, b, fb, whole, tol, 48)
}

#[allow(dead_code)]
pub fn assert_close(label: &str, got: f64, want: f64, rel_tol: f64) {
    let scale = want.abs().max(f64::MIN_POSITIVE);
    let rel = (got - want).abs() / scale;
    assert!(
        rel <= rel_tol,
        "{label}: got {got:.17e}, oracle {want:.17e}, relative gap {rel:.3e} > {rel_tol:.1e}"
    );
}
