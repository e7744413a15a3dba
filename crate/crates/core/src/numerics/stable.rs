//! Series-stabilized elementary expressions that cancel catastrophically
//! when evaluated directly at small arguments.

/// x - ln(1+x) for x >= 0. Direct evaluation loses all digits as x -> 0;
/// the alternating series Σ_{k>=2} (-1)^k x^k/k converges fast for x < 1/2.
pub fn x_minus_ln1p(x: f64) -> f64 {
    if x >= 0.5 {
        return x - x.ln_1p();
    }
    let mut sum = 0.0;
    let mut term = x; // x^{k-1} carrier
    let mut k = 2.0;
    loop {
        term *= -x;
        let contrib = -term / k;
        sum += contrib;
        if contrib.abs() <= f64::EPSILON * sum.abs() || k > 200.0 {
            break;
        }
        k += 1.0;
    }
    sum
}

/// ln(1+x) - x/(1+x) for x >= 0, the same cancellation pattern;
/// series Σ_{k>=2} (-1)^k (k-1)/k x^k for small x.
pub fn ln1p_minus_ratio(x: f64) -> f64 {
    if x >= 0.5 {
        return x.ln_1p() - x / (1.0 + x);
    }
    let mut sum = 0.0;
    let mut pow = x;
    let mut k = 2.0;
    let mut sign = 1.0;
    loop {
        pow *= x;
        let contrib = sign * (k - 1.0) / k * pow;
        sum += contrib;
        if contrib.abs() <= f64::EPSILON * sum.abs() || k > 200.0 {
            break;
        }
        sign = -sign;
        k += 1.0;
    }
    sum
}

/// x² - 2(x - ln(1+x)) for x >= 0; leading behavior (2/3)x³, so the direct
/// form cancels twice over. Series 2·Σ_{k>=3} (-1)^{k+1} x^k/k.
pub fn sq_minus_twice_log_defect(x: f64) -> f64 {
    if x >= 0.5 {
        return x * x - 2.0 * x_minus_ln1p(x);
    }
    let mut sum = 0.0;
    let mut pow = x * x;
    let mut k = 3.0;
    let mut sign = 1.0;
    loop {
        pow *= x;
        let contrib = sign * 2.0 * pow / k;
        sum += contrib;
        if contrib.abs() <= f64::EPSILON * sum.abs() || k > 200.0 {
            break;
        }
        sign = -sign;
        k += 1.0;
    }
    sum
}

/// Inverse hyperbolic tangent for |x| < 1, written through ln_1p so the
/// small-argument regime keeps full precision.
pub fn artanh(x: f64) -> f64 {
    0.5 * (2.0 * x / (1.0 - x)).ln_1p()
}
