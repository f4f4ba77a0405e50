//! Hurwitz zeta `ζ(s, q) = Σ_{k>=0} (k + q)^{-s}` by direct summation up to a
//! shift point followed by an Euler-Maclaurin tail.

use crate::error::{Error, Result};

/// The direct sum runs until `q + N` reaches this value.
const SHIFT: f64 = 12.0;

/// `B_{2j} / (2j)!` for `j = 1..=8`.
const BERNOULLI_OVER_FACTORIAL: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
    -3_617.0 / 10_670_622_842_880_000.0,
];

/// Discrete power-law normalizer `Σ_{k>=0} (k + x_min)^{-alpha}`.
pub fn hurwitz_zeta(alpha: f64, x_min: u64) -> Result<f64> {
    if !(alpha > 1.0) || !alpha.is_finite() {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    if x_min == 0 {
        return Err(Error::InvalidConfig("x_min must be at least 1".into()));
    }
    Ok(zeta(alpha, x_min as f64))
}

/// Unchecked evaluation for `s > 1`, `q > 0`.
pub(crate) fn zeta(s: f64, q: f64) -> f64 {
    let mut head = 0.0;
    let mut a = q;
    while a < SHIFT {
        head += a.powf(-s);
        a += 1.0;
    }
    let a_pow = a.powf(-s);
    let mut tail = a * a_pow / (s - 1.0) + 0.5 * a_pow;
    // j-th correction: B_{2j}/(2j)! · s(s+1)...(s+2j-2) · a^{-s-2j+1}
    let inv_a2 = 1.0 / (a * a);
    let mut factor = s * a_pow / a;
    for (j, coeff) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        if j > 0 {
            let k = 2.0 * j as f64;
            factor *= (s + k - 1.0) * (s + k) * inv_a2;
        }
        tail += coeff * factor;
    }
    head + tail
}
