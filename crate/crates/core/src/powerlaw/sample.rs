use super::zeta::{hurwitz_zeta, zeta};
use crate::error::Result;
use rand::Rng;

/// Largest tabulated offset above `x_min`.
const TABLE_MAX: usize = 1 << 16;
/// Tabulation stops once the CCDF falls below this.
const TABLE_FLOOR: f64 = 1e-7;
/// The running ζ is re-anchored to a fresh evaluation this often.
const REANCHOR: usize = 1024;
/// Draws are capped here when the tail search would run off the integers.
const SUPPORT_CAP: u64 = 1 << 53;

/// Exact inverse-transform sampler for the discrete power law
/// `P(X = x) = x^{-α} / ζ(α, x_min)`, `x >= x_min`.
///
/// The CCDF is tabulated from `x_min` upward by accumulating point masses;
/// draws past the table fall back to a doubling and bisection search on
/// `ζ(α, x) / ζ(α, x_min)`.
#[derive(Debug, Clone)]
pub struct DiscretePowerLaw {
    alpha: f64,
    x_min: u64,
    z0: f64,
    /// `ccdf[k] = P(X >= x_min + k)`.
    ccdf: Vec<f64>,
}

impl DiscretePowerLaw {
    pub fn new(alpha: f64, x_min: u64) -> Result<Self> {
        let z0 = hurwitz_zeta(alpha, x_min)?;
        let mut ccdf = Vec::new();
        let mut z = z0;
        for k in 0..TABLE_MAX {
            let x = x_min + k as u64;
            if k > 0 && k % REANCHOR == 0 {
                z = zeta(alpha, x as f64);
            }
            let c = z / z0;
            ccdf.push(c);
            if c < TABLE_FLOOR {
                break;
            }
            z -= (x as f64).powf(-alpha);
        }
        Ok(Self {
            alpha,
            x_min,
            z0,
            ccdf,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn x_min(&self) -> u64 {
        self.x_min
    }

    /// `P(X >= x)`.
    pub fn ccdf(&self, x: u64) -> f64 {
        if x <= self.x_min {
            return 1.0;
        }
        match self.ccdf.get((x - self.x_min) as usize) {
            Some(&c) => c,
            None => zeta(self.alpha, x as f64) / self.z0,
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        // u in (0, 1]; X = max { x : P(X >= x) >= u }.
        let u = 1.0 - rng.random::<f64>();
        let k = self.ccdf.partition_point(|&c| c >= u);
        if k < self.ccdf.len() {
            return self.x_min + k as u64 - 1;
        }
        self.search_tail(u)
    }

    fn search_tail(&self, u: f64) -> u64 {
        let mut lo = self.x_min + self.ccdf.len() as u64 - 1;
        let mut hi = lo.saturating_mul(2).max(lo + 1);
        while self.ccdf(hi) >= u {
            if hi >= SUPPORT_CAP {
                return SUPPORT_CAP;
            }
            lo = hi;
            hi = hi.saturating_mul(2).min(SUPPORT_CAP);
        }
        // ccdf(lo) >= u > ccdf(hi)
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.ccdf(mid) >= u {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }
}

/// `count` draws from the discrete power law.
pub fn sample_powerlaw<R: Rng + ?Sized>(
    alpha: f64,
    x_min: u64,
    count: usize,
    rng: &mut R,
) -> Result<Vec<u64>> {
    let law = DiscretePowerLaw::new(alpha, x_min)?;
    Ok((0..count).map(|_| law.sample(rng)).collect())
}
