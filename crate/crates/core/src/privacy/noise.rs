//! Noise samplers: randomized response, Laplace and the heavy-tailed `Z_4`.

use std::f64::consts::{PI, SQRT_2};
use std::sync::OnceLock;

use rand::distributions::Open01;
use rand::Rng;

use crate::error::{Error, Result};

/// Probability that randomized response with budget `eps` outputs 1.
#[inline]
pub fn rr_one_probability(bit: bool, eps: f64) -> f64 {
    let keep = 1.0 / (1.0 + (-eps).exp());
    if bit {
        keep
    } else {
        1.0 - keep
    }
}

#[inline]
pub fn rr_flip<R: Rng + ?Sized>(bit: bool, eps: f64, rng: &mut R) -> bool {
    rng.gen::<f64>() < rr_one_probability(bit, eps)
}

/// One draw from Laplace(0, `scale`) by inversion.
pub fn laplace_sample<R: Rng + ?Sized>(scale: f64, rng: &mut R) -> f64 {
    let u: f64 = rng.sample::<f64, _>(Open01) - 0.5;
    -scale * u.signum() * (-2.0 * u.abs()).ln_1p()
}

const Z4_NORM: f64 = SQRT_2 / PI;
const TABLE_SIZE: usize = 4096;
const TAIL_SWITCH: f64 = 2.0;

/// Density of `Z_4`, proportional to `1 / (1 + z^4)`.
pub fn z4_density(z: f64) -> f64 {
    Z4_NORM / (1.0 + z.powi(4))
}

/// `P(Z_4 > z)` for `z >= 0`, mirrored for negative `z`.
pub fn z4_survival(z: f64) -> f64 {
    if z < 0.0 {
        return 1.0 - z4_survival(-z);
    }
    if z >= TAIL_SWITCH {
        // ∫_z^∞ dt/(1+t^4) = Σ (-1)^k z^{-(3+4k)} / (3+4k)
        let inv4 = z.powi(-4);
        let mut term = z.powi(-3);
        let mut sum = 0.0;
        for k in 0..40 {
            let contrib = term / (3 + 4 * k) as f64;
            sum += if k % 2 == 0 { contrib } else { -contrib };
            if contrib < 1e-18 * sum.abs() {
                break;
            }
            term *= inv4;
        }
        return Z4_NORM * sum;
    }
    let r = SQRT_2 * z;
    let g = (((z * z + r + 1.0) / (z * z - r + 1.0)).ln() + 2.0 * (r + 1.0).atan() + 2.0 * (r - 1.0).atan())
        / (4.0 * SQRT_2);
    0.5 - Z4_NORM * g
}

/// Inverse-CDF sampler for `Z_4` (unit variance).
#[derive(Debug, Clone)]
pub struct ZGamma4 {
    // quantiles[k] solves survival(z) = 0.5 * k / TABLE_SIZE; quantiles[0] = ∞
    quantiles: Vec<f64>,
}

impl ZGamma4 {
    fn build() -> Self {
        let mut quantiles = vec![f64::INFINITY; TABLE_SIZE + 1];
        quantiles[TABLE_SIZE] = 0.0;
        for k in (1..TABLE_SIZE).rev() {
            let v = 0.5 * k as f64 / TABLE_SIZE as f64;
            quantiles[k] = solve(v, quantiles[k + 1], f64::INFINITY);
        }
        ZGamma4 { quantiles }
    }

    pub fn shared() -> &'static ZGamma4 {
        static TABLE: OnceLock<ZGamma4> = OnceLock::new();
        TABLE.get_or_init(ZGamma4::build)
    }

    /// The `z >= 0` with `P(Z_4 > z) = v`, for `v` in `(0, 0.5]`.
    pub fn upper_quantile(&self, v: f64) -> f64 {
        let k = ((v / 0.5) * TABLE_SIZE as f64).floor() as usize;
        if k >= TABLE_SIZE {
            return 0.0;
        }
        solve(v, self.quantiles[k + 1], self.quantiles[k])
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = rng.sample(Open01);
        if u < 0.5 {
            -self.upper_quantile(u)
        } else {
            self.upper_quantile(1.0 - u)
        }
    }
}

/// Safeguarded Newton iteration for `survival(z) = v` within `[lo, hi]`.
fn solve(v: f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut z = if hi.is_finite() {
        0.5 * (lo + hi)
    } else {
        (Z4_NORM / (3.0 * v)).cbrt().max(lo)
    };
    for _ in 0..200 {
        let f = z4_survival(z) - v;
        if f > 0.0 {
            lo = z;
        } else {
            hi = z;
        }
        let mut next = z + f / z4_density(z);
        if !(next > lo && next < hi) {
            next = if hi.is_finite() { 0.5 * (lo + hi) } else { 2.0 * z.max(1.0) };
        }
        if (next - z).abs() <= 4e-15 * z.abs().max(1e-300) {
            return next;
        }
        z = next;
    }
    z
}

/// One draw from `Z_γ`; only `γ = 4` is supported.
pub fn z_gamma_sample<R: Rng + ?Sized>(gamma: u32, rng: &mut R) -> Result<f64> {
    if gamma != 4 {
        return Err(Error::invalid(format!("Z_γ sampling requires γ = 4, got {gamma}")));
    }
    Ok(ZGamma4::shared().sample(rng))
}
