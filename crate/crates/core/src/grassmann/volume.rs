//! Closed-form volumes of odd spheres, unitary groups and Grassmannians.
//!
//! Every volume here has the shape `q·π^e` with `q` rational, so the values
//! are carried exactly as [`PiMultiple`] and rounded to `f64` only at the
//! end. Two routes that agree symbolically therefore agree bit-for-bit once
//! converted.

use std::f64::consts::PI;
use std::ops::{Div, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};

/// Exact value `coefficient · π^pi_power`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiMultiple {
    pub coefficient: BigRational,
    pub pi_power: i64,
}

impl PiMultiple {
    pub fn one() -> Self {
        Self {
            coefficient: BigRational::one(),
            pi_power: 0,
        }
    }

    fn new(coefficient: BigRational, pi_power: i64) -> Self {
        Self {
            coefficient,
            pi_power,
        }
    }

    pub fn to_f64(&self) -> f64 {
        let q = self
            .coefficient
            .to_f64()
            .expect("rational coefficient representable as f64");
        q * PI.powi(self.pi_power as i32)
    }
}

impl Mul for PiMultiple {
    type Output = PiMultiple;

    fn mul(self, rhs: PiMultiple) -> PiMultiple {
        PiMultiple::new(self.coefficient * rhs.coefficient, self.pi_power + rhs.pi_power)
    }
}

impl Div for PiMultiple {
    type Output = PiMultiple;

    fn div(self, rhs: PiMultiple) -> PiMultiple {
        PiMultiple::new(self.coefficient / rhs.coefficient, self.pi_power - rhs.pi_power)
    }
}

fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// `0!·1!·…·(n−1)!`
fn superfactorial(n: u64) -> BigInt {
    (0..n).map(factorial).product()
}

fn ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

/// `Vol(S^{2k−1}) = 2π^k/(k−1)!`, exactly.
pub fn sphere_volume_exact(k: u64) -> Result<PiMultiple> {
    if k == 0 {
        return Err(Error::InvalidArgument("sphere index k must be ≥ 1".into()));
    }
    Ok(PiMultiple::new(ratio(BigInt::from(2), factorial(k - 1)), k as i64))
}

pub fn sphere_volume(k: u64) -> Result<f64> {
    sphere_volume_exact(k).map(|v| v.to_f64())
}

/// `Vol(U(n)) = 2^n·π^{n(n+1)/2} / (0!·1!·…·(n−1)!)`, exactly.
pub fn unitary_volume_exact(n: u64) -> Result<PiMultiple> {
    if n == 0 {
        return Err(Error::InvalidArgument("unitary group dimension n must be ≥ 1".into()));
    }
    let two_pow = BigInt::from(2).pow(n as u32);
    Ok(PiMultiple::new(
        ratio(two_pow, superfactorial(n)),
        (n * (n + 1) / 2) as i64,
    ))
}

pub fn unitary_volume(n: u64) -> Result<f64> {
    unitary_volume_exact(n).map(|v| v.to_f64())
}

/// `∏_{j=1}^{n} Vol(S^{2j−1})`, the fibration route to `Vol(U(n))`.
pub fn spheres_product_exact(n: u64) -> Result<PiMultiple> {
    if n == 0 {
        return Err(Error::InvalidArgument("unitary group dimension n must be ≥ 1".into()));
    }
    (1..=n).try_fold(PiMultiple::one(), |acc, j| Ok(acc * sphere_volume_exact(j)?))
}

/// `Vol(G_{k,n}) = [0!…(k−1)! / ((n−k)!…(n−1)!)]·π^{k(n−k)}`, exactly.
///
/// The single-point manifolds `G_{0,n}` and `G_{n,n}` have volume 1.
pub fn grassmann_volume_exact(k: u64, n: u64) -> Result<PiMultiple> {
    if k > n || n == 0 {
        return Err(Error::InvalidArgument(format!(
            "need 0 ≤ k ≤ n with n ≥ 1, got k = {k}, n = {n}"
        )));
    }
    if k == 0 || k == n {
        return Ok(PiMultiple::one());
    }
    let den: BigInt = (n - k..n).map(factorial).product();
    Ok(PiMultiple::new(
        ratio(superfactorial(k), den),
        (k * (n - k)) as i64,
    ))
}

pub fn grassmann_volume(k: u64, n: u64) -> Result<f64> {
    grassmann_volume_exact(k, n).map(|v| v.to_f64())
}
