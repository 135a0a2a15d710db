//! Seeded sampling helpers for property checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cheb2d::{theta_to_x, ThetaPoint, XPoint};
use crate::scalar::Scalar;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point of the fundamental triangle `0 ≤ θ₁ ≤ θ₂ ≤ ½`.
pub fn random_theta<T: Scalar>(rng: &mut impl Rng) -> ThetaPoint<T> {
    let a: f64 = rng.gen_range(0.0..0.5);
    let b: f64 = rng.gen_range(0.0..0.5);
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    ThetaPoint::new(T::lit(lo), T::lit(hi))
}

pub fn random_thetas<T: Scalar>(rng: &mut impl Rng, count: usize) -> Vec<ThetaPoint<T>> {
    (0..count).map(|_| random_theta(rng)).collect()
}

/// Image under the coordinate change of a random angle point.
pub fn random_x<T: Scalar>(rng: &mut impl Rng) -> XPoint<T> {
    theta_to_x(random_theta(rng))
}

pub fn random_vector<T: Scalar>(rng: &mut impl Rng, len: usize) -> Vec<T> {
    (0..len).map(|_| T::lit(rng.gen_range(-1.0..1.0))).collect()
}
