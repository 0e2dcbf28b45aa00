use num_bigint::BigInt;
use rand::Rng;

use super::ControlLaw;
use crate::exact::{Rational, UniPoly};

/// `p/q` with `|p| <= max_num` and `1 <= q <= max_den`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, max_num: i64, max_den: i64) -> Rational {
    let p = rng.gen_range(-max_num..=max_num);
    let q = rng.gen_range(1..=max_den);
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn random_covector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Rational> {
    (0..n).map(|_| random_rational(rng, 3, 4)).collect()
}

/// A single-piece law on `[0, 1]` with `r` polynomial controls of degree
/// at most `max_degree`.
pub fn random_control_law<R: Rng + ?Sized>(rng: &mut R, r: usize, max_degree: usize) -> ControlLaw {
    ControlLaw::polynomial(
        (0..r)
            .map(|_| UniPoly::from_coeffs((0..=max_degree).map(|_| random_rational(rng, 2, 3)).collect()))
            .collect(),
    )
}
