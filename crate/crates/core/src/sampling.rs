//! Seeded random generation for points, frames, and polydisc samples.
//! Every randomized routine in the crate and the CLI draws from a
//! `ChaCha12` stream, so a (command, seed) pair reproduces bit-identically.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::generation::generating_set;
use crate::linalg::rank_fraction_free;
use crate::universal::{ChartPoint, UniversalEquation};

pub fn rng_from_seed(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

/// A small exact rational: numerator in `-9..=9`, denominator in `1..=9`.
pub fn random_rational(rng: &mut impl Rng) -> BigRational {
    let numer: i64 = rng.gen_range(-9..=9);
    let denom: i64 = rng.gen_range(1..=9);
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// A random rational point on the hypersurface via the monic constraint.
pub fn random_point(eq: &UniversalEquation, rng: &mut impl Rng) -> ChartPoint {
    let z: Vec<BigRational> = (0..eq.n()).map(|_| random_rational(rng)).collect();
    let a: Vec<BigRational> = (0..eq.param_count() - 1)
        .map(|_| random_rational(rng))
        .collect();
    eq.sample_point(&z, &a).expect("monic constraint always solvable")
}

/// Like [`random_point`] but with at least one nonzero free parameter value.
pub fn random_point_nonzero_params(eq: &UniversalEquation, rng: &mut impl Rng) -> ChartPoint {
    for _ in 0..64 {
        let p = random_point(eq, rng);
        if p.a_values()[1..].iter().any(|s| !s.is_zero()) {
            return p;
        }
    }
    // vanishingly unlikely; pin one coordinate instead of looping forever
    let z: Vec<BigRational> = (0..eq.n()).map(|_| random_rational(rng)).collect();
    let mut a: Vec<BigRational> = (0..eq.param_count() - 1)
        .map(|_| random_rational(rng))
        .collect();
    a[0] = BigRational::from_integer(1.into());
    eq.sample_point(&z, &a).expect("monic constraint always solvable")
}

/// `count` independent tangent vectors at the point, built as random
/// combinations of the evaluated generating set.
pub fn random_tangent_frame(
    eq: &UniversalEquation,
    point: &ChartPoint,
    count: usize,
    rng: &mut impl Rng,
) -> Result<Vec<Vec<BigRational>>> {
    let rows: Vec<Vec<BigRational>> = generating_set(eq)?
        .into_iter()
        .map(|(_, field)| {
            field
                .evaluate(point)?
                .into_iter()
                .map(|s| s.as_rational().cloned())
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let width = eq.context().total_vars();
    for _ in 0..100 {
        let mut frame = Vec::with_capacity(count);
        for _ in 0..count {
            let mut v = vec![BigRational::zero(); width];
            for row in &rows {
                let c = random_rational(rng);
                if c.is_zero() {
                    continue;
                }
                for (acc, x) in v.iter_mut().zip(row) {
                    *acc += &c * x;
                }
            }
            frame.push(v);
        }
        if rank_fraction_free(&frame) == count {
            return Ok(frame);
        }
    }
    Err(Error::DependentFrame {
        rank: 0,
        expected: count,
    })
}

/// A point of the polydisc `B(radius)^m` with every coordinate of modulus at
/// most `fraction * radius`, area-uniform per coordinate.
pub fn random_interior(m: usize, radius: f64, fraction: f64, rng: &mut impl Rng) -> Vec<Complex64> {
    (0..m)
        .map(|_| {
            let r = radius * fraction * rng.gen::<f64>().sqrt();
            let theta = rng.gen::<f64>() * std::f64::consts::TAU;
            Complex64::from_polar(r, theta)
        })
        .collect()
}
