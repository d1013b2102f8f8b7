//! Seeded instance generators shared by the integration tests.
#![allow(dead_code)]

use nijenhuis::algebra::{catalogue, BilinearOp, OneOneTensor};
use nijenhuis::poly::{int, Rational};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
pub use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    int(rng.gen_range(-bound..=bound))
}

pub fn random_tensor(rng: &mut ChaCha8Rng, dim: usize, bound: i64) -> OneOneTensor {
    let rows = (0..dim)
        .map(|_| (0..dim).map(|_| small(rng, bound)).collect())
        .collect();
    OneOneTensor::new(rows).unwrap()
}

pub fn random_invertible(rng: &mut ChaCha8Rng, dim: usize) -> OneOneTensor {
    loop {
        let p = random_tensor(rng, dim, 2);
        if p.inverse().is_some() {
            return p;
        }
    }
}

/// A Leibniz product of dimension 2..=4: a catalogue entry in a random basis.
pub fn random_leibniz(rng: &mut ChaCha8Rng) -> (String, BilinearOp) {
    let cat = catalogue::all();
    let (name, op) = &cat[rng.gen_range(0..cat.len())];
    let p = random_invertible(rng, op.dim());
    (name.to_string(), op.transport(&p).unwrap())
}

/// A random (not necessarily Leibniz) product with entries in [-bound, bound].
pub fn random_op(rng: &mut ChaCha8Rng, dim: usize, bound: i64) -> BilinearOp {
    let c = (0..dim)
        .map(|_| {
            (0..dim)
                .map(|_| (0..dim).map(|_| small(rng, bound)).collect())
                .collect()
        })
        .collect();
    BilinearOp::new(c).unwrap()
}
