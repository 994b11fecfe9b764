#![allow(dead_code)]

use homspace::metaspace::MVector;
use homspace::motions::Motion;
use homspace::Signature;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn sig(s: &str) -> Signature {
    s.parse().unwrap()
}

/// Every signature of dimension 1..=max_n.
pub fn all_sigs(max_n: usize) -> Vec<Signature> {
    (1..=max_n).flat_map(Signature::all_of_dim).collect()
}

/// Product of `count` random rotations with moderate angles.
pub fn random_motion(r: &mut impl Rng, s: &Signature, count: usize) -> Motion {
    let n = s.dim();
    let mut m = Motion::identity(s);
    for _ in 0..count {
        let j = r.gen_range(1..=n);
        let i = r.gen_range(0..j);
        let phi = r.gen_range(-1.2..1.2);
        m = m.compose(&Motion::rotation(i, j, phi, s).unwrap()).unwrap();
    }
    m
}

pub fn random_vector(r: &mut impl Rng, n: usize) -> MVector {
    MVector((0..=n).map(|_| r.gen_range(-2.0..2.0)).collect())
}

/// Random proper point: the origin moved by a random motion.
pub fn random_point(r: &mut impl Rng, s: &Signature) -> MVector {
    random_motion(r, s, 3).apply(&MVector::origin(s.dim())).unwrap()
}

pub fn max_abs_diff(a: &nalgebra::DMatrix<f64>, b: &nalgebra::DMatrix<f64>) -> f64 {
    (a - b).amax()
}
