//! Seeded generators shared by the property and acceptance suites.
//! Everything is deterministic given the seed, so failures replay exactly.
#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rbmod_core::matsolve::{
    classify_kx, solution_space_xkx, verify_equation, ClassifyVariant, SolutionSpace,
};
use rbmod_core::rational::{int, Rational};
use rbmod_core::rbops::{Flavor, ModulePair};
use rbmod_core::Matrix;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Eigenvalues the closed-form solvers are exercised with.
pub const EIGENVALUES: [i64; 5] = [-2, -1, 0, 1, 2];

/// A Jordan-form operator matrix: random block sizes summing to `n`,
/// eigenvalues drawn from [`EIGENVALUES`].
pub fn random_jordan_operator(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    let mut blocks = Vec::new();
    let mut left = n;
    while left > 0 {
        let size = rng.gen_range(1..=left.min(3));
        let eig = EIGENVALUES[rng.gen_range(0..EIGENVALUES.len())];
        blocks.push(Matrix::jordan_block(size, &int(eig)));
        left -= size;
    }
    Matrix::block_diag(&blocks)
}

/// Unit lower-triangular matrix with small integer entries; always
/// invertible, keeps conjugated entries moderate.
pub fn unit_triangular(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    Matrix::from_fn(n, n, |i, j| {
        if i == j {
            int(1)
        } else if i > j {
            int(rng.gen_range(-2..=2))
        } else {
            int(0)
        }
    })
}

/// The solution space of the flavor's side condition for a given `B`.
pub fn space_for(b: &Matrix, flavor: Flavor) -> SolutionSpace {
    match ClassifyVariant::of_flavor(flavor) {
        Some(variant) => classify_kx(b, variant).expect("quasi-idempotent operator"),
        None => solution_space_xkx(b).expect("rational spectrum"),
    }
}

/// A random element of a solution space with small integer coefficients.
pub fn solution_sample(rng: &mut ChaCha8Rng, space: &SolutionSpace) -> Matrix {
    let n = space.basis_change.rows();
    let mut acc = Matrix::zeros(n, n);
    for elem in &space.basis {
        let c = int(rng.gen_range(-3..=3));
        acc = &acc + &elem.scale(&c);
    }
    acc
}

/// A valid module pair of the given flavor and dimension: a conjugated
/// normal-form `B` with `A` sampled from the exact solution space.
pub fn random_valid_pair(rng: &mut ChaCha8Rng, flavor: Flavor, n: usize) -> ModulePair {
    let b0 = if flavor.requires_quasi_idempotent() {
        let k = rng.gen_range(0..=n);
        let diag: Vec<Rational> = (0..n)
            .map(|i| if i < k { int(-1) } else { int(0) })
            .collect();
        Matrix::diag(&diag)
    } else {
        random_jordan_operator(rng, n)
    };
    let s = unit_triangular(rng, n);
    let s_inv = s.inverse().expect("unit triangular is invertible");
    let b = &(&s * &b0) * &s_inv;
    let space = space_for(&b, flavor);
    let a = solution_sample(rng, &space);
    let mp = ModulePair::new(flavor, a, b).expect("square pair");
    assert!(verify_equation(&mp), "constructed pair must be valid");
    mp
}

/// A pair that fails its defining equation, produced by perturbing one
/// entry of a valid pair until verification breaks.
pub fn perturbed_invalid_pair(rng: &mut ChaCha8Rng, flavor: Flavor, n: usize) -> ModulePair {
    let valid = random_valid_pair(rng, flavor, n);
    for _ in 0..200 {
        let mut a = valid.a().clone();
        let mut b = valid.b().clone();
        let r = rng.gen_range(0..n);
        let c = rng.gen_range(0..n);
        let delta = int(rng.gen_range(1..=3));
        if rng.gen_bool(0.5) {
            let v = a.get(r, c) + &delta;
            a.set(r, c, v);
        } else {
            let v = b.get(r, c) + &delta;
            b.set(r, c, v);
        }
        let candidate = ModulePair::new(flavor, a, b).expect("square pair");
        if !verify_equation(&candidate) {
            return candidate;
        }
    }
    panic!("no invalidating perturbation found (flavor {flavor:?}, n = {n})");
}
