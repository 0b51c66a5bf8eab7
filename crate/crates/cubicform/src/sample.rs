//! Seeded generation of small rational test points.
//!
//! All randomized verification in this crate flows through [`PointSampler`],
//! so a run is reproducible from its seed alone. Numerators stay in
//! [-10, 10] and denominators in [1, 7] to keep exact arithmetic cheap.

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactnum::{rat, Matrix, Rat};

pub struct PointSampler {
    rng: ChaCha8Rng,
}

impl PointSampler {
    pub fn new(seed: u64) -> Self {
        PointSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// One rational with |numerator| <= 10, denominator <= 7.
    pub fn rational(&mut self) -> Rat {
        let p = self.rng.gen_range(-10i64..=10);
        let q = self.rng.gen_range(1i64..=7);
        rat(p, q)
    }

    /// A nonzero rational in the same range.
    pub fn nonzero_rational(&mut self) -> Rat {
        loop {
            let r = self.rational();
            if !r.is_zero() {
                return r;
            }
        }
    }

    /// A point in Q^n.
    pub fn point(&mut self, n: usize) -> Vec<Rat> {
        (0..n).map(|_| self.rational()).collect()
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                *m.at_mut(i, j) = self.rational();
            }
        }
        m
    }

    /// Random invertible matrix, by rejection sampling on the determinant.
    pub fn invertible_matrix(&mut self, n: usize) -> Matrix {
        loop {
            let m = self.matrix(n, n);
            if !crate::exactnum::mat_det(&m).expect("square").is_zero() {
                return m;
            }
        }
    }
}
