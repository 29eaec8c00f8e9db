//! Seeded, portable random sampling of scalars, vectors and matrices.
//!
//! The generator is SplitMix64 (state += 0x9E3779B97F4A7C15, then the
//! standard xor-shift/multiply finalizer), chosen so that witnesses can be
//! reproduced bit-for-bit by other implementations. Trial `i` of a run with
//! seed `s` draws from a fresh generator seeded with the `(i + 1)`-th output
//! of `SplitMix64(s)`, so trials are independent of evaluation order.
//!
//! Rational entries are `n / d` with `n` uniform in `[-9, 9]` and `d`
//! uniform in `[1, 9]`; prime-field entries are uniform residues. Bounded
//! integers are drawn as `lo + next() % (hi - lo + 1)`.

use crate::linalg::{Matrix, VecTuple, Vector};
use crate::scalar::{Field, Scalar};

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Generator for trial `trial` of a run seeded with `seed`.
    pub fn for_trial(seed: u64, trial: u64) -> Self {
        let state = seed.wrapping_add(GAMMA.wrapping_mul(trial.wrapping_add(1)));
        SplitMix64::new(mix(state))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        mix(self.state)
    }

    /// Uniform integer in `[lo, hi]` (inclusive), modulo-reduced.
    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo) as u64 + 1;
        lo + (self.next_u64() % span) as i64
    }

    pub fn index(&mut self, len: usize) -> usize {
        (self.next_u64() % len as u64) as usize
    }

    pub fn scalar(&mut self, field: Field) -> Scalar {
        match field {
            Field::Rational => {
                let n = self.range_i64(-9, 9);
                let d = self.range_i64(1, 9);
                field.ratio(n, d).expect("denominator is positive")
            }
            Field::Prime(m) => field.integer((self.next_u64() % m.get()) as i64),
        }
    }

    pub fn nonzero_scalar(&mut self, field: Field) -> Scalar {
        loop {
            let s = self.scalar(field);
            if !s.is_zero() {
                return s;
            }
        }
    }

    pub fn vector(&mut self, field: Field, dim: usize) -> Vector {
        Vector::new((0..dim).map(|_| self.scalar(field)).collect()).expect("dim > 0")
    }

    pub fn tuple(&mut self, field: Field, arity: usize, dim: usize) -> VecTuple {
        let mut t = VecTuple::empty(field, dim);
        for _ in 0..arity {
            t.push(self.vector(field, dim)).expect("same space");
        }
        t
    }

    pub fn matrix(&mut self, field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix::from(self.tuple(field, rows, cols))
    }
}
