//! Seeded generators for polynomial systems, matrices and test families.
//!
//! All randomness flows from [`InstanceRng`], a ChaCha8 stream keyed by a
//! `u64` seed via `SeedableRng::seed_from_u64`. ChaCha output is specified
//! independently of platform and word size, so a seed names the same
//! instance on every build.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::detpoly::{BlockLemmaCase, CoeffMatrix};
use crate::error::Result;
use crate::poly::{Coeff, Poly};
use crate::subresultant::PolySystem;

/// Coefficient magnitude bound used for generated systems.
pub const COEFF_BOUND: i64 = 99;

pub struct InstanceRng {
    rng: ChaCha8Rng,
}

impl InstanceRng {
    pub fn new(seed: u64) -> Self {
        InstanceRng {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Uniform in `[-bound, bound]`.
    pub fn int(&mut self, bound: i64) -> i64 {
        self.rng.gen_range(-bound..=bound)
    }

    /// Uniform in `[-bound, bound] \ {0}`.
    pub fn nonzero(&mut self, bound: i64) -> i64 {
        let v = self.rng.gen_range(1..=bound);
        if self.rng.gen_bool(0.5) {
            -v
        } else {
            v
        }
    }

    pub fn range(&mut self, lo: usize, hi_inclusive: usize) -> usize {
        self.rng.gen_range(lo..=hi_inclusive)
    }

    /// A polynomial of exact degree `deg` with coefficients in `[-bound, bound]`.
    pub fn poly(&mut self, deg: usize, bound: i64) -> Poly {
        let mut c: Vec<i64> = (0..deg).map(|_| self.int(bound)).collect();
        c.push(self.nonzero(bound));
        Poly::from_i64s(&c)
    }

    pub fn monic(&mut self, deg: usize, bound: i64) -> Poly {
        let mut c: Vec<i64> = (0..deg).map(|_| self.int(bound)).collect();
        c.push(1);
        Poly::from_i64s(&c)
    }

    pub fn matrix(&mut self, rows: usize, cols: usize, bound: i64) -> CoeffMatrix {
        let entries = (0..rows * cols)
            .map(|_| Coeff::from(self.int(bound)))
            .collect();
        CoeffMatrix::new(rows, cols, entries).expect("nonempty shape")
    }

    /// A list of `t` polynomials with maximal degree exactly `m`.
    pub fn family(&mut self, t: usize, m: usize, bound: i64) -> Vec<Poly> {
        (0..t)
            .map(|i| {
                let d = if i == 0 { m } else { self.range(0, m) };
                self.poly(d, bound)
            })
            .collect()
    }

    /// A pair `(P, Q)` satisfying the block-reduction preconditions and
    /// falling in the requested case.
    pub fn block_lemma_instance(&mut self, case: BlockLemmaCase) -> (Vec<Poly>, Vec<Poly>) {
        const BOUND: i64 = 20;
        loop {
            let m1 = self.range(2, 7);
            let t1 = self.range(1, m1);
            let edge = m1 - t1;
            let room = m1 + 1 - t1; // upper bound for t2
            let (m2, t2) = match case {
                BlockLemmaCase::NestedDp => (edge + 1, self.range(1, room)),
                BlockLemmaCase::PrincipalTimesDp => {
                    if edge >= 1 && self.rng.gen_bool(0.5) {
                        (self.range(0, edge - 1), 1)
                    } else {
                        (edge, self.range(1, room))
                    }
                }
                BlockLemmaCase::Vanishing => {
                    if edge == 0 || room < 2 {
                        continue;
                    }
                    (self.range(0, edge - 1), self.range(2, room))
                }
            };
            let p = self.family(t1, m1, BOUND);
            let q = self.family(t2, m2, BOUND);
            return (p, q);
        }
    }
}

/// A random system with the given degrees: coefficients uniform in
/// `[-99, 99]`, leading coefficients nonzero, `F0` monic.
pub fn random_system(degrees: &[usize], seed: u64) -> Result<PolySystem> {
    let mut rng = InstanceRng::new(seed);
    let polys = degrees
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            if i == 0 {
                rng.monic(d, COEFF_BOUND)
            } else {
                rng.poly(d, COEFF_BOUND)
            }
        })
        .collect();
    PolySystem::new(polys)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_system() {
        let a = random_system(&[5, 5, 6], 42).unwrap();
        let b = random_system(&[5, 5, 6], 42).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, random_system(&[5, 5, 6], 43).unwrap());
        assert_eq!(a.degrees(), &[5, 5, 6]);
        assert!(a.polys()[0].is_monic());
    }

    #[test]
    fn coefficients_in_range() {
        let s = random_system(&[3, 4, 4, 6], 7).unwrap();
        for p in s.polys() {
            for c in p.coeffs() {
                assert!(c.magnitude() <= &num_bigint::BigUint::from(99u32));
            }
        }
    }
}
