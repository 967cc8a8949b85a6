//! Seeded, reproducible random draws for trials and property tests.
//!
//! One explicit 64-bit seed drives a counter-based stream cipher generator,
//! so identical (seed, draw order) gives identical values on any platform.
//! Rationals are kept desk-scale (numerators in [-99, 99], denominators in
//! [1, 20]) to bound exact determinant growth.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Rational;

use crate::scalar::{CFloat, Scalar, ScalarKind};

pub struct Draw {
    rng: ChaCha8Rng,
}

impl Draw {
    pub fn new(seed: u64) -> Draw {
        Draw {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Random reduced rational with numerator in [-99, 99], denominator in [1, 20].
    pub fn rational(&mut self) -> Scalar {
        let num = self.rng.gen_range(-99i64..=99);
        let den = self.rng.gen_range(1i64..=20);
        Scalar::Rational(Rational::from((num, den)))
    }

    /// Random nonzero rational.
    pub fn nonzero_rational(&mut self) -> Scalar {
        loop {
            let s = self.rational();
            if !s.is_zero() {
                return s;
            }
        }
    }

    /// Random small integer as a scalar of the given kind.
    pub fn int_scalar(&mut self, kind: ScalarKind) -> Scalar {
        kind.from_i64(self.rng.gen_range(-99i64..=99))
    }

    /// Random scalar of the given kind; complex values have exact small
    /// rational parts so cross-backend comparisons stay meaningful.
    pub fn scalar(&mut self, kind: ScalarKind) -> Scalar {
        match kind {
            ScalarKind::Rational => self.rational(),
            ScalarKind::Complex(p) => {
                let re = self.rng.gen_range(-99i64..=99);
                let red = self.rng.gen_range(1i64..=20);
                let im = self.rng.gen_range(-99i64..=99);
                let imd = self.rng.gen_range(1i64..=20);
                Scalar::Complex(CFloat::new(
                    rug::Float::with_val(p, Rational::from((re, red))),
                    rug::Float::with_val(p, Rational::from((im, imd))),
                ))
            }
        }
    }

    pub fn nonzero_scalar(&mut self, kind: ScalarKind) -> Scalar {
        loop {
            let s = self.scalar(kind);
            if !s.is_zero() {
                return s;
            }
        }
    }

    /// Real-valued scalar of the given kind (rational part only).
    pub fn real_scalar(&mut self, kind: ScalarKind) -> Scalar {
        match kind {
            ScalarKind::Rational => self.rational(),
            ScalarKind::Complex(p) => {
                let re = self.rng.gen_range(-99i64..=99);
                let red = self.rng.gen_range(1i64..=20);
                Scalar::Complex(CFloat::new(
                    rug::Float::with_val(p, Rational::from((re, red))),
                    rug::Float::with_val(p, 0),
                ))
            }
        }
    }

    /// Small random scalar with |re|, |im| < 1. Used where the function
    /// growth must stay tame (elliptic sigma grows like exp(quadratic), so
    /// parameters at the default scale would drown 256-bit determinants).
    pub fn small_scalar(&mut self, kind: ScalarKind) -> Scalar {
        match kind {
            ScalarKind::Rational => {
                let num = self.rng.gen_range(-9i64..=9);
                let den = self.rng.gen_range(10i64..=20);
                Scalar::Rational(Rational::from((num, den)))
            }
            ScalarKind::Complex(p) => {
                let re = self.rng.gen_range(-9i64..=9);
                let red = self.rng.gen_range(10i64..=20);
                let im = self.rng.gen_range(-9i64..=9);
                let imd = self.rng.gen_range(10i64..=20);
                Scalar::Complex(CFloat::new(
                    rug::Float::with_val(p, Rational::from((re, red))),
                    rug::Float::with_val(p, Rational::from((im, imd))),
                ))
            }
        }
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.rng.gen_range(0..bound)
    }

    pub fn int_range(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }
}
