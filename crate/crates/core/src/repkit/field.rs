//! Arithmetic in `F_p` for small primes.

use super::RepError;

/// `F_p` with `p < 256`, elements stored as `u8` in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u8,
    inv: Vec<u8>,
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, RepError> {
        if p > 255 || !is_prime(p as u64) {
            return Err(RepError::NotPrime(p));
        }
        let inv = (0..p)
            .map(|x| {
                if x == 0 {
                    0
                } else {
                    (1..p).find(|y| x * y % p == 1).unwrap() as u8
                }
            })
            .collect();
        Ok(PrimeField { p: p as u8, inv })
    }

    #[inline]
    pub fn p(&self) -> u8 {
        self.p
    }

    #[inline]
    pub fn add(&self, x: u8, y: u8) -> u8 {
        ((x as u16 + y as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn sub(&self, x: u8, y: u8) -> u8 {
        ((x as u16 + self.p as u16 - y as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn mul(&self, x: u8, y: u8) -> u8 {
        ((x as u16 * y as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn neg(&self, x: u8) -> u8 {
        if x == 0 {
            0
        } else {
            self.p - x
        }
    }

    /// Inverse of a nonzero element.
    #[inline]
    pub fn inv(&self, x: u8) -> u8 {
        debug_assert!(x != 0);
        self.inv[x as usize]
    }

    /// `dst += c * src`, elementwise.
    #[inline]
    pub fn axpy(&self, dst: &mut [u8], c: u8, src: &[u8]) {
        if c == 0 {
            return;
        }
        if self.p == 2 {
            for (d, s) in dst.iter_mut().zip(src) {
                *d ^= s;
            }
        } else {
            let p = self.p as u16;
            for (d, s) in dst.iter_mut().zip(src) {
                *d = ((*d as u16 + c as u16 * *s as u16) % p) as u8;
            }
        }
    }

    /// `v *= c`, elementwise.
    #[inline]
    pub fn scale(&self, v: &mut [u8], c: u8) {
        if c == 1 {
            return;
        }
        for x in v.iter_mut() {
            *x = self.mul(*x, c);
        }
    }

    pub fn dot(&self, x: &[u8], y: &[u8]) -> u8 {
        let p = self.p as u32;
        (x.iter()
            .zip(y)
            .map(|(&a, &b)| a as u32 * b as u32)
            .sum::<u32>()
            % p) as u8
    }
}
