//! Arithmetic in the field with four elements.
//!
//! Elements are stored as 2-bit codes over the basis `(1, w)`, so that
//! `0 = 0b00`, `1 = 0b01`, `w = 0b10` and `w² = w + 1 = 0b11`. Addition is
//! XOR of codes; multiplication goes through a discrete log table.

use std::fmt;
use std::ops::{Add, Mul};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Gf4(u8);

// log_w of the nonzero codes 1, w, w².
const LOG: [u8; 4] = [0xff, 0, 1, 2];
const EXP: [u8; 3] = [1, 2, 3];

impl Gf4 {
    pub const ZERO: Gf4 = Gf4(0);
    pub const ONE: Gf4 = Gf4(1);
    pub const W: Gf4 = Gf4(2);
    pub const W2: Gf4 = Gf4(3);

    /// All four elements in code order `0, 1, w, w²`.
    pub const ALL: [Gf4; 4] = [Gf4::ZERO, Gf4::ONE, Gf4::W, Gf4::W2];

    pub fn from_code(code: u8) -> Option<Gf4> {
        (code < 4).then_some(Gf4(code))
    }

    pub fn code(self) -> u8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self) -> Option<Gf4> {
        if self.is_zero() {
            return None;
        }
        let l = LOG[self.0 as usize];
        Some(Gf4(EXP[((3 - l) % 3) as usize]))
    }

    /// The Frobenius automorphism `x ↦ x²`, the only nontrivial field automorphism.
    pub fn frob(self) -> Gf4 {
        self * self
    }
}

impl Add for Gf4 {
    type Output = Gf4;
    // Characteristic 2.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Gf4) -> Gf4 {
        Gf4(self.0 ^ rhs.0)
    }
}

impl Mul for Gf4 {
    type Output = Gf4;
    fn mul(self, rhs: Gf4) -> Gf4 {
        if self.is_zero() || rhs.is_zero() {
            return Gf4::ZERO;
        }
        let l = LOG[self.0 as usize] + LOG[rhs.0 as usize];
        Gf4(EXP[(l % 3) as usize])
    }
}

impl fmt::Debug for Gf4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Gf4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.0 {
            0 => "0",
            1 => "1",
            2 => "w",
            _ => "w2",
        };
        f.write_str(s)
    }
}

pub fn gf4_add(a: Gf4, b: Gf4) -> Gf4 {
    a + b
}

pub fn gf4_mul(a: Gf4, b: Gf4) -> Gf4 {
    a * b
}

pub fn gf4_frob(a: Gf4) -> Gf4 {
    a.frob()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_products() {
        assert_eq!(Gf4::W * Gf4::W, Gf4::W2);
        assert_eq!(Gf4::W * Gf4::W2, Gf4::ONE);
        assert_eq!(Gf4::W.frob(), Gf4::W2);
        assert_eq!(Gf4::W * Gf4::W, Gf4::W + Gf4::ONE);
    }

    #[test]
    fn field_laws() {
        for a in Gf4::ALL {
            assert_eq!(a + a, Gf4::ZERO);
            assert_eq!(a.frob().frob(), a);
            if !a.is_zero() {
                assert_eq!(a * a * a, Gf4::ONE);
                assert_eq!(a * a.inv().unwrap(), Gf4::ONE);
            }
            for b in Gf4::ALL {
                assert_eq!(a * b, b * a);
                assert_eq!((a * b).frob(), a.frob() * b.frob());
                assert_eq!((a + b).frob(), a.frob() + b.frob());
                for c in Gf4::ALL {
                    assert_eq!(a * (b + c), a * b + a * c);
                    assert_eq!((a * b) * c, a * (b * c));
                }
            }
        }
        assert_eq!(Gf4::ZERO.inv(), None);
    }
}
