//! Exact arithmetic in `Z[ω]`, `ω = exp(2πi/p)` for a prime `p`.
//!
//! Elements are stored in the power basis `1, ω, ..., ω^(p-2)` of
//! `Z[x] / (1 + x + ... + x^(p-1))`, which makes the representation unique.
//! For `p = 2` this degenerates to the integers with `ω = -1`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::error::{arg, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    prime: u32,
    coeffs: Vec<BigInt>,
}

impl CycInt {
    pub fn zero(prime: u32) -> Self {
        debug_assert!(prime >= 2);
        CycInt {
            prime,
            coeffs: vec![BigInt::zero(); prime as usize - 1],
        }
    }

    pub fn from_int(prime: u32, m: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(prime);
        z.coeffs[0] = m.into();
        z
    }

    pub fn one(prime: u32) -> Self {
        Self::from_int(prime, 1)
    }

    /// `m · ω^j`, with `j` taken mod `p`.
    pub fn monomial(prime: u32, m: impl Into<BigInt>, j: u64) -> Self {
        let m = m.into();
        let j = (j % prime as u64) as usize;
        let mut z = Self::zero(prime);
        if j == prime as usize - 1 {
            for c in z.coeffs.iter_mut() {
                *c = -m.clone();
            }
        } else {
            z.coeffs[j] = m;
        }
        z
    }

    /// `ω^j`.
    pub fn root(prime: u32, j: u64) -> Self {
        Self::monomial(prime, 1, j)
    }

    /// Builds from power-basis coefficients; the length must be `p - 1`.
    pub fn from_coeffs(prime: u32, coeffs: Vec<BigInt>) -> Result<Self> {
        if prime < 2 || coeffs.len() != prime as usize - 1 {
            return arg(format!(
                "Z[ω_{prime}] needs {} coefficients, got {}",
                prime.saturating_sub(1),
                coeffs.len()
            ));
        }
        Ok(CycInt { prime, coeffs })
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The value as a rational integer, if it is one.
    pub fn as_integer(&self) -> Option<&BigInt> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check_same(&self, other: &CycInt) -> Result<()> {
        if self.prime != other.prime {
            return arg(format!(
                "mismatched cyclotomic primes {} and {}",
                self.prime, other.prime
            ));
        }
        Ok(())
    }

    /// Reduces a length-`p` cyclic coefficient vector (exponents mod `p`)
    /// to the power basis using `ω^(p-1) = -(1 + ... + ω^(p-2))`.
    fn from_cyclic(prime: u32, mut cyc: Vec<BigInt>) -> Self {
        let top = cyc.pop().expect("cyclic vector has p entries");
        if !top.is_zero() {
            for c in cyc.iter_mut() {
                *c -= &top;
            }
        }
        CycInt { prime, coeffs: cyc }
    }

    pub fn try_add(&self, other: &CycInt) -> Result<CycInt> {
        self.check_same(other)?;
        Ok(self + other)
    }

    pub fn try_mul(&self, other: &CycInt) -> Result<CycInt> {
        self.check_same(other)?;
        Ok(self * other)
    }

    /// Complex conjugation, `ω ↦ ω^(p-1)`.
    pub fn conj(&self) -> CycInt {
        let p = self.prime as usize;
        let mut cyc = vec![BigInt::zero(); p];
        for (j, c) in self.coeffs.iter().enumerate() {
            cyc[(p - j) % p] = c.clone();
        }
        Self::from_cyclic(self.prime, cyc)
    }

    /// Writes the value as `m · ω^j` if possible, preferring the smallest `j`.
    /// Zero is `(0, 0)`.
    pub fn as_monomial(&self) -> Option<(BigInt, u32)> {
        if self.is_zero() {
            return Some((BigInt::zero(), 0));
        }
        let p = self.prime as usize;
        // Extended cyclic form (a_0, ..., a_{p-2}, 0). A monomial m·ω^j is
        // t·(1, ..., 1) + m·e_j for some t, so all but one entry agree.
        let zero = BigInt::zero();
        let entry = |i: usize| if i < p - 1 { &self.coeffs[i] } else { &zero };
        for j in 0..p {
            let t = entry(if j == 0 { 1 } else { 0 });
            if (0..p).filter(|&i| i != j).all(|i| entry(i) == t) {
                let m = entry(j) - t;
                if !m.is_zero() {
                    return Some((m, j as u32));
                }
            }
        }
        None
    }

    pub fn scale(&self, s: &BigInt) -> CycInt {
        CycInt {
            prime: self.prime,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Divides every coefficient by `d` if all divisions are exact.
    pub fn div_exact(&self, d: &BigInt) -> Option<CycInt> {
        if d.is_zero() {
            return None;
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if !(c % d).is_zero() {
                return None;
            }
            out.push(c / d);
        }
        Some(CycInt {
            prime: self.prime,
            coeffs: out,
        })
    }

    /// `a · conj(a)` as an integer; only meaningful when `a` is a monomial
    /// (in general the product is a real element of `Z[ω]`).
    pub fn abs_sq(&self) -> CycInt {
        self * &self.conj()
    }

    /// Evaluates in `F_l` given an image `z` of `ω` there.
    pub fn reduce_mod(&self, modulus: u64, z: u64) -> u64 {
        let m = BigInt::from(modulus);
        let mut acc = 0u64;
        let mut pow = 1u64;
        for c in &self.coeffs {
            let r = ((c % &m) + &m) % &m;
            let r: u64 = r.try_into().expect("reduced below modulus");
            acc = ((acc as u128 + r as u128 * pow as u128) % modulus as u128) as u64;
            pow = (pow as u128 * z as u128 % modulus as u128) as u64;
        }
        acc
    }
}

impl Add for &CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        assert_eq!(self.prime, rhs.prime, "mismatched cyclotomic primes");
        CycInt {
            prime: self.prime,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl AddAssign<&CycInt> for CycInt {
    fn add_assign(&mut self, rhs: &CycInt) {
        assert_eq!(self.prime, rhs.prime, "mismatched cyclotomic primes");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        self + &(-rhs)
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt {
            prime: self.prime,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        assert_eq!(self.prime, rhs.prime, "mismatched cyclotomic primes");
        let p = self.prime as usize;
        if p == 2 {
            return CycInt {
                prime: 2,
                coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]],
            };
        }
        let mut cyc = vec![BigInt::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    cyc[(i + j) % p] += a * b;
                }
            }
        }
        CycInt::from_cyclic(self.prime, cyc)
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((m, j)) = self.as_monomial() {
            return match j {
                0 => write!(f, "{m}"),
                1 => write!(f, "{m}ω"),
                _ => write!(f, "{m}ω^{j}"),
            };
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match j {
                0 => write!(f, "{a}")?,
                1 if a.is_one() => write!(f, "ω")?,
                1 => write!(f, "{a}ω")?,
                _ if a.is_one() => write!(f, "ω^{j}")?,
                _ => write!(f, "{a}ω^{j}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(p: u32, v: &[i64]) -> CycInt {
        CycInt::from_coeffs(p, v.iter().map(|&x| BigInt::from(x)).collect()).unwrap()
    }

    #[test]
    fn omega_squared_is_minus_one_minus_omega() {
        let w = CycInt::root(3, 1);
        assert_eq!(&w * &w, c(3, &[-1, -1]));
    }

    #[test]
    fn binary_case_is_integers() {
        let m1 = CycInt::root(2, 1);
        assert_eq!(m1, c(2, &[-1]));
        assert_eq!(&m1 * &m1, CycInt::one(2));
    }

    #[test]
    fn product_reduces_to_one() {
        let a = c(3, &[1, 1]);
        let b = c(3, &[0, -1]);
        assert_eq!(&a * &b, c(3, &[1, 0]));
    }

    #[test]
    fn conjugation() {
        assert_eq!(c(3, &[5, 0]).conj(), c(3, &[5, 0]));
        assert_eq!(c(5, &[-4, 0, 0, 0]).conj(), c(5, &[-4, 0, 0, 0]));
        assert_eq!(CycInt::root(3, 1).conj(), c(3, &[-1, -1]));
        assert_eq!(c(3, &[-2, -2]).conj(), c(3, &[0, 2]));
    }

    #[test]
    fn monomial_recognition() {
        assert_eq!(c(3, &[0, 3]).as_monomial(), Some((BigInt::from(3), 1)));
        assert_eq!(c(3, &[-1, -1]).as_monomial(), Some((BigInt::from(1), 2)));
        assert_eq!(c(3, &[1, 2]).as_monomial(), None);
        assert_eq!(CycInt::zero(5).as_monomial(), Some((BigInt::zero(), 0)));
        assert_eq!(c(2, &[-7]).as_monomial(), Some((BigInt::from(-7), 0)));
        for j in 0..5u64 {
            let z = CycInt::monomial(5, -3, j);
            assert_eq!(z.as_monomial(), Some((BigInt::from(-3), j as u32)));
        }
    }

    #[test]
    fn mismatched_primes_rejected() {
        assert!(CycInt::one(3).try_mul(&CycInt::one(5)).is_err());
        assert!(CycInt::one(3).try_add(&CycInt::one(2)).is_err());
        assert!(CycInt::from_coeffs(3, vec![BigInt::one()]).is_err());
    }

    #[test]
    fn monomial_norms_are_squares() {
        for p in [2u32, 3, 5, 7] {
            for m in -10i64..=10 {
                for j in 0..p as u64 {
                    let a = CycInt::monomial(p, m, j);
                    assert_eq!(a.abs_sq(), CycInt::from_int(p, m * m));
                }
            }
        }
    }

    #[test]
    fn reduction_is_a_ring_map() {
        // 13 ≡ 1 mod 3; 3 has order 3 mod 13.
        let a = c(3, &[4, -7]);
        let b = c(3, &[-2, 9]);
        let (l, z) = (13u64, 3u64);
        let prod = &a * &b;
        assert_eq!(
            prod.reduce_mod(l, z),
            a.reduce_mod(l, z) * b.reduce_mod(l, z) % l
        );
    }

    fn arb(p: u32) -> impl Strategy<Value = CycInt> {
        prop::collection::vec(-50i64..50, p as usize - 1).prop_map(move |v| c(p, &v))
    }

    fn triple() -> impl Strategy<Value = (CycInt, CycInt, CycInt)> {
        prop_oneof![Just(2u32), Just(3u32), Just(5u32)].prop_flat_map(|p| (arb(p), arb(p), arb(p)))
    }

    proptest! {
        #[test]
        fn ring_axioms((a, b, c) in triple()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            prop_assert_eq!(a.conj().conj(), a.clone());
        }

        #[test]
        fn binary_round_trips_integers(m in any::<i64>()) {
            let z = CycInt::from_int(2, m);
            prop_assert_eq!(z.as_integer(), Some(&BigInt::from(m)));
        }
    }
}
