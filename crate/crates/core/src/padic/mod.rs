//! The boundary of the p-ary tree, the comb `F_p` and the p-adic field.
//!
//! A [`PSequence`] is a digit sequence indexed by the integers, zero far to
//! the left and ending either in zeros or in `p - 1`s. Positions on the half
//! line are read as `t = sum_k x_k p^-k`; p-adic numbers as
//! `q = sum_k x_k p^k` after reversing the indices. Everything here is exact.

mod field;
mod real;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

pub use field::{chi, chi_inverse, d_p, hensel_digits, psi_inv_rho, rho_psi, v_p};
pub use real::{f_p, phi, phi_faces, phi_truncated, PAryComb};

/// What every digit beyond the stored window equals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tail {
    Zero,
    PMinus1,
}

/// A digit sequence `(x_k)` over the integers in base `p`.
///
/// Digits below `offset` are 0, digits in `offset..offset + len` are stored,
/// and all later digits equal the tail digit. Stored windows are trimmed, so
/// equal sequences have equal representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PSequence {
    p: u32,
    offset: i64,
    digits: Vec<u32>,
    tail: Tail,
}

pub(crate) fn check_base(p: u32) -> Result<()> {
    if (2..=36).contains(&p) {
        Ok(())
    } else {
        Err(Error::PAdic(format!("base must be between 2 and 36, got {p}")))
    }
}

/// `p^n` for any integer `n`.
pub(crate) fn pow(p: u32, n: i64) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(p));
    let mag = num_traits::pow(base, n.unsigned_abs() as usize);
    if n >= 0 {
        mag
    } else {
        mag.recip()
    }
}

impl PSequence {
    pub fn new(p: u32, offset: i64, digits: Vec<u32>, tail: Tail) -> Result<Self> {
        check_base(p)?;
        if let Some(d) = digits.iter().find(|&&d| d >= p) {
            return Err(Error::PAdic(format!("digit {d} is not below {p}")));
        }
        let mut s = Self {
            p,
            offset,
            digits,
            tail,
        };
        s.trim();
        Ok(s)
    }

    /// A sequence indexed by the nonnegative integers: `digits[k]` is `x_k`.
    pub fn natural(p: u32, digits: Vec<u32>, tail: Tail) -> Result<Self> {
        Self::new(p, 0, digits, tail)
    }

    pub fn zero(p: u32) -> Result<Self> {
        Self::new(p, 0, Vec::new(), Tail::Zero)
    }

    /// `x_k = 0` for `k < n` and `p - 1` from `n` on.
    pub fn all_p_minus_1_from(p: u32, n: i64) -> Result<Self> {
        Self::new(p, n, Vec::new(), Tail::PMinus1)
    }

    /// The sequence with a single digit 1 at index `n`.
    pub fn unit(p: u32, n: i64) -> Result<Self> {
        Self::new(p, n, vec![1], Tail::Zero)
    }

    fn trim(&mut self) {
        let tail_digit = self.tail_digit();
        while self.digits.last() == Some(&tail_digit) {
            self.digits.pop();
        }
        let lead = self.digits.iter().take_while(|&&d| d == 0).count();
        self.digits.drain(..lead);
        self.offset += lead as i64;
        if self.digits.is_empty() && self.tail == Tail::Zero {
            self.offset = 0;
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    pub fn tail_digit(&self) -> u32 {
        match self.tail {
            Tail::Zero => 0,
            Tail::PMinus1 => self.p - 1,
        }
    }

    /// First index of the stored window.
    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn window(&self) -> &[u32] {
        &self.digits
    }

    /// First index from which every digit equals the tail digit.
    pub fn tail_start(&self) -> i64 {
        self.offset + self.digits.len() as i64
    }

    pub fn digit(&self, k: i64) -> u32 {
        if k < self.offset {
            0
        } else if k < self.tail_start() {
            self.digits[(k - self.offset) as usize]
        } else {
            self.tail_digit()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.digits.is_empty() && self.tail == Tail::Zero
    }

    /// Whether only finitely many digits are nonzero.
    pub fn is_finite(&self) -> bool {
        self.tail == Tail::Zero
    }

    /// Smallest index of a nonzero digit.
    pub fn v_u(&self) -> Result<i64> {
        if self.is_zero() {
            Err(Error::ValuationOfZero)
        } else {
            Ok(self.offset)
        }
    }

    /// Largest index of a nonzero digit, for nonzero finite sequences.
    pub fn w(&self) -> Option<i64> {
        (self.is_finite() && !self.is_zero()).then(|| self.tail_start() - 1)
    }

    /// For a nonzero finite sequence: the digit at `w` decremented and every
    /// later digit set to `p - 1`. Both sequences read as the same real.
    pub fn hat(&self) -> Result<Self> {
        let w = self
            .w()
            .ok_or_else(|| Error::PAdic("hat needs a nonzero finite sequence".into()))?;
        let mut digits = self.digits.clone();
        *digits.last_mut().expect("nonzero") -= 1;
        debug_assert_eq!(self.offset + digits.len() as i64 - 1, w);
        Self::new(self.p, self.offset, digits, Tail::PMinus1)
    }

    fn same_base(&self, other: &Self) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::PAdic(format!("bases {} and {} differ", self.p, other.p)))
        }
    }

    /// Digit-wise difference with the borrow carried towards larger indices,
    /// continued until digit and borrow repeat.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_base(other)?;
        let p = self.p as i64;
        let start = self.offset.min(other.offset);
        let end = self.tail_start().max(other.tail_start());
        let mut digits = Vec::new();
        let mut borrow = 0i64;
        let mut k = start;
        let mut last: Option<(i64, i64)> = None;
        loop {
            let mut d = self.digit(k) as i64 - other.digit(k) as i64 - borrow;
            borrow = 0;
            if d < 0 {
                d += p;
                borrow = 1;
            }
            if k >= end {
                if last == Some((d, borrow)) {
                    digits.pop();
                    let tail = if d == 0 { Tail::Zero } else { Tail::PMinus1 };
                    return Self::new(self.p, start, digits, tail);
                }
                last = Some((d, borrow));
            }
            digits.push(d as u32);
            k += 1;
        }
    }

    /// `p^-v_u(x - y)`, and 0 when the sequences are equal.
    pub fn d_u(&self, other: &Self) -> Result<BigRational> {
        let diff = self.sub(other)?;
        if diff.is_zero() {
            return Ok(BigRational::zero());
        }
        Ok(pow(self.p, -diff.v_u()?))
    }

    /// `sum_k x_k p^-k`.
    pub fn phi_inverse(&self) -> BigRational {
        let mut t = BigRational::zero();
        for (i, &d) in self.digits.iter().enumerate() {
            if d != 0 {
                t += BigRational::from_integer(d.into()) * pow(self.p, -(self.offset + i as i64));
            }
        }
        if self.tail == Tail::PMinus1 {
            // (p - 1) sum_{k >= m} p^-k = p^(1 - m)
            t += pow(self.p, 1 - self.tail_start());
        }
        t
    }
}

fn digit_char(d: u32) -> char {
    char::from_digit(d, 36).expect("digit below 36")
}

impl fmt::Display for PSequence {
    /// `p:<p>; <first index>:<digits>;tail=<zero|pminus1>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits: String = self.digits.iter().map(|&d| digit_char(d)).collect();
        let tail = match self.tail {
            Tail::Zero => "zero",
            Tail::PMinus1 => "pminus1",
        };
        write!(f, "p:{}; {}:{};tail={}", self.p, self.offset, digits, tail)
    }
}

impl FromStr for PSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::PAdic(format!("expected `p:<p>; <n>:<digits>;tail=<zero|pminus1>`, got `{s}`"));
        let parts: Vec<&str> = s.split(';').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let p: u32 = parts[0]
            .strip_prefix("p:")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(bad)?;
        check_base(p)?;
        let (offset, digits) = parts[1].split_once(':').ok_or_else(bad)?;
        let offset: i64 = offset.trim().parse().map_err(|_| bad())?;
        let digits = digits
            .trim()
            .chars()
            .map(|c| c.to_digit(36).filter(|&d| d < p).ok_or_else(bad))
            .collect::<Result<Vec<u32>>>()?;
        let tail = match parts[2].strip_prefix("tail=").map(str::trim) {
            Some("zero") => Tail::Zero,
            Some("pminus1") => Tail::PMinus1,
            _ => return Err(bad()),
        };
        Self::new(p, offset, digits, tail)
    }
}
