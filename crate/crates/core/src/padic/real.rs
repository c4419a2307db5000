use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{check_base, pow, PSequence, Tail};
use crate::comb::{Comb, CombFunction, FacePoint, Face, Tooth};
use crate::error::{Error, Result};

/// Writes `t` as `m / p^k` with `k >= 0` minimal, when its denominator
/// divides a power of `p`.
pub(crate) fn as_p_fraction(t: &BigRational, p: u32) -> Option<(BigInt, i64)> {
    let den = t.denom();
    let pb = BigInt::from(p);
    let mut pk = BigInt::from(1);
    let mut k = 0i64;
    let limit = den.bits() as i64 + 1;
    while !(&pk % den).is_zero() {
        if k > limit {
            return None;
        }
        pk *= &pb;
        k += 1;
    }
    Some((t.numer() * (&pk / den), k))
}

/// Base-`p` digits of a nonnegative integer, least significant first.
pub(crate) fn base_digits(m: &BigInt, p: u32) -> Vec<u32> {
    let pb = BigInt::from(p);
    let mut m = m.clone();
    let mut out = Vec::new();
    while !m.is_zero() {
        let (q, r) = m.div_mod_floor(&pb);
        out.push(r.to_u32().expect("digit below p"));
        m = q;
    }
    out
}

fn check_nonnegative(t: &BigRational) -> Result<()> {
    if t.is_negative() {
        Err(Error::PAdic(format!("position {t} is negative")))
    } else {
        Ok(())
    }
}

/// Greedy expansion `t = sum_k x_k p^-k` of a nonnegative rational whose
/// denominator divides a power of `p`.
pub fn phi(t: &BigRational, p: u32) -> Result<PSequence> {
    check_base(p)?;
    check_nonnegative(t)?;
    let (m, k) = as_p_fraction(t, p).ok_or_else(|| {
        Error::PAdic(format!("{t} has no finite expansion in base {p}"))
    })?;
    let mut digits = base_digits(&m, p);
    // x_{k - i} is the i-th least significant digit of m
    let top = digits.len() as i64 - 1;
    digits.reverse();
    PSequence::new(p, k - top, digits, Tail::Zero)
}

/// Greedy expansion of any nonnegative rational, cut after index `last`.
pub fn phi_truncated(t: &BigRational, p: u32, last: i64) -> Result<PSequence> {
    check_base(p)?;
    check_nonnegative(t)?;
    let whole = t.floor().to_integer();
    let mut digits = base_digits(&whole, p);
    let top = digits.len() as i64 - 1;
    digits.reverse();
    let mut offset = -top;
    if digits.is_empty() {
        offset = 1;
    }
    let pb = BigInt::from(p);
    let mut frac = t - BigRational::from_integer(whole);
    for _ in 1..=last {
        frac *= BigRational::from_integer(pb.clone());
        let d = frac.floor().to_integer();
        frac -= BigRational::from_integer(d.clone());
        digits.push(d.to_u32().expect("digit below p"));
    }
    let keep = (last - offset + 1).max(0) as usize;
    digits.truncate(keep);
    PSequence::new(p, offset, digits, Tail::Zero)
}

/// The two expansions of a positive `t` with a finite expansion: the left
/// face ends in `p - 1`s, the right face is the finite one.
pub fn phi_faces(t: &BigRational, p: u32) -> Result<(PSequence, PSequence)> {
    if !t.is_positive() {
        return Err(Error::PAdic(format!("faces are defined for positive positions, got {t}")));
    }
    let right = phi(t, p)?;
    Ok((right.hat()?, right))
}

/// `F_p(t) = p^-w(phi(t))` when `t > 0` has a finite expansion, 0 otherwise.
pub fn f_p(t: &BigRational, p: u32) -> BigRational {
    if !t.is_positive() {
        return BigRational::zero();
    }
    match as_p_fraction(t, p) {
        Some((m, k)) => {
            let pb = BigInt::from(p);
            let mut m = m;
            let mut zeros = 0i64;
            while (&m % &pb).is_zero() {
                m /= &pb;
                zeros += 1;
            }
            pow(p, zeros - k)
        }
        None => BigRational::zero(),
    }
}

/// The comb `F_p` on `[0, inf)` in exact arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PAryComb {
    p: u32,
}

impl PAryComb {
    pub fn new(p: u32) -> Result<Self> {
        check_base(p)?;
        Ok(Self { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Floating-point comb of the teeth of height at least `epsilon` in
    /// `(0, length)`: the multiples of `p^n` that are not multiples of
    /// `p^(n+1)`, at height `p^n`, for every `p^n >= epsilon`.
    pub fn truncated(&self, length: &BigRational, epsilon: &BigRational) -> Result<Comb> {
        if !length.is_positive() || !epsilon.is_positive() {
            return Err(Error::InvalidParameter(
                "length and cutoff must be positive".into(),
            ));
        }
        let mut n = 0i64;
        while &pow(self.p, n) < epsilon {
            n += 1;
        }
        while &pow(self.p, n - 1) >= epsilon {
            n -= 1;
        }
        let pb = BigInt::from(self.p);
        let mut teeth: Vec<(BigRational, BigRational)> = Vec::new();
        loop {
            let step = pow(self.p, n);
            if &step >= length {
                break;
            }
            let mut j = BigInt::from(1);
            loop {
                let x = BigRational::from_integer(j.clone()) * &step;
                if &x >= length {
                    break;
                }
                if !(&j % &pb).is_zero() {
                    teeth.push((x, step.clone()));
                }
                j += 1;
            }
            n += 1;
        }
        teeth.sort();
        let float_teeth = teeth
            .iter()
            .map(|(x, h)| Tooth::new(x.to_f64().unwrap_or(f64::NAN), h.to_f64().unwrap_or(f64::NAN)))
            .collect();
        Comb::new(0.0, length.to_f64().unwrap_or(f64::NAN), float_teeth)
            .map_err(|e| Error::Precision(format!("teeth collide in floating point: {e}")))
    }
}

impl CombFunction for PAryComb {
    type Position = BigRational;
    type Height = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn height_at(&self, t: &BigRational) -> BigRational {
        f_p(t, self.p)
    }

    /// `p^n` for the largest `n` such that a multiple of `p^n` lies strictly
    /// between `a` and `b`.
    fn open_sup(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if b <= a || !b.is_positive() {
            return BigRational::zero();
        }
        let mut n = 0i64;
        while &pow(self.p, n + 1) < b {
            n += 1;
        }
        while &pow(self.p, n) >= b {
            n -= 1;
        }
        loop {
            let step = pow(self.p, n);
            let j = (a / &step).floor() + BigRational::from_integer(1.into());
            if &(j * &step) < b {
                return step;
            }
            n -= 1;
        }
    }

    fn check(&self, point: &FacePoint<BigRational>) -> Result<()> {
        if point.position.is_negative() {
            return Err(Error::OutsideInterval {
                position: point.position.to_f64().unwrap_or(f64::NAN),
                lo: 0.0,
                hi: f64::INFINITY,
            });
        }
        if point.face == Face::Interior && f_p(&point.position, self.p).is_positive() {
            return Err(Error::InteriorOnTooth(
                point.position.to_f64().unwrap_or(f64::NAN),
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comb::face_distance;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn expansions() {
        let x = phi(&q(3, 4), 2).unwrap();
        assert_eq!(x.to_string(), "p:2; 1:11;tail=zero");
        assert_eq!(x.v_u().unwrap(), 1);
        let (l, r) = phi_faces(&q(3, 4), 2).unwrap();
        assert_eq!(r, x);
        assert_eq!(l.to_string(), "p:2; 1:10;tail=pminus1");
        assert!(phi(&q(0, 1), 2).unwrap().is_zero());
        assert!(phi_faces(&q(0, 1), 2).is_err());
        assert!(phi(&q(1, 3), 2).is_err());
        assert!(phi(&q(-1, 2), 2).is_err());
        assert_eq!(phi(&q(6, 1), 3).unwrap().to_string(), "p:3; -1:2;tail=zero");
        // composite bases expand any denominator dividing a power of p
        assert_eq!(phi(&q(1, 2), 4).unwrap().to_string(), "p:4; 1:2;tail=zero");
    }

    #[test]
    fn truncated_expansion() {
        let a = phi_truncated(&q(7, 12), 2, 5).unwrap();
        let b = phi_truncated(&q(17, 24), 2, 5).unwrap();
        assert_eq!(a.to_string(), "p:2; 1:1001;tail=zero");
        assert_eq!(b.to_string(), "p:2; 1:1011;tail=zero");
        assert_eq!(a.d_u(&b).unwrap(), q(1, 8));
        assert_eq!(phi_truncated(&q(5, 2), 2, 1).unwrap(), phi(&q(5, 2), 2).unwrap());
    }

    #[test]
    fn comb_heights() {
        assert_eq!(f_p(&q(3, 4), 2), q(1, 4));
        assert_eq!(f_p(&q(1, 1), 3), q(1, 1));
        assert_eq!(f_p(&q(6, 1), 3), q(3, 1));
        assert_eq!(f_p(&q(1, 3), 2), q(0, 1));
        assert_eq!(f_p(&q(0, 1), 2), q(0, 1));
    }

    #[test]
    fn dyadic_comb_distance() {
        let c = PAryComb::new(2).unwrap();
        let a = FacePoint::interior(q(7, 12));
        let b = FacePoint::interior(q(17, 24));
        assert_eq!(face_distance(&c, &a, &b).unwrap(), q(1, 8));
        assert_eq!(c.open_sup(&q(0, 1), &q(1, 1)), q(1, 2));
        assert_eq!(c.open_sup(&q(1, 1), &q(5, 1)), q(4, 1));
        let l = FacePoint::left(q(3, 4));
        let r = FacePoint::right(q(3, 4));
        assert_eq!(face_distance(&c, &l, &r).unwrap(), q(1, 4));
        assert!(face_distance(&c, &FacePoint::interior(q(1, 2)), &a).is_err());
        assert!(face_distance(&c, &FacePoint::interior(q(-1, 3)), &a).is_err());
    }

    #[test]
    fn truncation_counts_teeth() {
        let c = PAryComb::new(3).unwrap();
        let comb = c.truncated(&q(2, 1), &q(1, 9)).unwrap();
        // every multiple of 1/9 in (0, 2) is a tooth of height at least 1/9
        assert_eq!(comb.len(), 17);
        assert_eq!(comb.max_height(), 1.0);
        assert_eq!(comb.height(1.0), 1.0);
    }
}
