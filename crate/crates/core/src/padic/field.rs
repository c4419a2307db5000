use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::real::{as_p_fraction, base_digits, f_p, phi};
use super::{check_base, pow, PSequence, Tail};
use crate::comb::{Face, FacePoint};
use crate::error::{Error, Result};

fn check_prime(p: u32) -> Result<()> {
    check_base(p)?;
    if (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
        return Err(Error::PAdic(format!("{p} is not prime")));
    }
    Ok(())
}

fn int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

fn strip_factor(mut m: BigInt, p: &BigInt) -> (BigInt, i64) {
    let mut count = 0;
    while !m.is_zero() && (&m % p).is_zero() {
        m /= p;
        count += 1;
    }
    (m, count)
}

/// Exponent of `p` in `q`.
pub fn v_p(q: &BigRational, p: u32) -> Result<i64> {
    check_prime(p)?;
    if q.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    let pb = BigInt::from(p);
    let (_, up) = strip_factor(q.numer().clone(), &pb);
    let (_, down) = strip_factor(q.denom().clone(), &pb);
    Ok(up - down)
}

/// `p^-v_p(q - r)`, and 0 when `q = r`.
pub fn d_p(q: &BigRational, r: &BigRational, p: u32) -> Result<BigRational> {
    check_prime(p)?;
    let diff = q - r;
    if diff.is_zero() {
        return Ok(BigRational::zero());
    }
    Ok(pow(p, -v_p(&diff, p)?))
}

/// Hensel digits of `q` reversed, so that `q = sum_k y_k p^k`, for `q` whose
/// denominator is a power of `p`. Negative `q` end in `p - 1`s.
pub fn rho_psi(q: &BigRational, p: u32) -> Result<PSequence> {
    check_prime(p)?;
    let (m, k) = as_p_fraction(q, p)
        .ok_or_else(|| Error::PAdic(format!("{q} has an infinite expansion in base {p}")))?;
    if !m.is_negative() {
        return PSequence::new(p, -k, base_digits(&m, p), Tail::Zero);
    }
    // m = (m + p^N) - p^N and -p^N is p - 1 from index N on
    let pb = BigInt::from(p);
    let mut pn = BigInt::one();
    let mut n = 0i64;
    while pn < -&m {
        pn *= &pb;
        n += 1;
    }
    let mut digits = base_digits(&(&m + &pn), p);
    digits.resize(n as usize, 0);
    PSequence::new(p, -k, digits, Tail::PMinus1)
}

/// `sum_k y_k p^k`, where a tail of `p - 1`s from index `m` contributes
/// `-p^m`.
pub fn psi_inv_rho(y: &PSequence) -> BigRational {
    let p = y.p();
    let mut q = BigRational::zero();
    for (i, &d) in y.window().iter().enumerate() {
        if d != 0 {
            q += int(d) * pow(p, y.offset() + i as i64);
        }
    }
    if y.tail() == Tail::PMinus1 {
        q -= pow(p, y.tail_start());
    }
    q
}

fn inverse_mod(b: &BigInt, p: u32) -> BigInt {
    let pb = BigInt::from(p);
    b.mod_floor(&pb).modpow(&(&pb - 2u32), &pb)
}

/// Digits `c_0, c_1, ...` of a p-adic integer `a / b` with `p` not dividing
/// `b`, as a preperiod and a repeating cycle.
fn unit_digits(mut a: BigInt, b: &BigInt, p: u32) -> (Vec<u32>, Vec<u32>) {
    let pb = BigInt::from(p);
    let inv = inverse_mod(b, p);
    let mut seen: HashMap<BigInt, usize> = HashMap::new();
    let mut digits = Vec::new();
    loop {
        if let Some(&start) = seen.get(&a) {
            let cycle = digits.split_off(start);
            return (digits, cycle);
        }
        seen.insert(a.clone(), digits.len());
        let c = (&a * &inv).mod_floor(&pb);
        digits.push(c.to_u32().expect("digit below p"));
        a = (a - c * b) / &pb;
    }
}

/// The first `count` Hensel digits of `q` from its valuation on:
/// `q = sum_i c_i p^(v + i)` up to `p^(v + count)`. Returns `v` and the digits.
pub fn hensel_digits(q: &BigRational, p: u32, count: usize) -> Result<(i64, Vec<u32>)> {
    let v = v_p(q, p)?;
    let u = q / pow(p, v);
    let (pre, cycle) = unit_digits(u.numer().clone(), u.denom(), p);
    let digits = pre.iter().chain(cycle.iter().cycle()).take(count).copied().collect();
    Ok((v, digits))
}

/// `sum_{i >= 0} d_i p^-i` for digits given as a preperiod and a cycle.
fn read_periodic(pre: &[u32], cycle: &[u32], p: u32) -> BigRational {
    let mut t = BigRational::zero();
    for (i, &d) in pre.iter().enumerate() {
        t += int(d) * pow(p, -(i as i64));
    }
    let mut block = BigRational::zero();
    for (i, &d) in cycle.iter().enumerate() {
        block += int(d) * pow(p, -(i as i64));
    }
    let period = cycle.len() as i64;
    t + pow(p, -(pre.len() as i64)) * block / (int(1) - pow(p, -period))
}

/// The isometry from `(Q_p, d_p)` to the completed comb `F_p`.
///
/// Reverses the Hensel digits of `q` and reads them as a real expansion.
/// Numbers with finitely many digits land on right faces, negative ones
/// with a `p`-power denominator on left faces, all others on zeros of
/// `F_p`. Rationals have eventually periodic digits, so the image is exact.
pub fn chi(q: &BigRational, p: u32) -> Result<FacePoint<BigRational>> {
    check_prime(p)?;
    if q.is_zero() {
        return Ok(FacePoint::interior(BigRational::zero()));
    }
    let v = v_p(q, p)?;
    let u = q / pow(p, v);
    let (pre, cycle) = unit_digits(u.numer().clone(), u.denom(), p);
    let t = pow(p, -v) * read_periodic(&pre, &cycle, p);
    let face = match cycle.as_slice() {
        [0] => Face::Right,
        [d] if *d == p - 1 => Face::Left,
        _ => Face::Interior,
    };
    Ok(FacePoint::new(t, face))
}

/// Inverse of [`chi`].
///
/// A right face at `t` maps to `q = sum_j x_j p^j` with `x = phi(t)`; the
/// left face at `t` to `q - (p + 1) p^w`, `w` the last digit index of `x`.
pub fn chi_inverse(point: &FacePoint<BigRational>, p: u32) -> Result<BigRational> {
    check_prime(p)?;
    let t = &point.position;
    if t.is_negative() {
        return Err(Error::PAdic(format!("position {t} is negative")));
    }
    if t.is_zero() {
        return Ok(BigRational::zero());
    }
    if f_p(t, p).is_positive() {
        let x = phi(t, p)?;
        let right = psi_inv_rho(&x);
        let w = x.w().expect("a tooth has a finite nonzero expansion");
        return match point.face {
            Face::Right => Ok(right),
            Face::Left => Ok(right - int(p + 1) * pow(p, w)),
            Face::Interior => Err(Error::InteriorOnTooth(t.to_f64().unwrap_or(f64::NAN))),
        };
    }
    // a zero of F_p: the expansion of t is periodic and never terminates
    let whole = t.floor().to_integer();
    let mut q = BigRational::zero();
    for (i, &d) in base_digits(&whole, p).iter().enumerate() {
        q += int(d) * pow(p, -(i as i64));
    }
    let frac = t - BigRational::from_integer(whole);
    let (b, pb) = (frac.denom().clone(), BigInt::from(p));
    let mut a = frac.numer().clone();
    let mut seen: HashMap<BigInt, usize> = HashMap::new();
    let mut digits: Vec<u32> = Vec::new();
    while !seen.contains_key(&a) {
        seen.insert(a.clone(), digits.len());
        let (d, r) = (&a * &pb).div_mod_floor(&b);
        digits.push(d.to_u32().expect("digit below p"));
        a = r;
    }
    let start = seen[&a];
    // x_k for k >= 1 is digits[k - 1]; sum_k x_k p^k summed p-adically
    for (i, &d) in digits[..start].iter().enumerate() {
        q += int(d) * pow(p, i as i64 + 1);
    }
    let period = (digits.len() - start) as i64;
    let mut block = BigRational::zero();
    for (i, &d) in digits[start..].iter().enumerate() {
        block += int(d) * pow(p, i as i64 + 1);
    }
    Ok(q + pow(p, start as i64) * block / (int(1) - pow(p, period)))
}
