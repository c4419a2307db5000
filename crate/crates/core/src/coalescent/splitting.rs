use rand::{Rng, RngCore};
use rand_distr::{Distribution, Exp};

use crate::comb::{Comb, Tooth};
use crate::contour::{sample_excursion, ExcursionDraw};
use crate::error::{Error, Result};

/// Law of the upward jumps of a contour (the lifetimes of a splitting tree).
pub trait JumpLaw {
    fn sample(&self, rng: &mut dyn RngCore) -> f64;
}

/// Exponential lifetimes with the given mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentialJumps {
    pub mean: f64,
}

impl JumpLaw for ExponentialJumps {
    fn sample(&self, rng: &mut dyn RngCore) -> f64 {
        self.mean * Exp::new(1.0).expect("unit rate").sample(rng)
    }
}

/// Every lifetime equals the same constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantJumps(pub f64);

impl JumpLaw for ConstantJumps {
    fn sample(&self, _rng: &mut dyn RngCore) -> f64 {
        self.0
    }
}

/// Lifetimes drawn by inverting a tail `P(J > x)`: `J = inverse(U)` with `U`
/// uniform on `(0, 1]`.
#[derive(Clone, Copy)]
pub struct InverseTailJumps<F> {
    pub inverse_tail: F,
}

impl<F: Fn(f64) -> f64> JumpLaw for InverseTailJumps<F> {
    fn sample(&self, rng: &mut dyn RngCore) -> f64 {
        let u: f64 = 1.0 - rng.random::<f64>();
        (self.inverse_tail)(u)
    }
}

/// Draws before giving up, per requested tooth.
const ATTEMPTS_PER_TOOTH: usize = 10_000;

/// Comb on `[0, n + 1]` with teeth at `1..=n` whose heights are i.i.d.
/// depths `2(T - inf)` of excursions below `level` of a contour with drift
/// -1 and jumps at rate `birth_rate`. Excursions that hit 0 are discarded.
pub fn sample_splitting_depths<J, R>(
    level: f64,
    birth_rate: f64,
    lifetimes: &J,
    n: usize,
    rng: &mut R,
) -> Result<Comb>
where
    J: JumpLaw + ?Sized,
    R: RngCore,
{
    if !(level > 0.0 && level.is_finite()) {
        return Err(Error::InvalidParameter(format!("level must be positive, got {level}")));
    }
    if !(birth_rate > 0.0 && birth_rate.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "birth rate must be positive, got {birth_rate}"
        )));
    }
    let mut teeth = Vec::with_capacity(n);
    let mut attempts = 0usize;
    while teeth.len() < n {
        attempts += 1;
        if attempts > ATTEMPTS_PER_TOOTH.saturating_mul(n) {
            return Err(Error::InvalidParameter(format!(
                "only {} of {n} excursions returned to the level in {} draws",
                teeth.len(),
                attempts - 1
            )));
        }
        if let ExcursionDraw::Returned { depth, .. } =
            sample_excursion(level, birth_rate, lifetimes, rng)?
        {
            if depth > 0.0 {
                teeth.push(Tooth::new((teeth.len() + 1) as f64, depth));
            }
        }
    }
    Comb::new(0.0, (n + 1) as f64, teeth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    #[test]
    fn depths_are_bounded_and_reproducible() {
        let law = ExponentialJumps { mean: 1.0 };
        let c = sample_splitting_depths(1.0, 2.0, &law, 200, &mut seeded(9)).unwrap();
        assert_eq!(c.len(), 200);
        assert_eq!(c.hi(), 201.0);
        assert!(c.teeth().iter().all(|t| t.height > 0.0 && t.height <= 2.0));
        let again = sample_splitting_depths(1.0, 2.0, &law, 200, &mut seeded(9)).unwrap();
        assert_eq!(c, again);
    }

    #[test]
    fn hopeless_parameters_give_up() {
        // jumps of size 0 never lift the contour back to the level
        let law = ConstantJumps(0.0);
        assert!(sample_splitting_depths(1.0, 1.0, &law, 1, &mut seeded(0)).is_err());
        assert!(sample_splitting_depths(1.0, 0.0, &law, 1, &mut seeded(0)).is_err());
    }
}
