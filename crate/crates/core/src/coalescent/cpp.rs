use rand::Rng;
use rand_distr::{Distribution, Exp};
use serde::{Deserialize, Serialize};

use crate::comb::{Comb, Tooth};
use crate::error::{Error, Result};

/// A measure on heights given by its tail `x -> nu([x, inf))` and the
/// inverse of that tail.
pub trait Intensity {
    fn tail(&self, x: f64) -> f64;

    /// The `x` with `tail(x) = y`.
    fn inverse_tail(&self, y: f64) -> f64;
}

/// `nu(dh) = dh / (2 h^2)`, the depth measure of Brownian excursions.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct BrownianIntensity;

impl Intensity for BrownianIntensity {
    fn tail(&self, x: f64) -> f64 {
        0.5 / x
    }

    fn inverse_tail(&self, y: f64) -> f64 {
        0.5 / y
    }
}

/// `nu([x, inf)) = 1 / (2x)`.
pub fn brownian_tail(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tail is defined for positive heights, got {x}"
        )));
    }
    Ok(BrownianIntensity.tail(x))
}

/// An intensity given by a user-supplied tail and inverse tail.
#[derive(Clone, Copy)]
pub struct TailPair<F, G> {
    pub tail: F,
    pub inverse: G,
}

impl<F, G> Intensity for TailPair<F, G>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    fn tail(&self, x: f64) -> f64 {
        (self.tail)(x)
    }

    fn inverse_tail(&self, y: f64) -> f64 {
        (self.inverse)(y)
    }
}

/// One draw of a coalescent point process cut at height `T`: the atoms of
/// height in `[epsilon, T]` before the first atom `(D, H)` with `H > T`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointProcessSample {
    #[serde(rename = "T")]
    pub level: f64,
    pub epsilon: f64,
    pub seed: Option<u64>,
    #[serde(rename = "teeth")]
    pub atoms: Vec<(f64, f64)>,
    pub terminal: (f64, f64),
}

impl PointProcessSample {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))
    }

    /// Comb on `[0, D]` with a tooth of height `2H` at each `S`.
    pub fn comb(&self) -> Result<Comb> {
        let teeth = self
            .atoms
            .iter()
            .map(|&(s, h)| Tooth::new(s, 2.0 * h))
            .collect();
        Comb::new(0.0, self.terminal.0, teeth)
    }
}

/// Simulates the atoms of height at least `epsilon` of a Poisson process
/// with intensity `Leb x nu`, in increasing first coordinate, until the
/// first height above `level`.
///
/// Atoms arrive at rate `nu([epsilon, inf))`; each height is drawn by
/// inverting the tail.
pub fn sample_cpp<I, R>(
    level: f64,
    epsilon: f64,
    intensity: &I,
    rng: &mut R,
) -> Result<(Comb, PointProcessSample)>
where
    I: Intensity + ?Sized,
    R: Rng + ?Sized,
{
    if !(level > 0.0 && level.is_finite()) {
        return Err(Error::InvalidParameter(format!("level must be positive, got {level}")));
    }
    if !(epsilon > 0.0) {
        return Err(Error::InvalidParameter(format!("cutoff must be positive, got {epsilon}")));
    }
    if epsilon > level {
        return Err(Error::InvalidParameter(format!(
            "cutoff {epsilon} exceeds the level {level}"
        )));
    }
    let rate = intensity.tail(epsilon);
    if !(rate.is_finite() && rate > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tail at the cutoff must be finite and positive, got {rate}"
        )));
    }
    if !(intensity.tail(level) > 0.0) {
        return Err(Error::InvalidParameter(
            "no mass above the level: the process never stops".into(),
        ));
    }
    let gaps = Exp::new(rate).expect("positive rate");
    loop {
        let mut s = 0.0;
        let mut atoms = Vec::new();
        let terminal = loop {
            s += gaps.sample(rng);
            // 1 - u lies in (0, 1], so the tail value stays within (0, rate]
            let u: f64 = 1.0 - rng.random::<f64>();
            let h = intensity.inverse_tail(u * rate).max(epsilon);
            if h > level {
                break (s, h);
            }
            atoms.push((s, h));
        };
        let sample = PointProcessSample {
            level,
            epsilon,
            seed: None,
            atoms,
            terminal,
        };
        // coinciding arrival times have probability zero; redraw if they occur
        if let Ok(comb) = sample.comb() {
            return Ok((comb, sample));
        }
    }
}
