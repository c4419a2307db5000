use rand::{Rng, RngCore};
use rand_distr::{Distribution, Exp};

use super::{Breakpoint, Contour};
use crate::coalescent::JumpLaw;
use crate::error::{Error, Result};

/// Stop after this many jumps; a contour this long is almost surely a
/// parameter mistake.
const MAX_JUMPS: usize = 10_000_000;

/// Outcome of one excursion below the level, started at the level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExcursionDraw {
    /// Came back to the level after `duration`, with depth `2(T - inf)`.
    Returned { duration: f64, depth: f64 },
    /// Hit 0 after `duration` without coming back.
    Killed { duration: f64 },
}

fn check_params(level: f64, rate: f64) -> Result<Option<Exp<f64>>> {
    if !(level > 0.0 && level.is_finite()) {
        return Err(Error::InvalidParameter(format!("level must be positive, got {level}")));
    }
    if !(rate >= 0.0 && rate.is_finite()) {
        return Err(Error::InvalidParameter(format!("jump rate must be nonnegative, got {rate}")));
    }
    Ok((rate > 0.0).then(|| Exp::new(rate).expect("positive rate")))
}

fn draw_jump<J: JumpLaw + ?Sized>(law: &J, rng: &mut dyn RngCore) -> Result<f64> {
    let j = law.sample(rng);
    if !(j >= 0.0 && j.is_finite()) {
        return Err(Error::InvalidParameter(format!("jump law produced {j}")));
    }
    Ok(j)
}

/// Runs the contour from the level with drift -1 and jumps at rate
/// `jump_rate` until it is back at the level or hits 0.
pub fn sample_excursion<J, R>(
    level: f64,
    jump_rate: f64,
    law: &J,
    rng: &mut R,
) -> Result<ExcursionDraw>
where
    J: JumpLaw + ?Sized,
    R: RngCore,
{
    let waits = check_params(level, jump_rate)?;
    let mut x = level;
    let mut low = level;
    let mut elapsed = 0.0;
    for _ in 0..MAX_JUMPS {
        let wait = waits.map_or(f64::INFINITY, |w| w.sample(rng));
        if wait >= x {
            return Ok(ExcursionDraw::Killed {
                duration: elapsed + x,
            });
        }
        elapsed += wait;
        x -= wait;
        low = low.min(x);
        x += draw_jump(law, rng)?;
        if x >= level {
            return Ok(ExcursionDraw::Returned {
                duration: elapsed,
                depth: 2.0 * (level - low),
            });
        }
    }
    Err(Error::InvalidParameter(format!("no outcome after {MAX_JUMPS} jumps")))
}

/// Contour of a splitting tree truncated at `level`: starts at the level,
/// decreases at unit speed, jumps up at rate `jump_rate` by amounts drawn
/// from `law`, is capped at the level and stops when it hits 0.
pub fn sample_reflected_cpp_contour<J, R>(
    level: f64,
    jump_rate: f64,
    law: &J,
    rng: &mut R,
) -> Result<Contour>
where
    J: JumpLaw + ?Sized,
    R: Rng,
{
    let waits = check_params(level, jump_rate)?;
    let mut points = vec![Breakpoint::new(0.0, 0.0, level)];
    let mut t = 0.0;
    let mut x = level;
    for _ in 0..MAX_JUMPS {
        let wait = waits.map_or(f64::INFINITY, |w| w.sample(rng));
        if wait >= x {
            points.push(Breakpoint::new(t + x, 0.0, 0.0));
            return Contour::new(points);
        }
        let at = t + wait;
        let before = x - wait;
        let after = (before + draw_jump(law, rng)?).min(level);
        // a jump too short to separate from the previous breakpoint in
        // floating point is merged into it
        if at > t {
            points.push(Breakpoint::new(at, before, after));
            t = at;
        } else {
            points.last_mut().expect("nonempty").value = after;
        }
        x = after;
    }
    Err(Error::InvalidParameter(format!("contour exceeded {MAX_JUMPS} jumps")))
}
