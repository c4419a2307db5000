use rand::Rng;
use rand_distr::{Distribution, Exp};

use crate::comb::{Comb, Tooth};
use crate::error::{Error, Result};

/// Coalescence heights of an `n`-lineage Kingman coalescent, largest first:
/// `tau[j-1] = e_{j+1} + ... + e_n` with `e_k ~ Exp(k(k-1)/2)`, for `j = 1..n`.
/// The last entry, `tau_n`, is 0.
pub fn kingman_heights<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "a Kingman comb needs at least 2 lineages, got {n}"
        )));
    }
    let mut tau = vec![0.0; n];
    let mut acc = 0.0;
    for k in (2..=n).rev() {
        let rate = (k * (k - 1)) as f64 / 2.0;
        acc += Exp::new(rate).expect("positive rate").sample(rng);
        tau[k - 2] = acc;
    }
    Ok(tau)
}

/// Kingman comb truncated at `n` lineages: `n - 1` teeth on `[0, 1]` at
/// i.i.d. uniform positions with heights `tau_1 > ... > tau_{n-1}`.
///
/// Distances below `tau_{n-1}` are not represented.
pub fn sample_kingman_comb<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Comb> {
    let tau = kingman_heights(n, rng)?;
    loop {
        let teeth: Vec<Tooth> = tau[..n - 1]
            .iter()
            .map(|&h| {
                let mut u: f64 = rng.random();
                while u == 0.0 {
                    u = rng.random();
                }
                Tooth::new(u, h)
            })
            .collect();
        // equal positions have probability zero; redraw them if they occur
        if let Ok(c) = Comb::from_unsorted(0.0, 1.0, teeth) {
            return Ok(c);
        }
    }
}
