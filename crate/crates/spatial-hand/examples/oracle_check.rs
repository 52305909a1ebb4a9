//! Closed-form ratios against finite differences of numerically closed loops,
//! at a handful of random postures.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spatial_hand::cli::ratio_value;
use spatial_hand::oracle::{Oracle, Ratio};
use spatial_hand::{home_angles, ratios, DesignParams, FingerState};

fn main() -> spatial_hand::Result<()> {
    let p = DesignParams::reference();
    let home = home_angles(&p)?.to_array();
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    for _ in 0..5 {
        let q = home.map(|v| v + rng.random_range(-0.4..0.4));
        let s = FingerState::solve(&p, spatial_hand::ActiveAngles::from_array(q))?;
        let r = ratios(&p, &s)?;
        let o = Oracle::new(&p, &s);
        let worst = Ratio::ALL
            .iter()
            .map(|&k| Ok((ratio_value(&r, k) - o.ratio(k)?).abs()))
            .collect::<spatial_hand::Result<Vec<f64>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        println!("q = {:+.3?}  worst |analytic - oracle| = {worst:.2e}", q);
    }
    Ok(())
}
