//! The twelve loop ratios and the transmission matrix at a bent posture.

use spatial_hand::transmission::{assemble_t_from, ratios};
use spatial_hand::{home_angles, DesignParams, FingerState};

fn main() -> spatial_hand::Result<()> {
    let p = DesignParams::reference();
    let mut a = home_angles(&p)?;
    a.theta2 += 0.2;
    a.theta6 -= 0.3;
    let s = FingerState::solve(&p, a)?;
    let r = ratios(&p, &s)?;

    println!("{r:#?}");
    println!(
        "three-term F10/Theta2 check: {:.3e}",
        r.f10_theta2 - r.compose_f10_theta2()
    );
    println!("T = {}", assemble_t_from(&r).matrix());
    Ok(())
}
