//! Contact forces for a unit actuator force, and how the verdict depends on
//! which phalanges actually touch the object.

use spatial_hand::{forces_at, home_angles, stability_predicate, ContactConfig, DesignParams};

fn main() -> spatial_hand::Result<()> {
    let p = DesignParams::reference();
    let home = home_angles(&p)?;
    let mut c = ContactConfig::from_params(&p);

    for (d2, d6) in [(0.0, 0.0), (0.3, 0.0), (0.0, 0.3), (-0.3, -0.3)] {
        let mut a = home;
        a.theta2 += d2;
        a.theta6 += d6;
        let sol = forces_at(&p, &c, a)?;
        println!(
            "dtheta2 {d2:+.1} dtheta6 {d6:+.1}: f = [{:+.5}, {:+.5}, {:+.5}, {:+.5}] N  stable {}  cond {:.1}",
            sol.f[0], sol.f[1], sol.f[2], sol.f[3], sol.stable, sol.condition_estimate
        );
    }

    // a distal-only pinch ignores the proximal contacts in the verdict
    c.active = [false, false, false, true];
    let sol = forces_at(&p, &c, home)?;
    println!(
        "distal only: f4 = {:+.5} N, stable {}",
        sol.f[3],
        stability_predicate(&sol, &c)
    );
    Ok(())
}
