//! With ψ6 = 0 the distal RSSR loop is a planar four-bar, so its ratio can be
//! checked against the textbook formula.

use std::f64::consts::PI;

use spatial_hand::kinematics::psi5;
use spatial_hand::oracle::{planar_4bar_fd, planar_4bar_output, planar_4bar_ratio};
use spatial_hand::transmission::loop2_gamma5_theta7;
use spatial_hand::{home_pose, DesignParams};

fn main() -> spatial_hand::Result<()> {
    // parallelogram: crank equals rocker, coupler equals frame
    for branch in [1.0, -1.0] {
        let phi = planar_4bar_output(20.0, 50.0, 20.0, 50.0, 1.0, branch)?;
        let r = planar_4bar_ratio(20.0, 50.0, 20.0, 50.0, 1.0, branch)?;
        println!("equal-link four-bar, branch {branch:+}: phi {phi:.9}, ratio {r:.12}");
    }

    let p = DesignParams::reference();
    let mut s = home_pose(&p)?;
    s.psi6 = 0.0;
    s.psi5 = psi5(&p, s.theta6, s.theta7, 0.0)?;
    let analytic = loop2_gamma5_theta7(&p, &s)?;

    let phi = s.psi5 + PI - s.theta6;
    for branch in [1.0, -1.0] {
        let out = planar_4bar_output(p.c2, p.b2, p.a2, p.l2, s.theta7, branch)?;
        if ((out - phi).rem_euclid(2.0 * PI)).min((phi - out).rem_euclid(2.0 * PI)) < 1e-9 {
            let formula = planar_4bar_ratio(p.c2, p.b2, p.a2, p.l2, s.theta7, branch)?;
            let fd = planar_4bar_fd(p.c2, p.b2, p.a2, p.l2, s.theta7, branch)?;
            println!("Gamma5/Theta7 at psi6 = 0: analytic {analytic:.12}, planar {formula:.12}, fd {fd:.12}");
        }
    }
    Ok(())
}
