//! Neutral posture of the reference finger and the auxiliary loop quantities.

use spatial_hand::{home_pose, loop_aux, DesignParams};

fn main() -> spatial_hand::Result<()> {
    let p = DesignParams::reference();
    let s = home_pose(&p)?;
    let aux = loop_aux(&p, &s)?;

    println!(
        "z1 = {:.6} mm, sphere radius = {:.6} mm",
        p.z1(),
        p.sphere_radius()
    );
    println!(
        "active   theta1 {:+.6}  theta2 {:+.6}  theta6 {:+.6}  theta7 {:+.6}",
        s.theta1, s.theta2, s.theta6, s.theta7
    );
    println!(
        "sphere   theta3 {:+.6}  theta5 {:+.6}  ({:?})",
        s.theta3, s.theta5, s.assembly_mode
    );
    println!(
        "virtual  nu1 {:+.6}  psi1 {:+.6}  psi6 {:+.6}",
        s.nu1, s.psi1, s.psi6
    );
    println!(
        "loops    psi5 {:+.6}  psi4 {:+.6}  psi2 {:+.6}",
        s.psi5, s.psi4, s.psi2
    );
    println!(
        "aux      l1' {:.6}  l2' {:.6}  c1' {:.6}  d0 {:.6}",
        aux.l1p, aux.l2p, aux.c1p, aux.d0
    );
    Ok(())
}
