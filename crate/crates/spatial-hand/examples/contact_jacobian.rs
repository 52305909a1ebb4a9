//! Contact points, force directions and the contact matrix J.

use spatial_hand::contact::{contact_points, force_directions};
use spatial_hand::{assemble_J, contact_angles, home_pose, ContactConfig, DesignParams};

fn main() -> spatial_hand::Result<()> {
    let p = DesignParams::reference();
    let s = home_pose(&p)?;
    let c = ContactConfig::from_params(&p);

    let (m1, m2) = contact_angles(&p)?;
    println!("m1 = {m1:.9}, m2 = {m2:.9}");
    let pts = contact_points(&p, &s, &c);
    let dirs = force_directions(&p, &s)?;
    for (i, (x, f)) in pts.iter().zip(&dirs).enumerate() {
        println!(
            "S{} = ({:8.3}, {:8.3}, {:8.3})  f{} = ({:+.4}, {:+.4}, {:+.4})",
            i + 1,
            x.x,
            x.y,
            x.z,
            i + 1,
            f.x,
            f.y,
            f.z
        );
    }
    println!("J = {}", assemble_J(&p, &s, &c)?.matrix());
    Ok(())
}
