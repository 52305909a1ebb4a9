//! Building contact points from homogeneous transform chains and measuring
//! the plane-intersection angles of the spherical mechanism.

use std::f64::consts::PI;

use spatial_hand::geom3::{rx, rz};
use spatial_hand::kinematics::{axis_directions, rho, rho_prime};
use spatial_hand::{compose, home_pose, plane_intersection_angle, DesignParams, Transform4, Vec3};

fn main() -> spatial_hand::Result<()> {
    let p = DesignParams::reference();
    let s = home_pose(&p)?;

    // coupler orientation, then down to P6 and along the intermediate phalanx
    let w = rz(s.theta2) * rx(p.alpha) * rz(s.theta3) * rx(p.eta / 2.0);
    let chain = [
        Transform4::rotation_by(w),
        Transform4::trans_z(-p.z1())?,
        Transform4::rot_y(-s.theta6 - PI)?,
        Transform4::trans_y(p.q3)?,
        Transform4::trans_z(p.k3)?,
    ];
    let s3 = compose(&chain)?.apply_point(&Vec3::zeros());
    println!("S3 at home = ({:.4}, {:.4}, {:.4}) mm", s3.x, s3.y, s3.z);

    let u = axis_directions(&p, s.theta2, s.theta3);
    let direct = plane_intersection_angle(&u[0], (&u[0], &u[3]), (&u[1], &u[2]))?;
    println!(
        "rho  = {:.9} rad (direct {:.9})",
        rho(&p, s.theta2, s.theta3)?,
        direct
    );
    println!("rho' = {:.9} rad", rho_prime(&p, s.theta2, s.theta3)?);
    Ok(())
}
