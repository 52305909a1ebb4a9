//! Contact geometry on the three phalanges and the contact matrix `J`
//! mapping contact forces to joint torques.
//!
//! Contacts 1 and 2 sit on the two proximal links of the spherical
//! mechanism (O2O3 and O5O4), contact 3 on the intermediate phalanx and
//! contact 4 on the distal one. Forces are unit pushes from the object onto
//! the finger, so a positive magnitude means the phalanx presses the object.

use std::f64::consts::PI;

use nalgebra::{Matrix3, Matrix4};

use crate::error::{acos_checked, HandError, Result};
use crate::geom3::{rx, ry, rz, skew, Vec3};
use crate::kinematics::{
    axis_directions, coupler_frame, theta3_rate, theta5_rate, DesignParams, FingerState,
};

/// Lever arms, lateral offsets and which of the four contacts are present.
#[derive(Clone, Debug, PartialEq)]
pub struct ContactConfig {
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
    pub k4: f64,
    pub q3: f64,
    pub q4: f64,
    pub active: [bool; 4],
}

impl ContactConfig {
    /// Lever arms and offsets taken from the design, all contacts active.
    pub fn from_params(p: &DesignParams) -> Self {
        ContactConfig {
            k1: p.k1,
            k2: p.k2,
            k3: p.k3,
            k4: p.k4,
            q3: p.q3,
            q4: p.q4,
            active: [true; 4],
        }
    }

    pub fn validate(&self, p: &DesignParams) -> Result<()> {
        for (name, k, len) in [
            ("k1", self.k1, p.l1),
            ("k2", self.k2, p.l1),
            ("k3", self.k3, p.l2),
            ("k4", self.k4, p.l3),
        ] {
            if !(k > 0.0 && k <= len) {
                return Err(HandError::InvalidArgument(format!(
                    "{name} must be in (0, {len}], got {k}"
                )));
            }
        }
        if !(self.q3.is_finite() && self.q4.is_finite()) {
            return Err(HandError::InvalidArgument(
                "contact offsets must be finite".into(),
            ));
        }
        Ok(())
    }
}

/// Half-angles that make f1, f2 parallel to f3, f4 in the neutral posture.
pub fn contact_angles(p: &DesignParams) -> Result<(f64, f64)> {
    let ch = (p.alpha / 2.0).cos();
    let sh = (p.alpha / 2.0).sin();
    let m1 = 0.5 * acos_checked((p.eta.cos() - sh * sh) / (ch * ch), "contact angle m1")?;
    Ok((m1, -m1))
}

/// `(Θ7/f4, Θ6/f4, Θ6/f3)`, the lever arms of the planar distal part.
pub fn planar_ratios(p: &DesignParams, s: &FingerState, c: &ContactConfig) -> (f64, f64, f64) {
    (c.k4, c.k4 - p.l2 * (p.delta7 + s.theta7).cos(), c.k3)
}

/// `(Θ2/f1, Θ2/f2)`. Contact 2 is carried by the O5 link, which turns by
/// `dθ5/dθ2` per unit θ2.
pub fn spherical_contact_ratios(
    p: &DesignParams,
    s: &FingerState,
    c: &ContactConfig,
) -> Result<(f64, f64)> {
    let (m1, m2) = contact_angles(p)?;
    let ch = (p.alpha / 2.0).cos();
    let t5 = theta5_rate(p, s.theta2, s.theta3)?;
    Ok((c.k1 * m1.sin() * ch, t5 * c.k2 * m2.sin() * ch))
}

/// Chain angle of the intermediate phalanx about the coupler `y` axis.
fn phi6(s: &FingerState) -> f64 {
    -s.theta6 - PI
}

/// Chain angle of the distal phalanx relative to the intermediate one.
fn phi7(p: &DesignParams, s: &FingerState) -> f64 {
    PI - p.delta7 - s.theta7
}

/// S3 and S4 expressed in the coupler frame, relative to C.
fn distal_local(p: &DesignParams, s: &FingerState, c: &ContactConfig) -> (Vec3, Vec3) {
    let r6 = ry(phi6(s));
    let base = Vec3::new(0.0, 0.0, -p.z1());
    let s3 = base + r6 * Vec3::new(0.0, c.q3, c.k3);
    let s4 = base + r6 * (Vec3::new(0.0, 0.0, p.l2) + ry(phi7(p, s)) * Vec3::new(0.0, c.q4, c.k4));
    (s3, s4)
}

/// Contact points S1..S4 in R2 (mm).
pub fn contact_points(p: &DesignParams, s: &FingerState, c: &ContactConfig) -> [Vec3; 4] {
    let r = p.sphere_radius();
    let u = axis_directions(p, s.theta2, s.theta3);
    let s1 = -r * (u[0] + (c.k1 / p.l1) * (u[1] - u[0]));
    let s2 = -r * (u[3] + (c.k2 / p.l1) * (u[2] - u[3]));
    let w = coupler_frame(p, s.theta2, s.theta3);
    let (l3, l4) = distal_local(p, s, c);
    [s1, s2, w * l3, w * l4]
}

/// dW/dθ2 for the coupler frame.
fn coupler_frame_rate(p: &DesignParams, s: &FingerState) -> Result<Matrix3<f64>> {
    let t3d = theta3_rate(p, s.theta2, s.theta3)?;
    let ez = skew(&Vec3::z());
    let (a, b, c, d) = (rz(s.theta2), rx(p.alpha), rz(s.theta3), rx(p.eta / 2.0));
    Ok(a * ez * b * c * d + t3d * (a * b * c * ez * d))
}

/// dS3/dθ2 and dS4/dθ2 in R2 (mm/rad).
pub fn distal_velocities(
    p: &DesignParams,
    s: &FingerState,
    c: &ContactConfig,
) -> Result<(Vec3, Vec3)> {
    let wd = coupler_frame_rate(p, s)?;
    let (l3, l4) = distal_local(p, s, c);
    Ok((wd * l3, wd * l4))
}

/// Unit contact-force directions in R2.
pub fn force_directions(p: &DesignParams, s: &FingerState) -> Result<[Vec3; 4]> {
    let (m1, m2) = contact_angles(p)?;
    let half = rx(p.alpha / 2.0);
    let f1 = -(rz(s.theta2) * half * Vec3::new(m1.sin(), 0.0, m1.cos()));
    let f2 = -(rx(p.eta) * rz(s.theta5) * half * Vec3::new(m2.sin(), 0.0, m2.cos()));
    let w = coupler_frame(p, s.theta2, s.theta3);
    let r6 = ry(phi6(s));
    let f3 = -(w * r6 * Vec3::x());
    let f4 = -(w * r6 * ry(phi7(p, s)) * Vec3::x());
    Ok([f1, f2, f3, f4])
}

/// P1, origin of the frame R1 attached to the palm joint θ1, in R2.
pub fn r1_origin(p: &DesignParams) -> Vec3 {
    -p.z1() * (rx(p.eta / 2.0) * Vec3::z())
}

/// Point of R2 expressed in R1.
pub fn to_r1_point(p: &DesignParams, v: &Vec3) -> Vec3 {
    rx(-p.eta / 2.0) * (v - r1_origin(p))
}

/// Direction of R2 expressed in R1.
pub fn to_r1_vector(p: &DesignParams, v: &Vec3) -> Vec3 {
    rx(-p.eta / 2.0) * v
}

/// `Θ1/f` for a contact at `point` with direction `dir`, both in R2.
pub fn theta1_ratio(p: &DesignParams, point: &Vec3, dir: &Vec3) -> f64 {
    let sp = to_r1_point(p, point);
    let f = to_r1_vector(p, dir);
    sp.x * f.z - sp.z * f.x
}

/// `J`, rows f1..f4 and columns (Θ1, Θ2, Θ6, Θ7).
#[derive(Clone, Debug, PartialEq)]
pub struct ContactJacobian(pub Matrix4<f64>);

impl ContactJacobian {
    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    /// Row-major index pairs that are zero by construction.
    pub const ZEROS: [(usize, usize); 5] = [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
}

#[allow(non_snake_case)]
pub fn assemble_J(p: &DesignParams, s: &FingerState, c: &ContactConfig) -> Result<ContactJacobian> {
    c.validate(p)?;
    let pts = contact_points(p, s, c);
    let dirs = force_directions(p, s)?;
    let (t2f1, t2f2) = spherical_contact_ratios(p, s, c)?;
    let (v3, v4) = distal_velocities(p, s, c)?;
    let (t7f4, t6f4, t6f3) = planar_ratios(p, s, c);

    let mut j = Matrix4::zeros();
    for i in 0..4 {
        j[(i, 0)] = theta1_ratio(p, &pts[i], &dirs[i]);
    }
    j[(0, 1)] = t2f1;
    j[(1, 1)] = t2f2;
    j[(2, 1)] = v3.dot(&dirs[2]);
    j[(3, 1)] = v4.dot(&dirs[3]);
    j[(2, 2)] = t6f3;
    j[(3, 2)] = t6f4;
    j[(3, 3)] = t7f4;
    Ok(ContactJacobian(j))
}
