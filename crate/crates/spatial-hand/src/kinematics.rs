//! Finger kinematics: home pose, the spherical parallel mechanism, the
//! virtual two-DOF mechanism around P6 and the passive angles of the
//! distal actuation loops.
//!
//! Frame R2 has its origin at the sphere centre C with `z` along O2→C.
//! Each spherical joint Oi sits at `-R * ui`, where `ui` is the unit
//! direction from Oi towards C returned by [`axis_directions`].

use std::f64::consts::{PI, TAU};

use nalgebra::Matrix3;

use crate::error::{acos_checked, guard, harmonic_root, HandError, Result};
use crate::geom3::{plane_intersection_angle, rx, rz, Vec3};

/// Geometric constants of one finger (mm, rad, N).
#[derive(Clone, Debug, PartialEq)]
pub struct DesignParams {
    pub l1: f64,
    pub l2: f64,
    pub l3: f64,
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
    pub k4: f64,
    pub q3: f64,
    pub q4: f64,
    pub delta7: f64,
    pub alpha: f64,
    pub eta: f64,
    pub f10: f64,
}

impl Default for DesignParams {
    fn default() -> Self {
        Self::reference()
    }
}

impl DesignParams {
    /// Reference design: 61/41/38 mm phalanges, α = 85°, η = 40°, 1 N actuator.
    pub fn reference() -> Self {
        let (l1, l2, l3) = (61.0, 41.0, 38.0);
        DesignParams {
            l1,
            l2,
            l3,
            a0: 100.0,
            a1: 38.0,
            a2: 38.0,
            a3: 38.0,
            b1: 58.0,
            b2: 58.0,
            b3: 58.0,
            c0: 28.0,
            c1: 16.0,
            c2: 16.0,
            c3: 16.0,
            k1: l1 / 2.0,
            k2: l1 / 2.0,
            k3: l2 / 2.0,
            k4: l3 / 2.0,
            q3: 0.0,
            q4: 0.0,
            delta7: PI / 2.0,
            alpha: 85f64.to_radians(),
            eta: 40f64.to_radians(),
            f10: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let lengths = [
            ("l1", self.l1),
            ("l2", self.l2),
            ("l3", self.l3),
            ("a0", self.a0),
            ("a1", self.a1),
            ("a2", self.a2),
            ("a3", self.a3),
            ("b1", self.b1),
            ("b2", self.b2),
            ("b3", self.b3),
            ("c0", self.c0),
            ("c1", self.c1),
            ("c2", self.c2),
            ("c3", self.c3),
            ("k1", self.k1),
            ("k2", self.k2),
            ("k3", self.k3),
            ("k4", self.k4),
        ];
        for (name, v) in lengths {
            if !(v.is_finite() && v > 0.0) {
                return Err(HandError::InvalidArgument(format!(
                    "{name} must be a positive length, got {v}"
                )));
            }
        }
        for (name, v) in [
            ("q3", self.q3),
            ("q4", self.q4),
            ("delta7", self.delta7),
            ("f10", self.f10),
        ] {
            if !v.is_finite() {
                return Err(HandError::InvalidArgument(format!(
                    "{name} must be finite, got {v}"
                )));
            }
        }
        if !(self.alpha > 0.0 && self.alpha < PI) {
            return Err(HandError::InvalidArgument(
                "alpha must be in (0, 180) degrees".into(),
            ));
        }
        if !(self.eta > 0.0 && self.eta < PI) {
            return Err(HandError::InvalidArgument(
                "eta must be in (0, 180) degrees".into(),
            ));
        }
        let t = (self.alpha / 2.0).tan() * (self.eta / 2.0).tan();
        if (t - 1.0).abs() < crate::error::SINGULAR_EPS {
            return Err(HandError::InvalidArgument(
                "tan(alpha/2)*tan(eta/2) must differ from 1".into(),
            ));
        }
        Ok(())
    }

    /// Distance from C to P1 (and to P5).
    pub fn z1(&self) -> f64 {
        self.l1 * (self.eta / 2.0).cos() / (2.0 * (self.alpha / 2.0).sin())
    }

    /// Common distance |CO2| = |CO3| = |CO4| = |CO5|; `l1` is the chord O2O3.
    pub fn sphere_radius(&self) -> f64 {
        self.l1 / (2.0 * (self.alpha / 2.0).sin())
    }
}

/// The four actuated or self-adapting joint angles.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ActiveAngles {
    pub theta1: f64,
    pub theta2: f64,
    pub theta6: f64,
    pub theta7: f64,
}

impl ActiveAngles {
    pub fn to_array(self) -> [f64; 4] {
        [self.theta1, self.theta2, self.theta6, self.theta7]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        ActiveAngles {
            theta1: a[0],
            theta2: a[1],
            theta6: a[2],
            theta7: a[3],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AssemblyMode {
    Parallelogram,
    AntiParallelogram,
}

/// Active angles plus every passive angle of the four loops.
#[derive(Clone, Debug, PartialEq)]
pub struct FingerState {
    pub theta1: f64,
    pub theta2: f64,
    pub theta3: f64,
    pub theta5: f64,
    pub theta6: f64,
    pub theta7: f64,
    pub nu1: f64,
    /// Azimuth of C→P6 about the P1 axis, kept in `[0, 2π)` so that it is
    /// continuous through the symmetric home pose where it equals π.
    pub psi1: f64,
    pub psi2: f64,
    pub psi4: f64,
    pub psi5: f64,
    pub psi6: f64,
    pub assembly_mode: AssemblyMode,
}

impl FingerState {
    pub fn solve(p: &DesignParams, a: ActiveAngles) -> Result<Self> {
        p.validate()?;
        for v in a.to_array() {
            if !v.is_finite() {
                return Err(HandError::InvalidArgument(format!(
                    "joint angle must be finite, got {v}"
                )));
            }
        }
        let theta3 = solve_theta3(p, a.theta2)?;
        let theta5 = theta5_from_theta3(p, a.theta2, theta3);
        let (nu1, psi1) = virtual_from_p6(p, &p6_position_at(p, a.theta2, theta3))?;
        let psi6 = -psi1;
        let psi5 = psi5(p, a.theta6, a.theta7, psi6)?;
        let psi4 = psi4(p, nu1, psi5)?;
        let psi2 = psi2(p, nu1, psi5)?;
        let assembly_mode = if (theta3 + theta5).abs() < 1e-6 {
            AssemblyMode::Parallelogram
        } else {
            AssemblyMode::AntiParallelogram
        };
        Ok(FingerState {
            theta1: a.theta1,
            theta2: a.theta2,
            theta3,
            theta5,
            theta6: a.theta6,
            theta7: a.theta7,
            nu1,
            psi1,
            psi2,
            psi4,
            psi5,
            psi6,
            assembly_mode,
        })
    }

    pub fn active(&self) -> ActiveAngles {
        ActiveAngles {
            theta1: self.theta1,
            theta2: self.theta2,
            theta6: self.theta6,
            theta7: self.theta7,
        }
    }
}

/// Spring-returned neutral posture.
pub fn home_angles(p: &DesignParams) -> Result<ActiveAngles> {
    p.validate()?;
    let (al, et) = (p.alpha, p.eta);
    let se2 = (et / 2.0).sin();
    let ce2 = (et / 2.0).cos();
    let theta1 = 0.5 * acos_checked((al.cos() - se2 * se2) / (ce2 * ce2), "home theta1")?;
    let t = (al / 2.0).tan() * (et / 2.0).tan();
    let radicand = (-t - 1.0) / (t - 1.0);
    if !(radicand >= 0.0) {
        return Err(HandError::GeometryInfeasible {
            context: "home theta2",
            value: radicand,
        });
    }
    let theta2 = -2.0 * radicand.sqrt().atan();
    let theta6 =
        -0.5 * acos_checked(
            (2.0 * al.cos() + et.cos() - 1.0) / (et.cos() + 1.0),
            "home theta6",
        )? - PI / 2.0;
    let theta7 = PI - p.delta7;
    Ok(ActiveAngles {
        theta1,
        theta2,
        theta6,
        theta7,
    })
}

pub fn home_pose(p: &DesignParams) -> Result<FingerState> {
    FingerState::solve(p, home_angles(p)?)
}

/// Passive angle at O3 of the spherical parallelogram.
///
/// The `+acos` root is used for `0 < θ2 < π`, the `-acos` root otherwise
/// (θ2 = 0 falls in the second branch; both roots coincide there).
pub fn solve_theta3(p: &DesignParams, theta2: f64) -> Result<f64> {
    if !theta2.is_finite() {
        return Err(HandError::InvalidArgument(format!(
            "theta2 must be finite, got {theta2}"
        )));
    }
    let (sa, ca) = p.alpha.sin_cos();
    let (se, ce) = p.eta.sin_cos();
    let (s2, c2) = theta2.sin_cos();
    let a = sa * sa * ce * c2 - sa * se * ca;
    let b = sa * sa * s2;
    let c = (sa * ce - se * ca * c2) * sa;
    let sign = if theta2 > 0.0 && theta2 < PI {
        1.0
    } else {
        -1.0
    };
    // the closed form is written as -atan2(B, A) ± acos(...)
    let neg = harmonic_root(a, -b, c, sign, "spherical closure (theta3)")?;
    Ok(wrap_pi(neg))
}

/// Chain angle at O5, defined by `u4 = Rx(η) Rz(θ5) Rx(α) e_z`.
pub fn theta5_from_theta3(p: &DesignParams, theta2: f64, theta3: f64) -> f64 {
    let u4 = axis_directions(p, theta2, theta3)[2];
    let v = rx(-p.eta) * u4;
    v.x.atan2(-v.y)
}

pub fn solve_theta5(p: &DesignParams, theta2: f64) -> Result<f64> {
    let theta3 = solve_theta3(p, theta2)?;
    Ok(theta5_from_theta3(p, theta2, theta3))
}

/// Unit directions Oi→C for O2, O3, O4, O5.
pub fn axis_directions(p: &DesignParams, theta2: f64, theta3: f64) -> [Vec3; 4] {
    let ez = Vec3::z();
    let base = rz(theta2) * rx(p.alpha);
    [
        ez,
        base * ez,
        base * rz(theta3) * rx(p.eta) * ez,
        rx(p.eta) * ez,
    ]
}

/// `u4 · u5 − cos α`; zero when the link O4O5 spans the angle α.
pub fn spherical_residual(p: &DesignParams, theta2: f64, theta3: f64) -> f64 {
    let u = axis_directions(p, theta2, theta3);
    u[2].dot(&u[3]) - p.alpha.cos()
}

/// Distance between O4 reached through O5 with `theta5` and through O3 with `theta3`.
pub fn theta5_residual(p: &DesignParams, theta2: f64, theta3: f64, theta5: f64) -> f64 {
    let via5 = rx(p.eta) * rz(theta5) * rx(p.alpha) * Vec3::z();
    (via5 - axis_directions(p, theta2, theta3)[2]).norm()
}

/// Rotation from R2 to the coupler mid-frame; its `z` column is the unit C→P6 direction reversed.
pub fn coupler_frame(p: &DesignParams, theta2: f64, theta3: f64) -> Matrix3<f64> {
    rz(theta2) * rx(p.alpha) * rz(theta3) * rx(p.eta / 2.0)
}

/// Angle from O2 to the intersection of planes (O2 C O5) and (O3 C O4).
pub fn rho(p: &DesignParams, theta2: f64, theta3: f64) -> Result<f64> {
    let u = axis_directions(p, theta2, theta3);
    plane_intersection_angle(&u[0], (&u[0], &u[3]), (&u[1], &u[2]))
}

/// Angle from O2 to the intersection of planes (O2 C O3) and (O4 C O5).
pub fn rho_prime(p: &DesignParams, theta2: f64, theta3: f64) -> Result<f64> {
    let u = axis_directions(p, theta2, theta3);
    plane_intersection_angle(&u[0], (&u[0], &u[1]), (&u[2], &u[3]))
}

/// dθ3/dθ2 from the instantaneous pole of the coupler.
pub fn theta3_rate(p: &DesignParams, theta2: f64, theta3: f64) -> Result<f64> {
    let r = rho_prime(p, theta2, theta3)?;
    let den = guard((r - p.alpha).sin(), "sin(rho' - alpha)")?;
    Ok(-r.sin() / den)
}

/// dθ5/dθ2, the output-to-input rate of the spherical four-bar.
pub fn theta5_rate(p: &DesignParams, theta2: f64, theta3: f64) -> Result<f64> {
    let r = rho(p, theta2, theta3)?;
    let den = guard((r - p.eta).sin(), "sin(rho - eta)")?;
    Ok(r.sin() / den)
}

/// P6 in R2 (mm) for a known θ3.
pub fn p6_position_at(p: &DesignParams, theta2: f64, theta3: f64) -> Vec3 {
    let (sa, ca) = p.alpha.sin_cos();
    let (se, ce) = (p.eta / 2.0).sin_cos();
    let (s2, c2) = theta2.sin_cos();
    let (s3, c3) = theta3.sin_cos();
    let w = Vec3::new(
        c2 * se * s3 + s2 * (se * c3 * ca + ce * sa),
        s2 * se * s3 - c2 * (se * c3 * ca + ce * sa),
        ce * ca - se * c3 * sa,
    );
    -p.z1() * w
}

pub fn p6_position(p: &DesignParams, theta2: f64) -> Result<Vec3> {
    Ok(p6_position_at(p, theta2, solve_theta3(p, theta2)?))
}

/// dP6/dθ2 in R2 (mm/rad) for a known θ3.
pub fn p6_velocity_at(p: &DesignParams, theta2: f64, theta3: f64) -> Result<Vec3> {
    let t3d = theta3_rate(p, theta2, theta3)?;
    let z1 = p.z1();
    let (sa, ca) = p.alpha.sin_cos();
    let (se, ce) = (p.eta / 2.0).sin_cos();
    let (s2, c2) = theta2.sin_cos();
    let (s3, c3) = theta3.sin_cos();
    let x =
        -z1 * ((-t3d * s2 * s3 * ca + t3d * c2 * c3 - s2 * s3 + ca * c2 * c3) * se + sa * ce * c2);
    let y =
        -z1 * ((t3d * s2 * c3 + t3d * s3 * ca * c2 + s2 * ca * c3 + s3 * c2) * se + sa * s2 * ce);
    let z = -z1 * t3d * sa * se * s3;
    Ok(Vec3::new(x, y, z))
}

pub fn p6_velocity(p: &DesignParams, theta2: f64) -> Result<Vec3> {
    p6_velocity_at(p, theta2, solve_theta3(p, theta2)?)
}

/// (ν1, ψ1) of the virtual mechanism from the position of P6.
pub fn virtual_from_p6(p: &DesignParams, p6: &Vec3) -> Result<(f64, f64)> {
    let z1 = p.z1();
    let (se, ce) = (p.eta / 2.0).sin_cos();
    let nu1 = acos_checked((ce * p6.z - se * p6.y) / z1, "virtual mechanism nu1")?;
    if nu1 < 1e-6 || PI - nu1 < 1e-6 {
        return Err(HandError::Singular {
            context: "virtual mechanism (nu1 at 0 or pi)",
            value: nu1.sin(),
        });
    }
    let psi1 = (-(ce * p6.y + se * p6.z)).atan2(-p6.x).rem_euclid(TAU);
    Ok((nu1, psi1))
}

/// (ν1, ψ1, ψ6) as functions of θ2.
pub fn virtual_mech(p: &DesignParams, theta2: f64) -> Result<(f64, f64, f64)> {
    let (nu1, psi1) = virtual_from_p6(p, &p6_position(p, theta2)?)?;
    Ok((nu1, psi1, -psi1))
}

/// Coefficients of the RSSR closure `d cos ψ5 + e sin ψ5 = f` of the O7-P8-P9-P5 loop.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Loop2Coeffs {
    pub d: f64,
    pub e: f64,
    pub f: f64,
}

/// Entries (s11, s12, s21, s22, X01) of the O7→P5 transfer matrix.
pub(crate) fn mo75(p: &DesignParams, theta6: f64, psi6: f64) -> (f64, f64, f64, f64, f64) {
    let (s6, c6) = theta6.sin_cos();
    let cp = psi6.cos();
    (-c6, -s6 * cp, s6, -cp * c6, p.l2)
}

pub fn loop2_coeffs(p: &DesignParams, theta6: f64, theta7: f64, psi6: f64) -> Loop2Coeffs {
    let (s11, s12, s21, s22, x01) = mo75(p, theta6, psi6);
    let (s7, c7) = theta7.sin_cos();
    let (a2, b2, c2) = (p.a2, p.b2, p.c2);
    Loop2Coeffs {
        d: -2.0 * a2 * c2 * s21 * s7 + 2.0 * a2 * s11 * (x01 - c2 * c7),
        e: -2.0 * a2 * c2 * s22 * s7 + 2.0 * a2 * s12 * (x01 - c2 * c7),
        f: -x01 * x01 + 2.0 * x01 * c2 * c7 - a2 * a2 + b2 * b2 - c2 * c2,
    }
}

pub fn psi5(p: &DesignParams, theta6: f64, theta7: f64, psi6: f64) -> Result<f64> {
    let k = loop2_coeffs(p, theta6, theta7, psi6);
    harmonic_root(k.d, k.e, k.f, -1.0, "RSSR loop (psi5)")
}

/// Normalised closure residual of the RSSR loop.
pub fn loop2_residual(p: &DesignParams, theta6: f64, theta7: f64, psi6: f64, psi5: f64) -> f64 {
    let k = loop2_coeffs(p, theta6, theta7, psi6);
    (k.d * psi5.cos() + k.e * psi5.sin() - k.f) / k.d.hypot(k.e)
}

/// |P5 P2| of the planar five-bar.
pub fn l1_prime(p: &DesignParams, nu1: f64) -> f64 {
    2.0 * p.z1() * (nu1 / 2.0).cos()
}

pub fn psi5_prime(nu1: f64, psi5: f64) -> f64 {
    -nu1 / 2.0 - psi5
}

pub fn psi4(p: &DesignParams, nu1: f64, psi5: f64) -> Result<f64> {
    let l1p = l1_prime(p, nu1);
    let (s, c) = psi5_prime(nu1, psi5).sin_cos();
    let (a1, b1, c1) = (p.a1, p.b1, p.c1);
    let a = 2.0 * b1 * c1 - 2.0 * b1 * l1p * c;
    let b = 2.0 * b1 * l1p * s;
    let cc = a1 * a1 - b1 * b1 - c1 * c1 + 2.0 * c1 * l1p * c - l1p * l1p;
    harmonic_root(a, b, cc, -1.0, "five-bar loop (psi4)")
}

/// Absolute angle of P2→P3 measured from P5→P2.
pub fn psi2_prime(p: &DesignParams, nu1: f64, psi5: f64) -> Result<f64> {
    let l1p = l1_prime(p, nu1);
    let (s, c) = psi5_prime(nu1, psi5).sin_cos();
    let (a1, b1, c1) = (p.a1, p.b1, p.c1);
    let a = 2.0 * a1 * c1 * c - 2.0 * a1 * l1p;
    let b = 2.0 * a1 * c1 * s;
    let cc = a1 * a1 - b1 * b1 + c1 * c1 - 2.0 * c1 * l1p * c + l1p * l1p;
    harmonic_root(a, b, cc, -1.0, "five-bar loop (psi2')")
}

pub fn psi2(p: &DesignParams, nu1: f64, psi5: f64) -> Result<f64> {
    Ok(psi2_prime(p, nu1, psi5)? - nu1 / 2.0)
}

/// Largest of the two five-bar closure residuals (mm): |P3 P2| − a1 and |P3 P4| − b1,
/// with P3 placed once through ψ4 and once through ψ2.
pub fn loop3_residual(p: &DesignParams, nu1: f64, psi5: f64, psi4: f64, psi2: f64) -> f64 {
    let l1p = l1_prime(p, nu1);
    let p5p = psi5_prime(nu1, psi5);
    let p4 = (p.c1 * p5p.cos(), p.c1 * p5p.sin());
    let via4 = (
        p4.0 + p.b1 * (p5p + psi4).cos(),
        p4.1 + p.b1 * (p5p + psi4).sin(),
    );
    let psi2p = psi2 + nu1 / 2.0;
    let via2 = (l1p + p.a1 * psi2p.cos(), p.a1 * psi2p.sin());
    let r4 = ((via4.0 - l1p).hypot(via4.1) - p.a1).abs();
    let r2 = ((via2.0 - p4.0).hypot(via2.1 - p4.1) - p.b1).abs();
    r4.max(r2)
}

/// Actuator length |P9 P11|.
pub fn d0(p: &DesignParams, theta1: f64, psi1: f64, psi2: f64) -> Result<f64> {
    let inner = p.a0 * p.a0
        + 2.0 * p.a0 * p.c0 * (psi2.sin() * theta1.sin() * psi1.cos() + psi2.cos() * theta1.cos())
        + p.c0 * p.c0;
    if !(inner > crate::error::SINGULAR_EPS * crate::error::SINGULAR_EPS) {
        return Err(HandError::GeometryInfeasible {
            context: "actuator length d0",
            value: inner,
        });
    }
    Ok(inner.sqrt())
}

/// Auxiliary lengths and angles of loops 2 to 4.
#[derive(Clone, Debug, PartialEq)]
pub struct LoopAux {
    pub l1p: f64,
    pub l2p: f64,
    pub l2pp: f64,
    pub z_p6p8: f64,
    pub c1p: f64,
    pub d0: f64,
    pub psi5p: f64,
    pub theta6p: f64,
    pub nu1p: f64,
    pub psi4p: f64,
    pub psi2p: f64,
    pub rho: f64,
    pub rho_p: f64,
    pub h1: f64,
    pub h2: f64,
}

pub fn l2_prime(p: &DesignParams, theta7: f64) -> f64 {
    (p.c2 * p.c2 - 2.0 * p.c2 * p.l2 * theta7.cos() + p.l2 * p.l2).sqrt()
}

/// Angle at O6 between O6O7 and O6P8.
pub fn theta6_prime(p: &DesignParams, theta7: f64) -> Result<f64> {
    let l2p = guard(l2_prime(p, theta7), "l2'")?;
    let a = acos_checked(
        (p.l2 * p.l2 + l2p * l2p - p.c2 * p.c2) / (2.0 * p.l2 * l2p),
        "theta6'",
    )?;
    let t7 = theta7.rem_euclid(TAU);
    Ok(if t7 > PI && t7 < TAU { a } else { -a })
}

pub fn loop_aux(p: &DesignParams, s: &FingerState) -> Result<LoopAux> {
    let z1 = p.z1();
    let l1p = l1_prime(p, s.nu1);
    let psi5p = psi5_prime(s.nu1, s.psi5);
    let l2p = l2_prime(p, s.theta7);
    let theta6p = theta6_prime(p, s.theta7)?;
    let l2pp = p.c2 * (s.theta6 + s.theta7).sin() - p.l2 * s.theta6.sin();
    let z_p6p8 = p.c2 * (s.theta6 + s.theta7).cos() - p.l2 * s.theta6.cos();

    let c1p = (p.c1 * p.c1 - 2.0 * p.c1 * z1 * s.psi5.cos() + z1 * z1).sqrt();
    let beta = if c1p < crate::error::SINGULAR_EPS {
        0.0
    } else {
        acos_checked(
            (-p.c1 * p.c1 + c1p * c1p + z1 * z1) / (2.0 * c1p * z1),
            "nu1'",
        )?
    };
    let nu1p = PI - s.nu1 + s.psi5.signum() * beta;
    let (a1, b1) = (p.a1, p.b1);
    let psi4p = harmonic_root(
        2.0 * b1 * c1p - 2.0 * b1 * z1 * nu1p.cos(),
        2.0 * b1 * z1 * nu1p.sin(),
        a1 * a1 - b1 * b1 - c1p * c1p + 2.0 * c1p * z1 * nu1p.cos() - z1 * z1,
        -1.0,
        "five-bar loop (psi4')",
    )?;
    let h1 = -c1p * psi4p.sin() / guard((nu1p + psi4p).sin(), "sin(nu1' + psi4')")?;
    let h2 = -p.c1 * s.psi4.sin() / guard((s.psi4 + psi5p).sin(), "sin(psi4 + psi5')")?;

    Ok(LoopAux {
        l1p,
        l2p,
        l2pp,
        z_p6p8,
        c1p,
        d0: d0(p, s.theta1, s.psi1, s.psi2)?,
        psi5p,
        theta6p,
        nu1p,
        psi4p,
        psi2p: s.psi2 + s.nu1 / 2.0,
        rho: rho(p, s.theta2, s.theta3)?,
        rho_p: rho_prime(p, s.theta2, s.theta3)?,
        h1,
        h2,
    })
}

/// Wraps an angle into `(-π, π]`.
pub fn wrap_pi(a: f64) -> f64 {
    let w = a.rem_euclid(TAU);
    if w > PI {
        w - TAU
    } else {
        w
    }
}
