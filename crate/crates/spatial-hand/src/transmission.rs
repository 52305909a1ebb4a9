//! Torque and force transmission ratios of the four actuation loops, and the
//! transmission matrix `T` that maps the actuator force to joint torques.
//!
//! Every ratio is a velocity ratio `d(output)/d(input)`, which by virtual
//! work equals the torque ratio `input torque / output torque`. Torques
//! named Γ1 and Γ6 are conjugate to ψ6, Γ5 to ψ5 and Γ2 to −ψ2.

use nalgebra::Matrix4;

use crate::error::{guard, HandError, Result};
use crate::geom3::{rx, Vec3};
use crate::kinematics::{
    coupler_frame, l2_prime, loop_aux, mo75, p6_velocity_at, theta6_prime, DesignParams,
    FingerState, LoopAux,
};

/// The twelve scalar ratios feeding `T`.
#[derive(Clone, Debug, PartialEq)]
pub struct RatioSet {
    pub gamma1_theta2: f64,
    pub n1_theta2: f64,
    pub gamma6_theta2: f64,
    pub gamma5_theta7: f64,
    pub gamma5_theta6: f64,
    pub gamma5_gamma6: f64,
    pub gamma2_gamma5: f64,
    pub gamma2_n1: f64,
    pub f10_gamma2: f64,
    pub f10_gamma1: f64,
    pub f10_theta1: f64,
    pub f10_theta2: f64,
}

impl RatioSet {
    /// The three-term chain for `F10/Θ2`: through ψ6 directly, through ν1,
    /// and through ψ6 → ψ5 → ψ2.
    pub fn compose_f10_theta2(&self) -> f64 {
        self.gamma1_theta2 * self.f10_gamma1
            + self.n1_theta2 * self.gamma2_n1 * self.f10_gamma2
            + self.gamma6_theta2 * self.gamma5_gamma6 * self.gamma2_gamma5 * self.f10_gamma2
    }
}

/// Loop 1: `(N1/Θ2, Γ1/Θ2, Γ6/Θ2)`.
///
/// Both follow from the rate of the unit vector `w` (C→P6 reversed) in the
/// frame attached at P1; `Γ1/Θ2` and `Γ6/Θ2` are the same number.
pub fn loop1_ratios(p: &DesignParams, s: &FingerState) -> Result<(f64, f64, f64)> {
    let z1 = p.z1();
    let w = coupler_frame(p, s.theta2, s.theta3) * Vec3::z();
    let wd = -p6_velocity_at(p, s.theta2, s.theta3)? / z1;
    let x1 = Vec3::x();
    let y1 = rx(p.eta / 2.0) * Vec3::y();
    let z1dir = rx(p.eta / 2.0) * Vec3::z();

    let n1 = z1dir.dot(&wd) / guard(s.nu1.sin(), "sin(nu1)")?;

    let (wx, wy) = (w.dot(&x1), w.dot(&y1));
    let den = guard(wx * wx + wy * wy, "virtual mechanism azimuth")?;
    let psi1_rate = (wx * wd.dot(&y1) - wy * wd.dot(&x1)) / den;
    let g = -psi1_rate;
    Ok((n1, g, g))
}

/// RSSR dead-point denominator `d sin ψ5 − e cos ψ5`.
fn rssr_den(d: f64, e: f64, psi5: f64) -> Result<f64> {
    guard(d * psi5.sin() - e * psi5.cos(), "RSSR dead point")
}

/// Loop 2, `Γ5/Θ7` on the (O7, P8, P9, P5) loop.
pub fn loop2_gamma5_theta7(p: &DesignParams, s: &FingerState) -> Result<f64> {
    let (s11, s12, s21, s22, x01) = mo75(p, s.theta6, s.psi6);
    let (a2, c2) = (p.a2, p.c2);
    let (s7, c7) = s.theta7.sin_cos();
    let d = -2.0 * a2 * c2 * s21 * s7 + 2.0 * a2 * s11 * (x01 - c2 * c7);
    let e = -2.0 * a2 * c2 * s22 * s7 + 2.0 * a2 * s12 * (x01 - c2 * c7);
    let dp = 2.0 * a2 * c2 * s11 * s7 - 2.0 * a2 * c2 * s21 * c7;
    let ep = 2.0 * a2 * c2 * s12 * s7 - 2.0 * a2 * c2 * s22 * c7;
    let fp = -2.0 * x01 * c2 * s7;
    let (sp, cp) = s.psi5.sin_cos();
    Ok((dp * cp + ep * sp - fp) / rssr_den(d, e, s.psi5)?)
}

/// Loop 2, `Γ5/Θ6` on the (O6, P8, P9, P5) loop.
pub fn loop2_gamma5_theta6(p: &DesignParams, s: &FingerState) -> Result<f64> {
    let k = 2.0 * p.a2 * l2_prime(p, s.theta7);
    let sum = s.theta6 + theta6_prime(p, s.theta7)?;
    let cpsi6 = s.psi6.cos();
    let dp = k * sum.sin();
    let ep = -k * cpsi6 * sum.cos();
    let d = -k * sum.cos();
    let e = -k * cpsi6 * sum.sin();
    let (sp, cp) = s.psi5.sin_cos();
    // positive when θ6 and ψ5 turn together
    Ok((dp * cp + ep * sp) / rssr_den(d, e, s.psi5)?)
}

/// Loop 2, `Γ5/Γ6` on the (P6, P8, P9, P5) loop.
pub fn loop2_gamma5_gamma6(p: &DesignParams, s: &FingerState) -> Result<f64> {
    let a2 = p.a2;
    let l2pp = p.c2 * (s.theta6 + s.theta7).sin() - p.l2 * s.theta6.sin();
    let z = p.c2 * (s.theta6 + s.theta7).cos() - p.l2 * s.theta6.cos();
    let (sp6, cp6) = s.psi6.sin_cos();
    let dp = 2.0 * a2 * l2pp * cp6;
    let ep = -2.0 * a2 * l2pp * sp6;
    let d = 2.0 * z * a2;
    let e = 2.0 * a2 * l2pp * cp6;
    let f = -z * z - a2 * a2 + p.b2 * p.b2 - l2pp * l2pp;
    let n2 = guard(d * d + e * e, "RSSR (psi6) coefficient norm")?;
    let disc = n2 - f * f;
    if !(disc > 1e-12) {
        return Err(HandError::Unreachable {
            context: "RSSR loop (psi6)",
            value: f / n2.sqrt(),
        });
    }
    Ok(d * ep / n2 - dp * ep * f / (n2 * disc.sqrt()))
}

/// Loop 3: `(Γ2/Γ5, Γ2/N1)` of the planar five-bar.
pub fn loop3_ratios(aux: &LoopAux, z1: f64) -> Result<(f64, f64)> {
    let g25 = aux.h2 / guard(aux.h2 + aux.l1p, "h2 + l1'")?;
    let g2n1 = aux.h1 / guard(aux.h1 + z1, "h1 + z1")?;
    Ok((g25, g2n1))
}

/// Loop 4: `(F10/Γ2, F10/Γ1, F10/Θ1)`, derivatives of the actuator length.
pub fn loop4_ratios(p: &DesignParams, s: &FingerState) -> Result<(f64, f64, f64)> {
    let d0 = crate::kinematics::d0(p, s.theta1, s.psi1, s.psi2)?;
    let k = p.a0 * p.c0 / d0;
    let (st1, ct1) = s.theta1.sin_cos();
    let (sp2, cp2) = s.psi2.sin_cos();
    let cp1 = s.psi1.cos();
    let f_g2 = k * (sp2 * ct1 - st1 * cp1 * cp2);
    let f_g1 = -k * s.psi6.sin() * sp2 * st1;
    let f_t1 = k * (sp2 * cp1 * ct1 - st1 * cp2);
    Ok((f_g2, f_g1, f_t1))
}

pub fn ratios(p: &DesignParams, s: &FingerState) -> Result<RatioSet> {
    let aux = loop_aux(p, s)?;
    ratios_with(p, s, &aux)
}

pub fn ratios_with(p: &DesignParams, s: &FingerState, aux: &LoopAux) -> Result<RatioSet> {
    let (n1_theta2, gamma1_theta2, gamma6_theta2) = loop1_ratios(p, s)?;
    let (gamma2_gamma5, gamma2_n1) = loop3_ratios(aux, p.z1())?;
    let (f10_gamma2, f10_gamma1, f10_theta1) = loop4_ratios(p, s)?;
    let mut r = RatioSet {
        gamma1_theta2,
        n1_theta2,
        gamma6_theta2,
        gamma5_theta7: loop2_gamma5_theta7(p, s)?,
        gamma5_theta6: loop2_gamma5_theta6(p, s)?,
        gamma5_gamma6: loop2_gamma5_gamma6(p, s)?,
        gamma2_gamma5,
        gamma2_n1,
        f10_gamma2,
        f10_gamma1,
        f10_theta1,
        f10_theta2: 0.0,
    };
    r.f10_theta2 = r.compose_f10_theta2();
    Ok(r)
}

/// `T`, rows and columns ordered (Θ1, Θ2, Θ6, Θ7).
#[derive(Clone, Debug, PartialEq)]
pub struct TransmissionMatrix(pub Matrix4<f64>);

impl TransmissionMatrix {
    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    /// First row, the negated gradient of the actuator length (mm/rad).
    pub fn row1(&self) -> [f64; 4] {
        [
            self.0[(0, 0)],
            self.0[(0, 1)],
            self.0[(0, 2)],
            self.0[(0, 3)],
        ]
    }
}

pub fn assemble_t_from(r: &RatioSet) -> TransmissionMatrix {
    let mut t = Matrix4::identity();
    t[(0, 0)] = -r.f10_theta1;
    t[(0, 1)] = -r.f10_theta2;
    t[(0, 2)] = -r.gamma5_theta6 * r.gamma2_gamma5 * r.f10_gamma2;
    t[(0, 3)] = -r.gamma5_theta7 * r.gamma2_gamma5 * r.f10_gamma2;
    TransmissionMatrix(t)
}

#[allow(non_snake_case)]
pub fn assemble_T(p: &DesignParams, s: &FingerState) -> Result<TransmissionMatrix> {
    Ok(assemble_t_from(&ratios(p, s)?))
}
