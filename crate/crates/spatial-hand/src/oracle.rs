//! Independent numeric references for the closed forms.
//!
//! Every passive angle is recovered here by root-solving a geometric loop
//! closure built from plain rotations and point distances, and every ratio
//! by finite differences of those closures. Nothing in this module calls the
//! closed-form kinematics, transmission or contact code; only the data types
//! and the [`geom3`](crate::geom3) primitives are shared.

use std::f64::consts::{FRAC_PI_4, PI, TAU};

use nalgebra::{DMatrix, DVector, Matrix4, Rotation3, Unit};

use crate::contact::ContactConfig;
use crate::error::{HandError, Result};
use crate::geom3::{compose, rx, ry, rz, Transform4, Vec3};
use crate::kinematics::{ActiveAngles, DesignParams, FingerState};

/// Central-difference step (rad).
pub const FD_STEP: f64 = 1e-6;

/// Largest residual accepted from a converged closure solve.
pub const CONVERGED_RESIDUAL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverSettings {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SolverSettings {
    fn default() -> Self {
        SolverSettings {
            tol: 1e-12,
            max_iter: 100,
        }
    }
}

type Residual<'a> = Box<dyn Fn(&[f64]) -> Vec<f64> + 'a>;

/// A loop closure `r(x) = 0` over a few passive angles (or coordinates).
pub struct ClosureSystem<'a> {
    residual: Residual<'a>,
    pub dim: usize,
    pub settings: SolverSettings,
}

impl<'a> ClosureSystem<'a> {
    pub fn new(dim: usize, residual: impl Fn(&[f64]) -> Vec<f64> + 'a) -> Self {
        ClosureSystem {
            residual: Box::new(residual),
            dim,
            settings: SolverSettings::default(),
        }
    }

    pub fn residual(&self, x: &[f64]) -> Vec<f64> {
        (self.residual)(x)
    }

    fn norm(&self, x: &[f64]) -> f64 {
        self.residual(x).iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

/// Root nearest `initial`: bracketing bisection in one dimension, damped
/// Newton otherwise. Fails loudly rather than returning an unconverged point.
pub fn solve_closure(sys: &ClosureSystem, initial: &[f64]) -> Result<Vec<f64>> {
    if initial.len() != sys.dim || sys.dim == 0 {
        return Err(HandError::InvalidArgument(format!(
            "seed has {} entries, closure has {}",
            initial.len(),
            sys.dim
        )));
    }
    let x = if sys.dim == 1 {
        vec![bisect_near(sys, initial[0])?]
    } else {
        damped_newton(sys, initial)?
    };
    let r = sys.norm(&x);
    if !(r < CONVERGED_RESIDUAL) {
        return Err(HandError::Oracle(format!(
            "closure residual {r:e} after solve"
        )));
    }
    Ok(x)
}

fn bisect_near(sys: &ClosureSystem, seed: f64) -> Result<f64> {
    let f = |x: f64| sys.residual(&[x])[0];
    let f0 = f(seed);
    if f0 == 0.0 {
        return Ok(seed);
    }
    const STEP: f64 = 0.005;
    let mut bracket = None;
    'scan: for k in 1..=100 {
        for side in [1.0, -1.0] {
            let (x0, x1) = (
                seed + side * (k - 1) as f64 * STEP,
                seed + side * k as f64 * STEP,
            );
            let (g0, g1) = (f(x0), f(x1));
            if g0.is_finite() && g1.is_finite() && g0.signum() != g1.signum() {
                bracket = Some(if x0 < x1 { (x0, x1, g0) } else { (x1, x0, g1) });
                break 'scan;
            }
        }
    }
    let (mut lo, mut hi, mut flo) = bracket
        .ok_or_else(|| HandError::Oracle(format!("no sign change within 0.5 of seed {seed}")))?;
    for _ in 0..sys.settings.max_iter {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(if f(lo).abs() < f(hi).abs() { lo } else { hi })
}

fn damped_newton(sys: &ClosureSystem, initial: &[f64]) -> Result<Vec<f64>> {
    let n = sys.dim;
    let mut x = DVector::from_column_slice(initial);
    let mut r = DVector::from_vec(sys.residual(x.as_slice()));
    if r.len() != n {
        return Err(HandError::InvalidArgument("closure must be square".into()));
    }
    for _ in 0..sys.settings.max_iter {
        if r.norm() < sys.settings.tol {
            break;
        }
        let mut jac = DMatrix::zeros(n, n);
        for k in 0..n {
            let h = 1e-7 * (1.0 + x[k].abs());
            let mut xp = x.clone();
            xp[k] += h;
            let mut xm = x.clone();
            xm[k] -= h;
            let col = (DVector::from_vec(sys.residual(xp.as_slice()))
                - DVector::from_vec(sys.residual(xm.as_slice())))
                / (2.0 * h);
            jac.set_column(k, &col);
        }
        let step = jac
            .lu()
            .solve(&r)
            .ok_or_else(|| HandError::Oracle("singular closure Jacobian".into()))?;
        let mut lambda = 1.0;
        loop {
            let trial = &x - lambda * &step;
            let rt = DVector::from_vec(sys.residual(trial.as_slice()));
            if rt.norm() < r.norm() || lambda < 1e-6 {
                x = trial;
                r = rt;
                break;
            }
            lambda *= 0.5;
        }
        if lambda * step.norm() <= f64::EPSILON * (1.0 + x.norm()) {
            break;
        }
    }
    Ok(x.as_slice().to_vec())
}

/// Richardson-extrapolated central difference of `g` at `x`.
pub fn derivative(g: impl Fn(f64) -> Result<f64>, x: f64, h: f64) -> Result<f64> {
    let d = |h: f64| -> Result<f64> { Ok((g(x + h)? - g(x - h)?) / (2.0 * h)) };
    Ok((4.0 * d(h / 2.0)? - d(h)?) / 3.0)
}

/// `a` shifted by a multiple of 2π to lie closest to `reference`.
fn near(a: f64, reference: f64) -> f64 {
    a + TAU * ((reference - a) / TAU).round()
}

fn angle_between(a: &Vec3, b: &Vec3) -> f64 {
    a.cross(b).norm().atan2(a.dot(b))
}

fn planar_angle(v: (f64, f64)) -> f64 {
    v.1.atan2(v.0)
}

/// Numerically closed posture.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleState {
    pub theta3: f64,
    pub theta5: f64,
    pub nu1: f64,
    pub psi1: f64,
    pub psi5: f64,
    pub psi2: f64,
    pub d0: f64,
}

/// Each torque ratio as a velocity ratio `d(output)/d(input)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ratio {
    N1Theta2,
    Gamma1Theta2,
    Gamma6Theta2,
    Gamma5Theta7,
    Gamma5Theta6,
    Gamma5Gamma6,
    Gamma2Gamma5,
    Gamma2N1,
    F10Gamma2,
    F10Gamma1,
    F10Theta1,
    F10Theta2,
}

impl Ratio {
    pub const ALL: [Ratio; 12] = [
        Ratio::N1Theta2,
        Ratio::Gamma1Theta2,
        Ratio::Gamma6Theta2,
        Ratio::Gamma5Theta7,
        Ratio::Gamma5Theta6,
        Ratio::Gamma5Gamma6,
        Ratio::Gamma2Gamma5,
        Ratio::Gamma2N1,
        Ratio::F10Gamma2,
        Ratio::F10Gamma1,
        Ratio::F10Theta1,
        Ratio::F10Theta2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Ratio::N1Theta2 => "N1/Theta2",
            Ratio::Gamma1Theta2 => "Gamma1/Theta2",
            Ratio::Gamma6Theta2 => "Gamma6/Theta2",
            Ratio::Gamma5Theta7 => "Gamma5/Theta7",
            Ratio::Gamma5Theta6 => "Gamma5/Theta6",
            Ratio::Gamma5Gamma6 => "Gamma5/Gamma6",
            Ratio::Gamma2Gamma5 => "Gamma2/Gamma5",
            Ratio::Gamma2N1 => "Gamma2/N1",
            Ratio::F10Gamma2 => "F10/Gamma2",
            Ratio::F10Gamma1 => "F10/Gamma1",
            Ratio::F10Theta1 => "F10/Theta1",
            Ratio::F10Theta2 => "F10/Theta2",
        }
    }
}

/// Numeric model of one finger, linearised around a seed posture.
///
/// Roots are always taken nearest the seed's passive angles, so the seed
/// picks the assembly branch and finite differences stay on it.
pub struct Oracle<'a> {
    p: &'a DesignParams,
    seed: FingerState,
    pub settings: SolverSettings,
}

impl<'a> Oracle<'a> {
    pub fn new(p: &'a DesignParams, seed: &FingerState) -> Self {
        Oracle {
            p,
            seed: seed.clone(),
            settings: SolverSettings::default(),
        }
    }

    fn root(&self, seed: f64, f: impl Fn(f64) -> f64) -> Result<f64> {
        let mut sys = ClosureSystem::new(1, |x: &[f64]| vec![f(x[0])]);
        sys.settings = self.settings;
        Ok(solve_closure(&sys, &[seed])?[0])
    }

    fn radius(&self) -> f64 {
        // chord l1 subtends α at C
        self.p.l1 / (2.0 * (self.p.alpha / 2.0).sin())
    }

    /// Unit directions joint→C of O2..O5 for given θ2, θ3.
    fn dirs(&self, theta2: f64, theta3: f64) -> [Vec3; 4] {
        let ez = Vec3::z();
        let b = rz(theta2) * rx(self.p.alpha);
        [
            ez,
            b * ez,
            b * rz(theta3) * rx(self.p.eta) * ez,
            rx(self.p.eta) * ez,
        ]
    }

    /// θ3 from `angle(O4, O5) = α`.
    pub fn theta3(&self, theta2: f64) -> Result<f64> {
        let ca = self.p.alpha.cos();
        self.root(self.seed.theta3, |t3| {
            let u = self.dirs(theta2, t3);
            u[2].dot(&u[3]) - ca
        })
    }

    /// θ5 from the O5 link reaching O4.
    pub fn theta5(&self, theta2: f64, theta3: f64) -> Result<f64> {
        let v = rx(-self.p.eta) * self.dirs(theta2, theta3)[2];
        let t5 = self.root(self.seed.theta5, |t5| {
            (rz(t5) * rx(self.p.alpha) * Vec3::z()).cross(&v).z
        })?;
        if (rz(t5) * rx(self.p.alpha) * Vec3::z()).dot(&v) <= 0.0 {
            return Err(HandError::Oracle(
                "theta5 root on the opposite branch".into(),
            ));
        }
        Ok(t5)
    }

    /// P1 and P6, the midpoints of O2O5 and O3O4.
    fn virtual_points(&self, theta2: f64, theta3: f64) -> (Vec3, Vec3) {
        let r = self.radius();
        let u = self.dirs(theta2, theta3);
        (-r * (u[0] + u[3]) / 2.0, -r * (u[1] + u[2]) / 2.0)
    }

    /// Frame at P1: y towards O5, z towards C.
    fn r1_axes(&self) -> (Vec3, Vec3, Vec3, Vec3) {
        let r = self.radius();
        let u = self.dirs(0.0, 0.0);
        let p1 = -r * (u[0] + u[3]) / 2.0;
        let o5 = -r * u[3];
        let y = (o5 - p1).normalize();
        let z = (-p1).normalize();
        (p1, y.cross(&z), y, z)
    }

    /// (ν1, ψ1) of the virtual mechanism.
    pub fn virtual_angles(&self, theta2: f64) -> Result<(f64, f64)> {
        let t3 = self.theta3(theta2)?;
        let (p1, p6) = self.virtual_points(theta2, t3);
        let nu1 = PI - angle_between(&p1, &p6);
        let (_, x1, y1, _) = self.r1_axes();
        let psi1 = near((-p6).dot(&y1).atan2((-p6).dot(&x1)), self.seed.psi1);
        Ok((nu1, psi1))
    }

    /// ψ5 from `|P8 − P9| = b2`, with P9 carried to the O7 frame.
    pub fn psi5(&self, theta6: f64, theta7: f64, psi6: f64) -> Result<f64> {
        let p = self.p;
        let m = compose(&[
            Transform4::trans_x(p.l2)?,
            Transform4::rot_z(PI - theta6)?,
            Transform4::rot_x(psi6)?,
        ])?;
        let p8 = Vec3::new(p.c2 * theta7.cos(), p.c2 * theta7.sin(), 0.0);
        self.root(self.seed.psi5, |psi5| {
            let p9 = m.apply_point(&Vec3::new(p.a2 * psi5.cos(), p.a2 * psi5.sin(), 0.0));
            (p8 - p9).norm() - p.b2
        })
    }

    /// ψ2 of the planar five-bar spanned by C, P5, P4, P3, P2.
    pub fn psi2(&self, nu1: f64, psi5: f64) -> Result<f64> {
        let p = self.p;
        let z1 = self.r1_axes().0.norm();
        let (s, c) = (nu1 / 2.0).sin_cos();
        let p5 = (-z1 * c, z1 * s);
        let p2 = (z1 * c, z1 * s);
        let to_c = planar_angle((-p5.0, -p5.1));
        let p4 = (
            p5.0 + p.c1 * (to_c - psi5).cos(),
            p5.1 + p.c1 * (to_c - psi5).sin(),
        );
        let out = planar_angle(p2);
        let guess = self.seed.psi2 + out;
        let seed3 = [p2.0 + p.a1 * guess.cos(), p2.1 + p.a1 * guess.sin()];
        let mut sys = ClosureSystem::new(2, |x: &[f64]| {
            vec![
                (x[0] - p4.0).hypot(x[1] - p4.1) - p.b1,
                (x[0] - p2.0).hypot(x[1] - p2.1) - p.a1,
            ]
        });
        sys.settings = self.settings;
        let p3 = solve_closure(&sys, &seed3)?;
        Ok(near(
            planar_angle((p3[0] - p2.0, p3[1] - p2.1)) - out,
            self.seed.psi2,
        ))
    }

    /// Actuator length |P9 P11| as the norm of the two crank vectors.
    pub fn d0(&self, theta1: f64, psi1: f64, psi2: f64) -> f64 {
        let u = Vec3::new(theta1.sin(), 0.0, theta1.cos());
        let v = Vec3::new(psi2.sin() * psi1.cos(), psi2.sin() * psi1.sin(), psi2.cos());
        (self.p.a0 * u + self.p.c0 * v).norm()
    }

    pub fn state(&self, a: ActiveAngles) -> Result<OracleState> {
        let theta3 = self.theta3(a.theta2)?;
        let theta5 = self.theta5(a.theta2, theta3)?;
        let (nu1, psi1) = self.virtual_angles(a.theta2)?;
        let psi5 = self.psi5(a.theta6, a.theta7, -psi1)?;
        let psi2 = self.psi2(nu1, psi5)?;
        Ok(OracleState {
            theta3,
            theta5,
            nu1,
            psi1,
            psi5,
            psi2,
            d0: self.d0(a.theta1, psi1, psi2),
        })
    }

    /// Velocity ratio for `r` at the seed posture.
    pub fn ratio(&self, r: Ratio) -> Result<f64> {
        let s = &self.seed;
        let h = FD_STEP;
        match r {
            Ratio::N1Theta2 => derivative(|t2| Ok(self.virtual_angles(t2)?.0), s.theta2, h),
            Ratio::Gamma1Theta2 | Ratio::Gamma6Theta2 => {
                derivative(|t2| Ok(-self.virtual_angles(t2)?.1), s.theta2, h)
            }
            Ratio::Gamma5Theta7 => derivative(|t7| self.psi5(s.theta6, t7, s.psi6), s.theta7, h),
            Ratio::Gamma5Theta6 => derivative(|t6| self.psi5(t6, s.theta7, s.psi6), s.theta6, h),
            Ratio::Gamma5Gamma6 => derivative(|p6| self.psi5(s.theta6, s.theta7, p6), s.psi6, h),
            Ratio::Gamma2Gamma5 => derivative(|p5| Ok(-self.psi2(s.nu1, p5)?), s.psi5, h),
            Ratio::Gamma2N1 => derivative(|n1| Ok(-self.psi2(n1, s.psi5)?), s.nu1, h),
            Ratio::F10Gamma2 => derivative(|g| Ok(self.d0(s.theta1, s.psi1, -g)), -s.psi2, h),
            Ratio::F10Gamma1 => derivative(|p6| Ok(self.d0(s.theta1, -p6, s.psi2)), s.psi6, h),
            Ratio::F10Theta1 => derivative(|t1| Ok(self.d0(t1, s.psi1, s.psi2)), s.theta1, h),
            Ratio::F10Theta2 => self.actuator_gradient_entry(1),
        }
    }

    /// d(d0)/d(active angle `k`) through the whole numerically closed chain.
    fn actuator_gradient_entry(&self, k: usize) -> Result<f64> {
        let base = self.seed.active().to_array();
        derivative(
            |x| {
                let mut q = base;
                q[k] = x;
                Ok(self.state(ActiveAngles::from_array(q))?.d0)
            },
            base[k],
            FD_STEP,
        )
    }

    /// First row of `T` as the negated actuator-length gradient.
    pub fn t_row(&self) -> Result<[f64; 4]> {
        let mut row = [0.0; 4];
        for (k, v) in row.iter_mut().enumerate() {
            *v = -self.actuator_gradient_entry(k)?;
        }
        Ok(row)
    }

    /// Coupler orientation for θ2, θ3.
    fn coupler(&self, theta2: f64, theta3: f64) -> Transform4 {
        Transform4::rotation_by(rz(theta2) * rx(self.p.alpha) * rz(theta3) * rx(self.p.eta / 2.0))
    }

    /// Distal contact chains: coupler, down to P6, rotate the phalanges, offset.
    fn distal_points(
        &self,
        c: &ContactConfig,
        a: ActiveAngles,
        theta3: f64,
    ) -> Result<(Vec3, Vec3)> {
        let p = self.p;
        let z1 = self.r1_axes().0.norm();
        let phi6 = -a.theta6 - PI;
        let phi7 = PI - p.delta7 - a.theta7;
        let w = self.coupler(a.theta2, theta3);
        let base = [w, Transform4::trans_z(-z1)?, Transform4::rot_y(phi6)?];
        let mut c3 = base.to_vec();
        c3.extend([Transform4::trans_y(c.q3)?, Transform4::trans_z(c.k3)?]);
        let mut c4 = base.to_vec();
        c4.extend([
            Transform4::trans_z(p.l2)?,
            Transform4::rot_y(phi7)?,
            Transform4::trans_y(c.q4)?,
            Transform4::trans_z(c.k4)?,
        ]);
        let o = Vec3::zeros();
        Ok((compose(&c3)?.apply_point(&o), compose(&c4)?.apply_point(&o)))
    }

    /// S1..S4 in R2 for the given active angles.
    pub fn contact_points(&self, c: &ContactConfig, a: ActiveAngles) -> Result<[Vec3; 4]> {
        let t3 = self.theta3(a.theta2)?;
        let r = self.radius();
        let o = self.dirs(a.theta2, t3).map(|u| -r * u);
        let s1 = o[0] + c.k1 * (o[1] - o[0]).normalize();
        let s2 = o[3] + c.k2 * (o[2] - o[3]).normalize();
        let (s3, s4) = self.distal_points(c, a, t3)?;
        Ok([s1, s2, s3, s4])
    }

    /// Contact directions at the seed, with the f1/f2 tilt solved numerically.
    pub fn force_directions(&self) -> Result<[Vec3; 4]> {
        let p = self.p;
        let s = &self.seed;
        let m1 = parallel_force_angle(p)?;
        let half = rx(p.alpha / 2.0);
        let f1 = -(rz(s.theta2) * half * Vec3::new(m1.sin(), 0.0, m1.cos()));
        let f2 = -(rx(p.eta) * rz(s.theta5) * half * Vec3::new(-m1.sin(), 0.0, m1.cos()));
        let w = self.coupler(s.theta2, s.theta3).rotation();
        let r6 = ry(-s.theta6 - PI);
        let f3 = -(w * r6 * Vec3::x());
        let f4 = -(w * r6 * ry(PI - p.delta7 - s.theta7) * Vec3::x());
        Ok([f1, f2, f3, f4])
    }

    /// `J` from contact-point velocities projected on the contact directions.
    pub fn contact_matrix(&self, c: &ContactConfig) -> Result<Matrix4<f64>> {
        let dirs = self.force_directions()?;
        let base = self.seed.active();
        let pts = self.contact_points(c, base)?;
        let mut j = Matrix4::zeros();

        // θ1 turns the whole finger about the palm axis through P1
        let (p1, _, y1, _) = self.r1_axes();
        let axis = Unit::new_normalize(-y1);
        for i in 0..4 {
            j[(i, 0)] = derivative(
                |x| Ok((p1 + Rotation3::from_axis_angle(&axis, x) * (pts[i] - p1)).dot(&dirs[i])),
                0.0,
                FD_STEP,
            )?;
        }
        for (col, k) in [(1, 1), (2, 2), (3, 3)] {
            for i in 0..4 {
                j[(i, col)] = derivative(
                    |x| {
                        let mut q = base.to_array();
                        q[k] = x;
                        Ok(self.contact_points(c, ActiveAngles::from_array(q))?[i].dot(&dirs[i]))
                    },
                    base.to_array()[k],
                    FD_STEP,
                )?;
            }
        }
        Ok(j)
    }
}

/// Tilt m1 that makes f1 parallel to f3 in the neutral posture.
pub fn parallel_force_angle(p: &DesignParams) -> Result<f64> {
    let home = crate::kinematics::home_pose(p)?;
    let o = Oracle::new(p, &home);
    let a = rz(home.theta2) * rx(p.alpha / 2.0);
    let f3 = o.coupler(home.theta2, home.theta3).rotation() * ry(-home.theta6 - PI) * Vec3::x();
    let probe = f3.cross(&(a * Vec3::y()));
    let m = o.root(FRAC_PI_4, |m| {
        (a * Vec3::new(m.sin(), 0.0, m.cos())).dot(&probe)
    })?;
    if (a * Vec3::new(m.sin(), 0.0, m.cos())).dot(&f3) <= 0.0 {
        return Err(HandError::Oracle(
            "contact tilt found on the anti-parallel branch".into(),
        ));
    }
    Ok(m)
}

/// Velocity ratio `r` at `at`, by finite differences of numeric closures.
pub fn virtual_work_ratio(p: &DesignParams, at: &FingerState, r: Ratio) -> Result<f64> {
    Oracle::new(p, at).ratio(r)
}

/// Output angle φ of a planar four-bar: crank `a` at `theta` about the
/// origin, coupler `b`, rocker `c` about `(frame_len, 0)`. `branch` is ±1.
pub fn planar_4bar_output(
    a: f64,
    b: f64,
    c: f64,
    frame_len: f64,
    theta: f64,
    branch: f64,
) -> Result<f64> {
    let dx = frame_len - a * theta.cos();
    let dy = -a * theta.sin();
    let (ka, kb) = (2.0 * c * dx, 2.0 * c * dy);
    let kc = b * b - dx * dx - dy * dy - c * c;
    let n = ka.hypot(kb);
    if n < crate::error::SINGULAR_EPS || (kc / n).abs() > 1.0 {
        return Err(HandError::Unreachable {
            context: "planar four-bar",
            value: kc / n,
        });
    }
    Ok(kb.atan2(ka) + branch.signum() * (kc / n).acos())
}

/// Classical planar four-bar ratio `dφ/dθ = a sin(μ − θ) / (c sin(μ − φ))`,
/// with μ the coupler direction.
pub fn planar_4bar_ratio(
    a: f64,
    b: f64,
    c: f64,
    frame_len: f64,
    theta: f64,
    branch: f64,
) -> Result<f64> {
    let phi = planar_4bar_output(a, b, c, frame_len, theta, branch)?;
    let mu = (c * phi.sin() - a * theta.sin()).atan2(frame_len + c * phi.cos() - a * theta.cos());
    let den = c * (mu - phi).sin();
    if den.abs() < crate::error::SINGULAR_EPS {
        return Err(HandError::Singular {
            context: "planar four-bar dead point",
            value: den,
        });
    }
    Ok(a * (mu - theta).sin() / den)
}

/// The same ratio by finite differences of a bisection-closed loop.
pub fn planar_4bar_fd(
    a: f64,
    b: f64,
    c: f64,
    frame_len: f64,
    theta: f64,
    branch: f64,
) -> Result<f64> {
    let seed = planar_4bar_output(a, b, c, frame_len, theta, branch)?;
    let phi_at = |t: f64| -> Result<f64> {
        let sys = ClosureSystem::new(1, |x: &[f64]| {
            let q = (frame_len + c * x[0].cos(), c * x[0].sin());
            vec![(q.0 - a * t.cos()).hypot(q.1 - a * t.sin()) - b]
        });
        Ok(solve_closure(&sys, &[seed])?[0])
    };
    derivative(phi_at, theta, FD_STEP)
}
