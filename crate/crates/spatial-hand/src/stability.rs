//! Contact-force solve `Tᵀ Jᵀ f = t`, the `f ≥ 0` criterion and grid sweeps.

use nalgebra::{Matrix4, Vector4};
use rayon::prelude::*;

use crate::contact::{assemble_J, ContactConfig, ContactJacobian};
use crate::error::{HandError, Result};
use crate::kinematics::{home_angles, ActiveAngles, DesignParams, FingerState};
use crate::transmission::{assemble_T, TransmissionMatrix};

/// Forces above this (N) count as non-negative.
pub const FORCE_TOL: f64 = -1e-9;

/// Condition estimates at or above this make the solve indeterminate.
pub const MAX_CONDITION: f64 = 1e12;

#[derive(Clone, Debug, PartialEq)]
pub struct ForceSolution {
    pub f: [f64; 4],
    pub t_in: [f64; 4],
    /// Verdict with every contact active.
    pub stable: bool,
    /// κ(T)·κ(J) in the 2-norm.
    pub condition_estimate: f64,
}

fn cond(m: &Matrix4<f64>) -> f64 {
    let sv = m.singular_values();
    let (max, min) = sv.iter().fold((0.0f64, f64::INFINITY), |(hi, lo), &v| {
        (hi.max(v), lo.min(v))
    });
    if min > 0.0 {
        max / min
    } else {
        f64::INFINITY
    }
}

/// Solves `Tᵀ (Jᵀ f) = t` with two LU solves.
pub fn solve_forces(
    t_mat: &TransmissionMatrix,
    j_mat: &ContactJacobian,
    t: [f64; 4],
) -> Result<ForceSolution> {
    let (tm, jm) = (t_mat.matrix(), j_mat.matrix());
    let condition = cond(tm) * cond(jm);
    if !(condition.is_finite() && condition < MAX_CONDITION) {
        return Err(HandError::Indeterminate { condition });
    }
    let rhs = Vector4::from(t);
    let y = tm
        .transpose()
        .lu()
        .solve(&rhs)
        .ok_or(HandError::Indeterminate { condition })?;
    let f = jm
        .transpose()
        .lu()
        .solve(&y)
        .ok_or(HandError::Indeterminate { condition })?;

    let residual = (tm.transpose() * (jm.transpose() * f) - rhs).norm();
    if residual > 1e-8 * rhs.norm().max(f64::MIN_POSITIVE) {
        return Err(HandError::Indeterminate { condition });
    }
    let f = [f[0], f[1], f[2], f[3]];
    Ok(ForceSolution {
        f,
        t_in: t,
        stable: f.iter().all(|&v| v >= FORCE_TOL),
        condition_estimate: condition,
    })
}

/// True iff every active contact force is non-negative within [`FORCE_TOL`].
pub fn stability_predicate(sol: &ForceSolution, c: &ContactConfig) -> bool {
    sol.f
        .iter()
        .zip(c.active)
        .all(|(&f, on)| !on || f >= FORCE_TOL)
}

/// Actuator input `t = [f10, 0, 0, 0]`.
pub fn actuator_input(p: &DesignParams) -> [f64; 4] {
    [p.f10, 0.0, 0.0, 0.0]
}

/// Full pipeline at one posture.
pub fn forces_at(p: &DesignParams, c: &ContactConfig, a: ActiveAngles) -> Result<ForceSolution> {
    c.validate(p)?;
    let s = FingerState::solve(p, a)?;
    let t = assemble_T(p, &s)?;
    let j = assemble_J(p, &s, c)?;
    let mut sol = solve_forces(&t, &j, actuator_input(p))?;
    sol.stable = stability_predicate(&sol, c);
    Ok(sol)
}

/// Evenly spaced samples `min, min + step, ..` up to `max`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxisSpec {
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

impl AxisSpec {
    pub fn new(min: f64, max: f64, step: f64) -> Result<Self> {
        if !(min.is_finite() && max.is_finite() && step.is_finite()) || step <= 0.0 || max < min {
            return Err(HandError::InvalidArgument(format!(
                "bad axis {min}:{max}:{step}"
            )));
        }
        Ok(AxisSpec { min, max, step })
    }

    /// `center ± half` with the given step.
    pub fn centered(center: f64, half: f64, step: f64) -> Result<Self> {
        Self::new(center - half, center + half, step)
    }

    pub fn single(v: f64) -> Self {
        AxisSpec {
            min: v,
            max: v,
            step: 1.0,
        }
    }

    pub fn count(&self) -> usize {
        // tolerate round-off in (max - min) / step
        ((self.max - self.min) / self.step + 1e-9).floor() as usize + 1
    }

    pub fn value(&self, i: usize) -> f64 {
        self.min + i as f64 * self.step
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub theta2: AxisSpec,
    pub theta6: AxisSpec,
}

impl GridSpec {
    /// Home ± 0.6 rad on both axes, 0.02 rad step (61 × 61).
    pub fn default_for(p: &DesignParams) -> Result<Self> {
        let h = home_angles(p)?;
        Ok(GridSpec {
            theta2: AxisSpec::centered(h.theta2, 0.6, 0.02)?,
            theta6: AxisSpec::centered(h.theta6, 0.6, 0.02)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSample {
    pub theta2: f64,
    pub theta6: f64,
    pub f: Option<[f64; 4]>,
    pub stable: bool,
    pub condition: Option<f64>,
    pub flag: Option<&'static str>,
}

/// Samples in θ2-major order, θ6 ascending inside each θ2 row.
#[derive(Clone, Debug, PartialEq)]
pub struct StabilityMap {
    pub grid: GridSpec,
    pub samples: Vec<SweepSample>,
}

/// Solves every grid point with θ1 and θ7 held at home.
pub fn sweep(p: &DesignParams, c: &ContactConfig, grid: &GridSpec) -> Result<StabilityMap> {
    p.validate()?;
    c.validate(p)?;
    let home = home_angles(p)?;
    let (n2, n6) = (grid.theta2.count(), grid.theta6.count());
    let samples = (0..n2 * n6)
        .into_par_iter()
        .map(|k| {
            let (t2, t6) = (grid.theta2.value(k / n6), grid.theta6.value(k % n6));
            let a = ActiveAngles {
                theta2: t2,
                theta6: t6,
                ..home
            };
            match forces_at(p, c, a) {
                Ok(sol) => SweepSample {
                    theta2: t2,
                    theta6: t6,
                    f: Some(sol.f),
                    stable: sol.stable,
                    condition: Some(sol.condition_estimate),
                    flag: None,
                },
                Err(e) => SweepSample {
                    theta2: t2,
                    theta6: t6,
                    f: None,
                    stable: false,
                    condition: match e {
                        HandError::Indeterminate { condition } if condition.is_finite() => {
                            Some(condition)
                        }
                        _ => None,
                    },
                    flag: Some(e.tag()),
                },
            }
        })
        .collect();
    Ok(StabilityMap {
        grid: *grid,
        samples,
    })
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.16e}")).unwrap_or_default()
}

impl StabilityMap {
    pub const CSV_HEADER: &'static str = "theta2,theta6,f1,f2,f3,f4,stable,condition,flag";

    pub fn shape(&self) -> (usize, usize) {
        (self.grid.theta2.count(), self.grid.theta6.count())
    }

    pub fn at(&self, i2: usize, i6: usize) -> &SweepSample {
        &self.samples[i2 * self.shape().1 + i6]
    }

    /// CSV text, LF line endings, 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.samples.len() * 160);
        out.push_str(Self::CSV_HEADER);
        out.push('\n');
        for s in &self.samples {
            let f = s.f.map(|f| f.map(Some)).unwrap_or([None; 4]);
            out.push_str(&format!(
                "{:.16e},{:.16e},{},{},{},{},{},{},{}\n",
                s.theta2,
                s.theta6,
                fmt_opt(f[0]),
                fmt_opt(f[1]),
                fmt_opt(f[2]),
                fmt_opt(f[3]),
                u8::from(s.stable),
                fmt_opt(s.condition),
                s.flag.unwrap_or("")
            ));
        }
        out
    }

    pub fn flagged(&self) -> usize {
        self.samples.iter().filter(|s| s.flag.is_some()).count()
    }

    /// Component `i` of the force over the grid, `None` where flagged.
    pub fn component(&self, i: usize) -> Vec<Option<f64>> {
        self.samples.iter().map(|s| s.f.map(|f| f[i])).collect()
    }

    /// Mean range of f1 along θ2 (one range per θ6 column) divided by the
    /// mean range along θ6 (one per θ2 row). Below 1 means f1 varies less
    /// with θ2 than with θ6.
    pub fn variation_ratio(&self) -> Option<f64> {
        let (n2, n6) = self.shape();
        let f1 = self.component(0);
        let range = |vals: Vec<Option<f64>>| {
            let v: Vec<f64> = vals.into_iter().flatten().collect();
            if v.len() < 2 {
                return None;
            }
            let hi = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let lo = v.iter().cloned().fold(f64::INFINITY, f64::min);
            Some(hi - lo)
        };
        let mean = |v: Vec<f64>| (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64);
        let along2 = mean(
            (0..n6)
                .filter_map(|j| range((0..n2).map(|i| f1[i * n6 + j]).collect()))
                .collect(),
        )?;
        let along6 = mean(
            (0..n2)
                .filter_map(|i| range((0..n6).map(|j| f1[i * n6 + j]).collect()))
                .collect(),
        )?;
        (along6 > 0.0).then(|| along2 / along6)
    }

    /// Largest jump of f1 between grid neighbours divided by the median jump.
    pub fn smoothness(&self) -> Option<f64> {
        let (n2, n6) = self.shape();
        let f1 = self.component(0);
        let mut jumps = Vec::new();
        for i in 0..n2 {
            for j in 0..n6 {
                let Some(v) = f1[i * n6 + j] else { continue };
                if let Some(Some(w)) = (i + 1 < n2).then(|| f1[(i + 1) * n6 + j]) {
                    jumps.push((w - v).abs());
                }
                if let Some(Some(w)) = (j + 1 < n6).then(|| f1[i * n6 + j + 1]) {
                    jumps.push((w - v).abs());
                }
            }
        }
        if jumps.is_empty() {
            return None;
        }
        jumps.sort_by(f64::total_cmp);
        let median = jumps[jumps.len() / 2];
        (median > 0.0).then(|| jumps[jumps.len() - 1] / median)
    }
}
