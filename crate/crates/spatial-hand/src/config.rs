//! Run configuration: a flat JSON object keyed by design parameter names.
//! Angles are given in degrees here and converted once.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;

use crate::contact::ContactConfig;
use crate::error::{HandError, Result};
use crate::kinematics::DesignParams;
use crate::stability::{AxisSpec, GridSpec};

/// Hand-level finger arrangement. Only labels the run; single-finger math
/// is unaffected.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    #[default]
    Neutral,
    Cylindrical,
    Spherical,
}

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Preset::Neutral => "neutral",
            Preset::Cylindrical => "cylindrical",
            Preset::Spherical => "spherical",
        }
    }

    /// Where the distal normals of the three fingers point, seen from above the palm.
    pub fn placement(self) -> &'static str {
        match self {
            Preset::Neutral => "each finger faces its own centre C",
            Preset::Cylindrical => "fingers 2 and 3 face the centre of finger 1",
            Preset::Spherical => {
                "fingers 2 and 3 turned towards the palm centre, finger 1 unchanged"
            }
        }
    }
}

impl FromStr for Preset {
    type Err = HandError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "neutral" => Ok(Preset::Neutral),
            "cylindrical" => Ok(Preset::Cylindrical),
            "spherical" => Ok(Preset::Spherical),
            other => Err(HandError::Config(format!("unknown preset {other:?}"))),
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    l1: Option<f64>,
    l2: Option<f64>,
    l3: Option<f64>,
    a0: Option<f64>,
    a123: Option<f64>,
    b: Option<f64>,
    c0: Option<f64>,
    c123: Option<f64>,
    k12: Option<f64>,
    k3: Option<f64>,
    k4: Option<f64>,
    q: Option<f64>,
    delta7_deg: Option<f64>,
    alpha_deg: Option<f64>,
    eta_deg: Option<f64>,
    f10: Option<f64>,
    active: Option<[bool; 4]>,
    grid: Option<String>,
    preset: Option<Preset>,
    out: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub params: DesignParams,
    pub contact: ContactConfig,
    /// `None` means the default grid around the home pose.
    pub grid: Option<GridSpec>,
    pub out: Option<PathBuf>,
    pub preset: Preset,
}

impl RunConfig {
    pub fn grid_or_default(&self) -> Result<GridSpec> {
        match self.grid {
            Some(g) => Ok(g),
            None => GridSpec::default_for(&self.params),
        }
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        from_raw(RawConfig::default()).expect("defaults are valid")
    }
}

/// Parses `t2min:t2max:step,t6min:t6max:step`.
pub fn parse_grid(s: &str) -> Result<GridSpec> {
    let axis = |part: &str| -> Result<AxisSpec> {
        let v: Vec<f64> = part
            .split(':')
            .map(|x| {
                x.trim()
                    .parse::<f64>()
                    .map_err(|_| HandError::Config(format!("grid: {x:?} is not a number")))
            })
            .collect::<Result<_>>()?;
        match v[..] {
            [lo, hi, step] => {
                AxisSpec::new(lo, hi, step).map_err(|e| HandError::Config(format!("grid: {e}")))
            }
            _ => Err(HandError::Config(format!(
                "grid axis {part:?} must be min:max:step"
            ))),
        }
    };
    match s.split(',').collect::<Vec<_>>()[..] {
        [t2, t6] => Ok(GridSpec {
            theta2: axis(t2)?,
            theta6: axis(t6)?,
        }),
        _ => Err(HandError::Config(
            "grid must be t2min:t2max:step,t6min:t6max:step".into(),
        )),
    }
}

fn from_raw(r: RawConfig) -> Result<RunConfig> {
    let mut p = DesignParams::reference();
    let set = |dst: &mut f64, v: Option<f64>| {
        if let Some(v) = v {
            *dst = v;
        }
    };
    set(&mut p.l1, r.l1);
    set(&mut p.l2, r.l2);
    set(&mut p.l3, r.l3);
    set(&mut p.a0, r.a0);
    set(&mut p.c0, r.c0);
    set(&mut p.f10, r.f10);
    if let Some(a) = r.a123 {
        (p.a1, p.a2, p.a3) = (a, a, a);
    }
    if let Some(b) = r.b {
        (p.b1, p.b2, p.b3) = (b, b, b);
    }
    if let Some(c) = r.c123 {
        (p.c1, p.c2, p.c3) = (c, c, c);
    }
    if let Some(q) = r.q {
        (p.q3, p.q4) = (q, q);
    }
    // lever arms follow the link lengths unless given
    let k12 = r.k12.unwrap_or(p.l1 / 2.0);
    (p.k1, p.k2) = (k12, k12);
    p.k3 = r.k3.unwrap_or(p.l2 / 2.0);
    p.k4 = r.k4.unwrap_or(p.l3 / 2.0);

    let deg = |name: &str, v: Option<f64>, default: f64, lo: f64, hi: f64| -> Result<f64> {
        let v = v.unwrap_or(default);
        if !(v > lo && v < hi) {
            return Err(HandError::Config(format!("{name} must be in ({lo}, {hi})")));
        }
        Ok(v.to_radians())
    };
    p.alpha = deg("alpha", r.alpha_deg, 85.0, 0.0, 180.0)?;
    p.eta = deg("eta", r.eta_deg, 40.0, 0.0, 180.0)?;
    p.delta7 = r.delta7_deg.unwrap_or(90.0).to_radians();

    p.validate().map_err(|e| HandError::Config(e.to_string()))?;
    let mut contact = ContactConfig::from_params(&p);
    if let Some(a) = r.active {
        contact.active = a;
    }
    contact
        .validate(&p)
        .map_err(|e| HandError::Config(e.to_string()))?;
    let grid = r.grid.as_deref().map(parse_grid).transpose()?;
    Ok(RunConfig {
        params: p,
        contact,
        grid,
        out: r.out,
        preset: r.preset.unwrap_or_default(),
    })
}

/// Parses JSON text into a validated config.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let raw: RawConfig = if text.trim().is_empty() {
        RawConfig::default()
    } else {
        serde_json::from_str(text).map_err(|e| HandError::Config(e.to_string()))?
    };
    from_raw(raw)
}

pub fn load_config(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| HandError::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text)
}
