use thiserror::Error;

/// Absolute margin below which a denominator counts as singular.
pub const SINGULAR_EPS: f64 = 1e-9;

/// Slack allowed on arccos arguments before a configuration is declared infeasible.
pub const ACOS_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HandError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("geometry infeasible in {context}: arccos argument {value}")]
    GeometryInfeasible { context: &'static str, value: f64 },

    #[error("unreachable configuration in {context}: closure ratio {value}")]
    Unreachable { context: &'static str, value: f64 },

    #[error("singular configuration in {context}: |{value:e}| below margin")]
    Singular { context: &'static str, value: f64 },

    #[error("stability indeterminate: condition estimate {condition:e}")]
    Indeterminate { condition: f64 },

    #[error("oracle failure: {0}")]
    Oracle(String),

    #[error("config error: {0}")]
    Config(String),
}

impl HandError {
    /// Short machine-readable tag, used in CSV flag columns.
    pub fn tag(&self) -> &'static str {
        match self {
            HandError::InvalidArgument(_) => "invalid-argument",
            HandError::GeometryInfeasible { .. } => "infeasible",
            HandError::Unreachable { .. } => "unreachable",
            HandError::Singular { .. } => "singular",
            HandError::Indeterminate { .. } => "indeterminate",
            HandError::Oracle(_) => "oracle",
            HandError::Config(_) => "config",
        }
    }
}

pub type Result<T> = std::result::Result<T, HandError>;

/// arccos with a small tolerance for round-off; anything further out is an error.
pub(crate) fn acos_checked(x: f64, context: &'static str) -> Result<f64> {
    if !x.is_finite() || x.abs() > 1.0 + ACOS_SLACK {
        return Err(HandError::GeometryInfeasible { context, value: x });
    }
    Ok(x.clamp(-1.0, 1.0).acos())
}

/// Solves `A cos x + B sin x = C` for `x = atan2(B, A) + sign * acos(C / sqrt(A^2 + B^2))`.
pub(crate) fn harmonic_root(
    a: f64,
    b: f64,
    c: f64,
    sign: f64,
    context: &'static str,
) -> Result<f64> {
    let n = a.hypot(b);
    if n < SINGULAR_EPS {
        return Err(HandError::Singular { context, value: n });
    }
    let r = c / n;
    if !r.is_finite() || r.abs() > 1.0 + ACOS_SLACK {
        return Err(HandError::Unreachable { context, value: r });
    }
    Ok(b.atan2(a) + sign * r.clamp(-1.0, 1.0).acos())
}

/// Returns `v` unless its magnitude is below the singularity margin.
pub(crate) fn guard(v: f64, context: &'static str) -> Result<f64> {
    if !v.is_finite() || v.abs() < SINGULAR_EPS {
        Err(HandError::Singular { context, value: v })
    } else {
        Ok(v)
    }
}
