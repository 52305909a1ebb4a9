//! Kinetostatic analysis of a spatial under-actuated finger.
//!
//! The finger couples a spherical parallel mechanism at its base with two
//! planar four-bar phalanges, all driven by a single linear actuator. This
//! crate solves its closed-loop kinematics, builds the transmission matrix
//! `T` and the contact matrix `J`, solves `Tᵀ Jᵀ f = t` for the contact
//! forces and sweeps postures to map where every force stays non-negative.
//!
//! ```
//! use spatial_hand::{forces_at, home_angles, ContactConfig, DesignParams};
//!
//! let p = DesignParams::reference();
//! let c = ContactConfig::from_params(&p);
//! let sol = forces_at(&p, &c, home_angles(&p).unwrap()).unwrap();
//! assert!(sol.f.iter().all(|f| f.is_finite()));
//! ```

// `!(x > lo)` style guards are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod config;
pub mod contact;
pub mod error;
pub mod geom3;
pub mod kinematics;
pub mod oracle;
pub mod stability;
pub mod transmission;

pub use config::{load_config, parse_config, Preset, RunConfig};
pub use contact::{assemble_J, contact_angles, ContactConfig, ContactJacobian};
pub use error::{HandError, Result};
pub use geom3::{compose, plane_intersection_angle, Transform4, Vec3};
pub use kinematics::{
    home_angles, home_pose, loop_aux, ActiveAngles, AssemblyMode, DesignParams, FingerState,
    LoopAux,
};
pub use stability::{
    forces_at, solve_forces, stability_predicate, sweep, AxisSpec, ForceSolution, GridSpec,
    StabilityMap,
};
pub use transmission::{assemble_T, ratios, RatioSet, TransmissionMatrix};
