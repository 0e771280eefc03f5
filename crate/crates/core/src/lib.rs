//! Deterministic multi-rigid-body simulator of a two-section
//! articulated-wing ornithopter with quasi-steady panel aerodynamics.
//!
//! The crate models the articulated wing as a double pendulum (shoulder
//! flap hinge, elbow fold hinge) carrying flat-plate panels, computes
//! per-strip normal-pressure forces, and aggregates them into a wrench
//! about the center of mass. Its purpose is to quantify a counter-
//! intuitive roll-control property: a differential outer-wing twist that
//! rolls a plane left rolls the articulated flapper right, because wing
//! folding turns the differential pitch-axis twist into a common-mode
//! rotation about the vertical axis and the resulting lateral force acts
//! above the center of mass.
//!
//! Modules:
//! - [`frames`]: vectors, rotation matrices, rigid poses, mirror symmetry
//! - [`linkage`]: planar four-bar position analysis for the twist servo
//! - [`wing`]: double-pendulum kinematics, strips, analytic velocities
//! - [`aero`]: quasi-steady plate forces and wrench aggregation
//! - [`sim`]: tethered runs, cycle averages, vehicle comparison, sweeps,
//!   roll response
//! - [`telemetry`]: flight-log parsing and control/roll-rate correlation

pub mod aero;
pub mod frames;
pub mod linkage;
pub mod sim;
pub mod telemetry;
pub mod wing;

pub use aero::{strip_force, total_wrench, AeroModel, AeroParams, Wrench};
pub use frames::{mirror_pose, mirror_xz, Pose, RotMatrix, Vec3};
pub use linkage::{
    classify, servo_to_spar, solve, transmission_ratio, Branch, FourBar, GrashofClass,
    LinkageError, LinkageState,
};
pub use sim::{
    compare_configs, cycle_average, derive_variant, m_static, roll_response, simulate_tethered,
    sweep, tethered_average, zero_crossings, CompareRow, ControlSchedule, CycleAverage,
    MStaticReport, RollResponseRow, SimError, SimSettings, SweepParam, SweepRow, TimeSeries,
    TimeSeriesRow, VehicleConfig, Variant,
};
pub use telemetry::{
    correlate, parse_log, synth_log, CorrelationReport, CorrelationSign, LogRecord,
    TelemetryError,
};
pub use wing::{
    flap_angles, make_strips, panel_poses, strip_velocity_check, BodyMotion, FlapAngles,
    FlapDrive, PanelPose, Section, Side, StripState, TwistCommand, Washout, WingGeometry,
};
