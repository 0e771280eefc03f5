//! Run-configuration file: a flat two-level TOML document with sections
//! `vehicle`, `geometry`, `drive`, `aero` and `sim`. Every key is
//! required and unknown keys are hard errors. Degrees at this boundary,
//! radians inside.

use std::path::Path;

use anyhow::{anyhow, Context, Result};
use serde::Deserialize;

use foldwing::aero::{AeroModel, AeroParams};
use foldwing::frames::Vec3;
use foldwing::sim::{SimSettings, VehicleConfig, Variant};
use foldwing::wing::{FlapDrive, WingGeometry};

/// Lateral offset of each shoulder pivot from the centerline; the config
/// file exposes only the height `h_com_m`.
pub const SHOULDER_LATERAL_OFFSET_M: f64 = 0.02;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RunConfigFile {
    vehicle: VehicleSection,
    geometry: GeometrySection,
    drive: DriveSection,
    aero: AeroSection,
    sim: SimSection,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct VehicleSection {
    variant: String,
    u_cruise_mps: f64,
    wing_incidence_deg: f64,
    i_xx: f64,
    roll_damping: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeometrySection {
    inner_span_m: f64,
    outer_span_m: f64,
    inner_chord_m: f64,
    outer_chord_m: f64,
    h_com_m: f64,
    strips_inner: usize,
    strips_outer: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DriveSection {
    freq_hz: f64,
    phi_mid_deg: f64,
    phi_amp_deg: f64,
    psi_mid_deg: f64,
    psi_amp_deg: f64,
    phase_lag_deg: f64,
    downstroke_fraction: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AeroSection {
    rho: f64,
    c_n0: f64,
    model: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SimSection {
    dt_s: f64,
    n_cycles: usize,
    skip_cycles: usize,
}

/// A fully validated run setup.
#[derive(Debug, Clone)]
pub struct RunSetup {
    pub vehicle: VehicleConfig,
    pub settings: SimSettings,
    /// FNV-1a hash of the raw config file bytes.
    pub config_hash: String,
}

fn fnv1a_hex(bytes: &[u8]) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

/// Load, parse and validate a config file. Parse errors carry the TOML
/// line/column; validation errors name the offending section and key.
pub fn load(path: &Path) -> Result<RunSetup> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config file '{}'", path.display()))?;
    let parsed: RunConfigFile = toml::from_str(&text)
        .map_err(|e| anyhow!("config file '{}': {e}", path.display()))?;

    let variant = Variant::parse(&parsed.vehicle.variant).ok_or_else(|| {
        anyhow!(
            "config file '{}': vehicle.variant '{}' is not one of plane, \
             flapper_flat_hover, flapper_flat_cruise, flapper_articulated",
            path.display(),
            parsed.vehicle.variant
        )
    })?;
    let model = match parsed.aero.model.as_str() {
        "normal_pressure" => AeroModel::NormalPressure,
        "flat_plate_lift_drag" => AeroModel::FlatPlateLiftDrag,
        other => {
            return Err(anyhow!(
                "config file '{}': aero.model '{other}' is not one of \
                 normal_pressure, flat_plate_lift_drag",
                path.display()
            ))
        }
    };
    if parsed.geometry.h_com_m < 0.0 {
        return Err(anyhow!(
            "config file '{}': geometry.h_com_m must be >= 0",
            path.display()
        ));
    }

    let vehicle = VehicleConfig {
        variant,
        geom: WingGeometry {
            inner_span: parsed.geometry.inner_span_m,
            outer_span: parsed.geometry.outer_span_m,
            inner_chord: parsed.geometry.inner_chord_m,
            outer_chord: parsed.geometry.outer_chord_m,
            strips_inner: parsed.geometry.strips_inner,
            strips_outer: parsed.geometry.strips_outer,
            shoulder_offset: Vec3::new(
                0.0,
                SHOULDER_LATERAL_OFFSET_M,
                -parsed.geometry.h_com_m,
            ),
        },
        drive: FlapDrive {
            freq_hz: parsed.drive.freq_hz,
            phi_mid: parsed.drive.phi_mid_deg.to_radians(),
            phi_amp: parsed.drive.phi_amp_deg.to_radians(),
            psi_mid: parsed.drive.psi_mid_deg.to_radians(),
            psi_amp: parsed.drive.psi_amp_deg.to_radians(),
            phase_lag: parsed.drive.phase_lag_deg.to_radians(),
            downstroke_fraction: parsed.drive.downstroke_fraction,
        },
        aero: AeroParams { rho: parsed.aero.rho, c_n0: parsed.aero.c_n0, model },
        u_cruise: parsed.vehicle.u_cruise_mps,
        wing_incidence: parsed.vehicle.wing_incidence_deg.to_radians(),
        i_xx: parsed.vehicle.i_xx,
        roll_damping: parsed.vehicle.roll_damping,
    };
    let settings = SimSettings {
        dt: parsed.sim.dt_s,
        n_cycles: parsed.sim.n_cycles,
        skip_cycles: parsed.sim.skip_cycles,
    };

    vehicle
        .validate_fields()
        .map_err(|e| anyhow!("config file '{}': {e}", path.display()))?;
    settings
        .validate(vehicle.drive.freq_hz)
        .map_err(|e| anyhow!("config file '{}': {e}", path.display()))?;

    Ok(RunSetup { vehicle, settings, config_hash: fnv1a_hex(text.as_bytes()) })
}

/// Variant-consistency check, applied by the subcommands that run a
/// single configuration as-is (sweeps cross regime boundaries on
/// purpose and skip it).
pub fn check_variant(setup: &RunSetup, path: &Path) -> Result<()> {
    setup
        .vehicle
        .validate_variant()
        .map_err(|e| anyhow!("config file '{}': {e}", path.display()))
}
