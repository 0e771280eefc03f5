//! Time marching, cycle averaging, the four-vehicle comparison, the
//! extreme-fold snapshot, fold-angle sweeps and the single-DoF roll
//! response.
//!
//! The primary experiment is tethered: the body is held fixed while the
//! aerodynamic wrench is sampled over flapping cycles, which isolates the
//! sign of the roll moment from trim and stability questions. A single
//! run is strictly sequential and deterministic: identical inputs give
//! bit-identical output.

use thiserror::Error;

use crate::aero::{strip_force, total_wrench, AeroParams, Wrench};
use crate::frames::Vec3;
use crate::wing::{
    flap_angles, make_strips, panel_poses, BodyMotion, FlapAngles, FlapDrive, Section, Side,
    TwistCommand, WingGeometry,
};

#[derive(Debug, Error, PartialEq)]
pub enum SimError {
    #[error("config error: {0}")]
    Config(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Plane,
    FlapperFlatHover,
    FlapperFlatCruise,
    FlapperArticulated,
}

impl Variant {
    pub const ALL: [Variant; 4] = [
        Variant::Plane,
        Variant::FlapperFlatCruise,
        Variant::FlapperFlatHover,
        Variant::FlapperArticulated,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Variant::Plane => "plane",
            Variant::FlapperFlatHover => "flapper_flat_hover",
            Variant::FlapperFlatCruise => "flapper_flat_cruise",
            Variant::FlapperArticulated => "flapper_articulated",
        }
    }

    pub fn parse(s: &str) -> Option<Variant> {
        match s {
            "plane" => Some(Variant::Plane),
            "flapper_flat_hover" => Some(Variant::FlapperFlatHover),
            "flapper_flat_cruise" => Some(Variant::FlapperFlatCruise),
            "flapper_articulated" => Some(Variant::FlapperArticulated),
            _ => None,
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VehicleConfig {
    pub variant: Variant,
    pub geom: WingGeometry,
    pub drive: FlapDrive,
    pub aero: AeroParams,
    pub u_cruise: f64,
    /// Static pitch of the whole wing about its spanwise axes; every
    /// panel carries it, the plane variant needs it to lift at all.
    pub wing_incidence: f64,
    /// Roll inertia, used by [`roll_response`] only.
    pub i_xx: f64,
    pub roll_damping: f64,
}

impl Default for VehicleConfig {
    /// The shipped articulated slow-flight configuration: an
    /// upper-hemisphere stroke with a raised fold bias, deep enough in
    /// the folded regime that the roll reversal holds with margin.
    fn default() -> Self {
        VehicleConfig {
            variant: Variant::FlapperArticulated,
            geom: WingGeometry::default(),
            drive: FlapDrive {
                freq_hz: 8.0,
                phi_mid: 20f64.to_radians(),
                phi_amp: 35f64.to_radians(),
                psi_mid: 40f64.to_radians(),
                psi_amp: 50f64.to_radians(),
                phase_lag: std::f64::consts::FRAC_PI_2,
                downstroke_fraction: 0.45,
            },
            aero: AeroParams::default(),
            u_cruise: 1.0,
            wing_incidence: 5f64.to_radians(),
            i_xx: 0.05,
            roll_damping: 0.01,
        }
    }
}

impl VehicleConfig {
    /// Field-level validation shared by every entry point. Variant
    /// consistency is checked separately so parameter sweeps may cross
    /// regime boundaries on purpose.
    pub fn validate_fields(&self) -> Result<(), SimError> {
        self.geom.validate().map_err(|e| SimError::Config(format!("geometry: {e}")))?;
        self.drive.validate().map_err(|e| SimError::Config(format!("drive: {e}")))?;
        self.aero.validate().map_err(|e| SimError::Config(format!("aero: {e}")))?;
        if self.u_cruise < 0.0 {
            return Err(SimError::Config("vehicle: u_cruise must be >= 0".into()));
        }
        if self.roll_damping < 0.0 {
            return Err(SimError::Config("vehicle: roll_damping must be >= 0".into()));
        }
        if !self.wing_incidence.is_finite() {
            return Err(SimError::Config("vehicle: wing_incidence must be finite".into()));
        }
        Ok(())
    }

    pub fn validate_variant(&self) -> Result<(), SimError> {
        let d = &self.drive;
        let err = |m: String| Err(SimError::Config(m));
        match self.variant {
            Variant::Plane => {
                if d.phi_amp != 0.0 || d.psi_amp != 0.0 {
                    return err("plane: drive amplitudes must be 0".into());
                }
                if self.u_cruise <= 0.0 {
                    return err("plane: u_cruise must be > 0".into());
                }
            }
            Variant::FlapperFlatCruise => {
                if d.psi_mid != 0.0 || d.psi_amp != 0.0 {
                    return err("flapper_flat_cruise: psi_mid and psi_amp must be 0".into());
                }
                if self.u_cruise <= 0.0 {
                    return err("flapper_flat_cruise: u_cruise must be > 0".into());
                }
            }
            Variant::FlapperFlatHover => {
                if d.psi_mid != 0.0 || d.psi_amp != 0.0 {
                    return err("flapper_flat_hover: psi_mid and psi_amp must be 0".into());
                }
                if self.u_cruise != 0.0 {
                    return err("flapper_flat_hover: u_cruise must be 0".into());
                }
                // downstroke_fraction = 0.5 is allowed but yields zero
                // cycle means by time reversal
            }
            Variant::FlapperArticulated => {
                if !(d.psi_amp > 0.0) {
                    return err("flapper_articulated: psi_amp must be > 0".into());
                }
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), SimError> {
        self.validate_fields()?;
        self.validate_variant()
    }

    pub fn v_ref(&self) -> f64 {
        let flap = 2.0 * std::f64::consts::PI * self.drive.freq_hz * self.geom.semi_span();
        self.u_cruise.max(flap)
    }

    /// Characteristic force scale for tolerance statements:
    /// `1/2 rho v_ref^2 S_total`.
    pub fn char_force(&self) -> f64 {
        0.5 * self.aero.rho * self.v_ref() * self.v_ref() * self.geom.total_area()
    }

    /// Characteristic moment scale: `char_force * semi_span`.
    pub fn char_moment(&self) -> f64 {
        self.char_force() * self.geom.semi_span()
    }
}

/// Derive one of the comparison vehicles from a shared base config.
///
/// All four share geometry, aero model and incidence. Flat variants drop
/// the fold; the hover variant additionally flies at zero airspeed with a
/// 0.6 downstroke fraction (a time-symmetric hover stroke has exactly
/// zero mean forces, so comparisons need the asymmetry). The plane keeps
/// only the static wing.
pub fn derive_variant(base: &VehicleConfig, variant: Variant) -> VehicleConfig {
    let mut cfg = *base;
    cfg.variant = variant;
    match variant {
        Variant::Plane => {
            cfg.drive.phi_mid = 0.0;
            cfg.drive.phi_amp = 0.0;
            cfg.drive.psi_mid = 0.0;
            cfg.drive.psi_amp = 0.0;
        }
        Variant::FlapperFlatCruise => {
            cfg.drive.psi_mid = 0.0;
            cfg.drive.psi_amp = 0.0;
        }
        Variant::FlapperFlatHover => {
            cfg.drive.psi_mid = 0.0;
            cfg.drive.psi_amp = 0.0;
            cfg.u_cruise = 0.0;
            cfg.drive.downstroke_fraction = 0.6;
        }
        Variant::FlapperArticulated => {}
    }
    cfg
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimSettings {
    pub dt: f64,
    pub n_cycles: usize,
    pub skip_cycles: usize,
}

impl Default for SimSettings {
    fn default() -> Self {
        SimSettings { dt: 5e-4, n_cycles: 4, skip_cycles: 1 }
    }
}

impl SimSettings {
    pub fn validate(&self, freq_hz: f64) -> Result<(), SimError> {
        let period = 1.0 / freq_hz;
        if !(self.dt > 0.0) {
            return Err(SimError::Config("sim: dt must be > 0".into()));
        }
        if self.dt > period / 200.0 * (1.0 + 1e-12) {
            return Err(SimError::Config(format!(
                "sim: dt = {} exceeds period/200 = {}",
                self.dt,
                period / 200.0
            )));
        }
        if self.n_cycles < 2 {
            return Err(SimError::Config("sim: n_cycles must be >= 2".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeSeriesRow {
    pub t: f64,
    pub phi: f64,
    pub psi: f64,
    pub delta_a: f64,
    pub fx: f64,
    pub fy: f64,
    pub fz: f64,
    pub mx: f64,
    pub my: f64,
    pub mz: f64,
}

/// Fixed-step wrench samples; `dt` is the step actually used (the
/// requested step snapped so an integer number of steps covers one
/// flapping period).
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    pub dt: f64,
    pub rows: Vec<TimeSeriesRow>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleAverage {
    /// Mean roll moment Mx.
    pub l_bar: f64,
    /// Mean pitch moment My.
    pub m_bar: f64,
    /// Mean yaw moment Mz.
    pub n_bar: f64,
    /// Mean Fx.
    pub thrust_bar: f64,
    /// Mean -Fz.
    pub lift_bar: f64,
    pub mean_fy: f64,
    pub cycles_used: usize,
}

/// Hold the body fixed and sample the aerodynamic wrench at every step.
pub fn simulate_tethered(
    cfg: &VehicleConfig,
    twist: &TwistCommand,
    settings: &SimSettings,
) -> Result<TimeSeries, SimError> {
    cfg.validate()?;
    run_tethered(cfg, twist, settings)
}

/// Same sampling loop without the variant-consistency check, for sweeps
/// that deliberately cross regime boundaries.
pub fn simulate_tethered_unchecked_variant(
    cfg: &VehicleConfig,
    twist: &TwistCommand,
    settings: &SimSettings,
) -> Result<TimeSeries, SimError> {
    cfg.validate_fields()?;
    run_tethered(cfg, twist, settings)
}

fn run_tethered(
    cfg: &VehicleConfig,
    twist: &TwistCommand,
    settings: &SimSettings,
) -> Result<TimeSeries, SimError> {
    twist.validate().map_err(|e| SimError::Config(format!("twist: {e}")))?;
    settings.validate(cfg.drive.freq_hz)?;

    let period = cfg.drive.period();
    let steps_per_cycle = (period / settings.dt).round() as usize;
    let dt = period / steps_per_cycle as f64;
    let n_steps = steps_per_cycle * (settings.skip_cycles + settings.n_cycles);
    let delta_a = twist.differential_component();

    let mut rows = Vec::with_capacity(n_steps);
    for k in 0..n_steps {
        let t = k as f64 * dt;
        let angles = flap_angles(&cfg.drive, t);
        let panels = panel_poses(&cfg.geom, &angles, twist, cfg.wing_incidence);
        let strips = make_strips(&panels, &cfg.geom, &BodyMotion::default(), cfg.u_cruise);
        let w = total_wrench(&strips, &cfg.aero);
        rows.push(TimeSeriesRow {
            t,
            phi: angles.phi,
            psi: angles.psi,
            delta_a,
            fx: w.force.x,
            fy: w.force.y,
            fz: w.force.z,
            mx: w.moment.x,
            my: w.moment.y,
            mz: w.moment.z,
        });
    }
    Ok(TimeSeries { dt, rows })
}

/// Arithmetic mean over the largest integer number of flapping periods
/// after skipping `skip_cycles` transient cycles.
pub fn cycle_average(
    ts: &TimeSeries,
    freq_hz: f64,
    skip_cycles: usize,
) -> Result<CycleAverage, SimError> {
    let period = 1.0 / freq_hz;
    let rpp_f = period / ts.dt;
    let rpp = rpp_f.round() as usize;
    if rpp == 0 || (rpp_f - rpp as f64).abs() > 1e-6 * rpp_f {
        return Err(SimError::Config(format!(
            "cycle_average: dt = {} does not divide the period {}",
            ts.dt, period
        )));
    }
    let start = skip_cycles * rpp;
    if ts.rows.len() < start + rpp {
        return Err(SimError::InsufficientData(format!(
            "series has {} rows, needs at least {} (skip {} cycles + 1 full period)",
            ts.rows.len(),
            start + rpp,
            skip_cycles
        )));
    }
    let n_use = (ts.rows.len() - start) / rpp;
    let used = &ts.rows[start..start + n_use * rpp];
    let n = used.len() as f64;
    let mut sums = [0.0f64; 6];
    for r in used {
        sums[0] += r.mx;
        sums[1] += r.my;
        sums[2] += r.mz;
        sums[3] += r.fx;
        sums[4] += r.fz;
        sums[5] += r.fy;
    }
    Ok(CycleAverage {
        l_bar: sums[0] / n,
        m_bar: sums[1] / n,
        n_bar: sums[2] / n,
        thrust_bar: sums[3] / n,
        lift_bar: -sums[4] / n,
        mean_fy: sums[5] / n,
        cycles_used: n_use,
    })
}

/// Convenience wrapper: tethered run + cycle average in one call.
pub fn tethered_average(
    cfg: &VehicleConfig,
    twist: &TwistCommand,
    settings: &SimSettings,
) -> Result<CycleAverage, SimError> {
    let ts = simulate_tethered(cfg, twist, settings)?;
    cycle_average(&ts, cfg.drive.freq_hz, settings.skip_cycles)
}

/// Noise floor for sign decisions, measured from the zero-command run:
/// ten times the symmetric-config residual or 1e-12 of the
/// characteristic moment, whichever is larger.
pub fn sign_noise_floor(cfg: &VehicleConfig, l_bar_at_zero: f64) -> f64 {
    (10.0 * l_bar_at_zero.abs()).max(1e-12 * cfg.char_moment())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompareRow {
    pub variant: Variant,
    pub l_bar: f64,
    /// Cycle-mean roll moment of the same variant at zero command.
    pub l_bar_zero: f64,
    pub sign: i8,
}

/// Run all four comparison vehicles with shared geometry under the same
/// differential command (`delta > 0` = left TE up, right TE down) and
/// report the signed cycle-averaged roll moments. Each variant is also
/// run at zero command to establish its noise floor.
pub fn compare_configs(
    base: &VehicleConfig,
    delta: f64,
    settings: &SimSettings,
) -> Result<Vec<CompareRow>, SimError> {
    let mut out = Vec::with_capacity(Variant::ALL.len());
    for variant in Variant::ALL {
        let cfg = derive_variant(base, variant);
        let avg = tethered_average(&cfg, &TwistCommand::differential(delta), settings)?;
        let avg0 = tethered_average(&cfg, &TwistCommand::ZERO, settings)?;
        let floor = sign_noise_floor(&cfg, avg0.l_bar);
        let sign = if avg.l_bar.abs() <= floor {
            0
        } else if avg.l_bar > 0.0 {
            1
        } else {
            -1
        };
        out.push(CompareRow { variant, l_bar: avg.l_bar, l_bar_zero: avg0.l_bar, sign });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PanelForce {
    pub side: Side,
    pub section: Section,
    pub force: Vec3,
}

/// Single-snapshot force analysis of the extreme-fold pose.
#[derive(Debug, Clone, PartialEq)]
pub struct MStaticReport {
    pub wrench: Wrench,
    pub panels: [PanelForce; 4],
    pub right_outer_fy: f64,
    pub left_outer_fy: f64,
    /// Sum of the two outer panels' lateral force components.
    pub net_outer_lateral: f64,
    /// Whether the differential command produced the folded-wing
    /// conversion: a single-signed net lateral force from the outer
    /// panels matching the command sign, together with a roll moment of
    /// the same sign (exact cancellation at zero command). The exactly
    /// mirror-symmetric chain always splits the pair into opposite-signed
    /// per-panel components; the common mode lives in their unequal
    /// magnitudes, hence in the net.
    pub common_mode_ok: bool,
}

/// Snapshot wrench of the folded pose (`psi` = 90 degrees is the vertical
/// outer-panel case) under a differential twist `delta`, with prescribed
/// hinge rates.
#[allow(clippy::too_many_arguments)]
pub fn m_static(
    geom: &WingGeometry,
    aero: &AeroParams,
    delta: f64,
    phi: f64,
    psi: f64,
    phi_dot: f64,
    psi_dot: f64,
    incidence: f64,
) -> MStaticReport {
    let angles = FlapAngles { phi, psi, phi_dot, psi_dot };
    let twist = TwistCommand::differential(delta);
    let panels = panel_poses(geom, &angles, &twist, incidence);
    let strips = make_strips(&panels, geom, &BodyMotion::default(), 0.0);
    let wrench = total_wrench(&strips, aero);

    let counts = [geom.strips_inner, geom.strips_outer, geom.strips_inner, geom.strips_outer];
    let mut panel_forces = [PanelForce {
        side: Side::Right,
        section: Section::Inner,
        force: Vec3::ZERO,
    }; 4];
    let mut offset = 0;
    for (i, panel) in panels.iter().enumerate() {
        let mut f = Vec3::ZERO;
        for s in &strips[offset..offset + counts[i]] {
            f = f + strip_force(s, aero);
        }
        panel_forces[i] = PanelForce { side: panel.side, section: panel.section, force: f };
        offset += counts[i];
    }

    let right_outer_fy = panel_forces[1].force.y;
    let left_outer_fy = panel_forces[3].force.y;
    let net = right_outer_fy + left_outer_fy;
    let lat_scale: f64 = right_outer_fy.abs() + left_outer_fy.abs();
    let mom_scale = lat_scale * (geom.semi_span() + geom.h_com()) + f64::MIN_POSITIVE;

    let common_mode_ok = if delta == 0.0 {
        net.abs() <= 1e-12 * lat_scale.max(f64::MIN_POSITIVE)
            && wrench.moment.x.abs() <= 1e-12 * mom_scale
    } else {
        net * delta > 0.0 && wrench.moment.x * delta > 0.0
    };

    MStaticReport {
        wrench,
        panels: panel_forces,
        right_outer_fy,
        left_outer_fy,
        net_outer_lateral: net,
        common_mode_ok,
    }
}

/// Piecewise-constant control schedule: `(start_time, delta_a)` segments
/// sorted by start time; zero before the first segment.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlSchedule {
    segments: Vec<(f64, f64)>,
}

impl ControlSchedule {
    pub fn new(segments: Vec<(f64, f64)>) -> Result<ControlSchedule, SimError> {
        if segments.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(SimError::Config(
                "control schedule segments must have strictly increasing start times".into(),
            ));
        }
        Ok(ControlSchedule { segments })
    }

    pub fn constant(delta_a: f64) -> ControlSchedule {
        ControlSchedule { segments: vec![(0.0, delta_a)] }
    }

    /// Square wave of the given amplitude: `+amp` on the first half of
    /// each period, `-amp` on the second.
    pub fn square(amplitude: f64, period: f64, duration: f64) -> ControlSchedule {
        let mut segments = Vec::new();
        let mut t = 0.0;
        while t < duration {
            segments.push((t, amplitude));
            segments.push((t + period / 2.0, -amplitude));
            t += period;
        }
        ControlSchedule { segments }
    }

    pub fn delta_at(&self, t: f64) -> f64 {
        let mut value = 0.0;
        for &(start, delta) in &self.segments {
            if t >= start {
                value = delta;
            } else {
                break;
            }
        }
        value
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RollResponseRow {
    pub t: f64,
    pub delta_a: f64,
    /// Roll rate, rad/s.
    pub p: f64,
    /// Integrated roll angle, rad.
    pub roll_angle: f64,
}

/// Classic fixed-step 4th-order integration of the single roll DoF
/// `i_xx * p_dot = M(t, p) - damping * p`, `roll_angle_dot = p`.
/// Returns `(t, p, roll_angle)` rows including the final state.
pub fn integrate_roll(
    moment: &mut dyn FnMut(f64, f64) -> f64,
    i_xx: f64,
    damping: f64,
    dt: f64,
    n_steps: usize,
) -> Vec<(f64, f64, f64)> {
    let mut p = 0.0f64;
    let mut angle = 0.0f64;
    let mut out = Vec::with_capacity(n_steps + 1);
    for k in 0..n_steps {
        let t = k as f64 * dt;
        out.push((t, p, angle));
        let k1p = (moment(t, p) - damping * p) / i_xx;
        let k1a = p;
        let p2 = p + 0.5 * dt * k1p;
        let k2p = (moment(t + 0.5 * dt, p2) - damping * p2) / i_xx;
        let k2a = p2;
        let p3 = p + 0.5 * dt * k2p;
        let k3p = (moment(t + 0.5 * dt, p3) - damping * p3) / i_xx;
        let k3a = p3;
        let p4 = p + dt * k3p;
        let k4p = (moment(t + dt, p4) - damping * p4) / i_xx;
        let k4a = p4;
        p += dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        angle += dt / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
    }
    out.push((n_steps as f64 * dt, p, angle));
    out
}

/// Single rotational DoF about body x under the aerodynamic roll moment,
/// with the body roll rate feeding back into the strip velocities. The
/// run covers `(skip_cycles + n_cycles)` flapping periods at the aero
/// sampling step.
pub fn roll_response(
    cfg: &VehicleConfig,
    schedule: &ControlSchedule,
    settings: &SimSettings,
) -> Result<Vec<RollResponseRow>, SimError> {
    cfg.validate()?;
    settings.validate(cfg.drive.freq_hz)?;
    if !(cfg.i_xx > 0.0) {
        return Err(SimError::Config("vehicle: i_xx must be > 0".into()));
    }

    let period = cfg.drive.period();
    let steps_per_cycle = (period / settings.dt).round() as usize;
    let dt = period / steps_per_cycle as f64;
    let n_steps = steps_per_cycle * (settings.skip_cycles + settings.n_cycles);

    let mut moment = |t: f64, p: f64| -> f64 {
        let delta = schedule.delta_at(t);
        let angles = flap_angles(&cfg.drive, t);
        let twist = TwistCommand::differential(delta);
        let panels = panel_poses(&cfg.geom, &angles, &twist, cfg.wing_incidence);
        let body = BodyMotion { velocity: Vec3::ZERO, rate: Vec3::new(p, 0.0, 0.0) };
        let strips = make_strips(&panels, &cfg.geom, &body, cfg.u_cruise);
        total_wrench(&strips, &cfg.aero).moment.x
    };
    let rows = integrate_roll(&mut moment, cfg.i_xx, cfg.roll_damping, dt, n_steps);
    Ok(rows
        .into_iter()
        .map(|(t, p, roll_angle)| RollResponseRow {
            t,
            delta_a: schedule.delta_at(t),
            p,
            roll_angle,
        })
        .collect())
}

/// Sweepable scalar parameters. Angle parameters are radians at this
/// level; degree conversion happens at the CLI boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    PsiAmp,
    PsiMid,
    PhiMid,
    PhaseLag,
    UCruise,
    HCom,
    FreqHz,
}

impl SweepParam {
    pub fn parse(name: &str) -> Option<SweepParam> {
        match name {
            "psi_amp" | "psi_amp_deg" => Some(SweepParam::PsiAmp),
            "psi_mid" | "psi_mid_deg" => Some(SweepParam::PsiMid),
            "phi_mid" | "phi_mid_deg" => Some(SweepParam::PhiMid),
            "phase_lag" | "phase_lag_deg" => Some(SweepParam::PhaseLag),
            "u_cruise" | "u_cruise_mps" => Some(SweepParam::UCruise),
            "h_com" | "h_com_m" => Some(SweepParam::HCom),
            "freq_hz" => Some(SweepParam::FreqHz),
            _ => None,
        }
    }

    pub fn is_angle(&self) -> bool {
        matches!(
            self,
            SweepParam::PsiAmp | SweepParam::PsiMid | SweepParam::PhiMid | SweepParam::PhaseLag
        )
    }

    fn apply(&self, cfg: &mut VehicleConfig, value: f64) {
        match self {
            SweepParam::PsiAmp => cfg.drive.psi_amp = value,
            SweepParam::PsiMid => cfg.drive.psi_mid = value,
            SweepParam::PhiMid => cfg.drive.phi_mid = value,
            SweepParam::PhaseLag => cfg.drive.phase_lag = value,
            SweepParam::UCruise => cfg.u_cruise = value,
            SweepParam::HCom => cfg.geom.shoulder_offset.z = -value,
            SweepParam::FreqHz => cfg.drive.freq_hz = value,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub l_bar: f64,
    pub n_bar: f64,
    pub thrust_bar: f64,
}

/// Independent tethered runs per parameter value, in input order. The
/// variant-consistency check is skipped: sweeping across a regime
/// boundary (e.g. fold amplitude through zero) is the point.
pub fn sweep(
    cfg: &VehicleConfig,
    param: SweepParam,
    values: &[f64],
    delta: f64,
    settings: &SimSettings,
) -> Result<Vec<SweepRow>, SimError> {
    let twist = TwistCommand::differential(delta);
    let mut rows = Vec::with_capacity(values.len());
    for &value in values {
        let mut case = *cfg;
        param.apply(&mut case, value);
        let ts = simulate_tethered_unchecked_variant(&case, &twist, settings)?;
        let avg = cycle_average(&ts, case.drive.freq_hz, settings.skip_cycles)?;
        rows.push(SweepRow {
            value,
            l_bar: avg.l_bar,
            n_bar: avg.n_bar,
            thrust_bar: avg.thrust_bar,
        });
    }
    Ok(rows)
}

/// Parameter values where `l_bar` crosses zero, linearly interpolated
/// between adjacent sweep rows.
pub fn zero_crossings(rows: &[SweepRow]) -> Vec<f64> {
    let mut out = Vec::new();
    for w in rows.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if a.l_bar == 0.0 {
            continue;
        }
        if a.l_bar.signum() != b.l_bar.signum() {
            let frac = a.l_bar / (a.l_bar - b.l_bar);
            out.push(a.value + frac * (b.value - a.value));
        }
    }
    out
}
