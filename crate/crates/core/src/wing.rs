//! Double-pendulum wing kinematics: shoulder flap hinge -> inner panel ->
//! elbow fold hinge -> outer panel -> spar twist.
//!
//! Both hinges are parallel to body x, so the skeleton is a planar double
//! pendulum in the frontal plane. Positive flap `phi` raises the tip
//! (toward -z); positive fold `psi` raises the outer panel relative to the
//! inner one, `psi` = 90 deg being the capital-M pose with vertical outer
//! panels. Wing incidence and twist rotate panels about their local
//! spanwise (mid-chord spar) axis and therefore move only normals, never
//! strip centroids. The left wing is the exact xz-mirror of the right with
//! its own twist command.

use crate::frames::{mirror_xz, Pose, RotMatrix, Vec3};
use crate::linkage::{self, FourBar, LinkageError};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WingGeometry {
    pub inner_span: f64,
    pub outer_span: f64,
    pub inner_chord: f64,
    pub outer_chord: f64,
    pub strips_inner: usize,
    pub strips_outer: usize,
    /// Right shoulder pivot relative to the CoM; the left shoulder is its
    /// xz-mirror. The default `(0, y, -h)` with `h > 0` puts the wing root
    /// above the center of mass.
    pub shoulder_offset: Vec3,
}

impl Default for WingGeometry {
    fn default() -> Self {
        WingGeometry {
            inner_span: 0.35,
            outer_span: 0.35,
            inner_chord: 0.12,
            outer_chord: 0.12,
            strips_inner: 16,
            strips_outer: 16,
            shoulder_offset: Vec3::new(0.0, 0.02, -0.05),
        }
    }
}

impl WingGeometry {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.inner_span > 0.0 && self.outer_span > 0.0) {
            return Err("spans must be > 0".into());
        }
        if !(self.inner_chord > 0.0 && self.outer_chord > 0.0) {
            return Err("chords must be > 0".into());
        }
        if self.strips_inner < 1 || self.strips_outer < 1 {
            return Err("strip counts must be >= 1".into());
        }
        if self.shoulder_offset.z > 0.0 {
            return Err("shoulder must not sit below the CoM (h_com >= 0)".into());
        }
        if !self.shoulder_offset.is_finite() {
            return Err("shoulder offset must be finite".into());
        }
        Ok(())
    }

    /// Height of the shoulder above the CoM.
    pub fn h_com(&self) -> f64 {
        -self.shoulder_offset.z
    }

    pub fn semi_span(&self) -> f64 {
        self.inner_span + self.outer_span
    }

    /// Both wings, all panels.
    pub fn total_area(&self) -> f64 {
        2.0 * (self.inner_span * self.inner_chord + self.outer_span * self.outer_chord)
    }
}

/// Prescribed flapping drive. Flap and fold are phase-locked sinusoids in
/// a shared warped phase; `downstroke_fraction` is the fraction of the
/// period spent on the downstroke (0.5 = time-symmetric strokes).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlapDrive {
    pub freq_hz: f64,
    pub phi_mid: f64,
    pub phi_amp: f64,
    pub psi_mid: f64,
    pub psi_amp: f64,
    /// Fold phase offset relative to flap: psi follows
    /// `cos(2*pi*w + phase_lag)`.
    pub phase_lag: f64,
    pub downstroke_fraction: f64,
}

impl Default for FlapDrive {
    fn default() -> Self {
        FlapDrive {
            freq_hz: 4.0,
            phi_mid: 20f64.to_radians(),
            phi_amp: 35f64.to_radians(),
            psi_mid: 0.0,
            psi_amp: 60f64.to_radians(),
            phase_lag: std::f64::consts::FRAC_PI_2,
            downstroke_fraction: 0.5,
        }
    }
}

impl FlapDrive {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.freq_hz > 0.0) {
            return Err("freq_hz must be > 0".into());
        }
        if self.phi_amp < 0.0 || self.psi_amp < 0.0 {
            return Err("amplitudes must be >= 0".into());
        }
        if self.phi_mid.abs() + self.phi_amp >= std::f64::consts::FRAC_PI_2 {
            return Err("|phi_mid| + phi_amp must stay below 90 degrees".into());
        }
        if !(self.downstroke_fraction > 0.0 && self.downstroke_fraction < 1.0) {
            return Err("downstroke_fraction must lie in (0, 1)".into());
        }
        Ok(())
    }

    pub fn period(&self) -> f64 {
        1.0 / self.freq_hz
    }
}

/// Flap and fold angles plus their exact analytic rates at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlapAngles {
    pub phi: f64,
    pub psi: f64,
    pub phi_dot: f64,
    pub psi_dot: f64,
}

/// Piecewise-linear period-1 phase warp realizing `downstroke_fraction`:
/// phase [0, 0.5] (the downstroke half of the cosine) is traversed in
/// `f` of the period, the rest in `1 - f`. Returns (w, dw/dtau).
fn phase_warp(tau: f64, f: f64) -> (f64, f64) {
    if tau < f {
        (0.5 * tau / f, 0.5 / f)
    } else {
        (0.5 + 0.5 * (tau - f) / (1.0 - f), 0.5 / (1.0 - f))
    }
}

/// Drive evaluation: `phi(t) = phi_mid + phi_amp*cos(2*pi*w(t/T))`,
/// `psi(t) = psi_mid + psi_amp*cos(2*pi*w(t/T) + phase_lag)`.
pub fn flap_angles(drive: &FlapDrive, t: f64) -> FlapAngles {
    let tau = (t * drive.freq_hz).rem_euclid(1.0);
    let (w, wd) = phase_warp(tau, drive.downstroke_fraction);
    let theta = 2.0 * std::f64::consts::PI * w;
    let theta_dot = 2.0 * std::f64::consts::PI * wd * drive.freq_hz;
    FlapAngles {
        phi: drive.phi_mid + drive.phi_amp * theta.cos(),
        psi: drive.psi_mid + drive.psi_amp * (theta + drive.phase_lag).cos(),
        phi_dot: -drive.phi_amp * theta.sin() * theta_dot,
        psi_dot: -drive.psi_amp * (theta + drive.phase_lag).sin() * theta_dot,
    }
}

/// Fold driven through a four-bar instead of the prescribed sinusoid: the
/// flap angle moves the crank away from its neutral and the rocker motion
/// becomes the fold, `psi = psi_mid + (theta4(neutral + phi - phi_mid) -
/// theta4(neutral))`. `psi_amp` and `phase_lag` are ignored in this mode.
#[derive(Debug, Clone, Copy)]
pub struct LinkageFold {
    pub four_bar: FourBar,
    pub neutral_theta2: f64,
}

impl Default for LinkageFold {
    fn default() -> Self {
        LinkageFold {
            four_bar: FourBar::default_servo_linkage(),
            neutral_theta2: std::f64::consts::FRAC_PI_2,
        }
    }
}

pub fn flap_angles_with_linkage(
    drive: &FlapDrive,
    fold: &LinkageFold,
    t: f64,
) -> Result<FlapAngles, LinkageError> {
    let base = flap_angles(drive, t);
    let theta2 = fold.neutral_theta2 + (base.phi - drive.phi_mid);
    let psi = drive.psi_mid
        + linkage::servo_to_spar(&fold.four_bar, base.phi - drive.phi_mid, fold.neutral_theta2)?;
    let ratio = linkage::transmission_ratio(&fold.four_bar, theta2)?;
    Ok(FlapAngles {
        phi: base.phi,
        psi,
        phi_dot: base.phi_dot,
        psi_dot: ratio * base.phi_dot,
    })
}

/// Spanwise twist distribution along the outer panel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Washout {
    /// Uniform twist: the whole outer panel rotates by delta.
    #[default]
    Rigid,
    /// Membrane-like twist from the spar bend: zero at the elbow growing
    /// linearly to delta at the tip.
    LinearToTip,
}

/// Quasi-static outer-panel twist, positive = trailing edge down
/// (lift-increasing, aileron-down). The paper-style differential command
/// is `delta_left = -delta`, `delta_right = +delta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwistCommand {
    pub delta_left: f64,
    pub delta_right: f64,
    pub washout: Washout,
}

impl TwistCommand {
    pub const ZERO: TwistCommand = TwistCommand {
        delta_left: 0.0,
        delta_right: 0.0,
        washout: Washout::Rigid,
    };

    /// Differential aileron-style command: left TE up, right TE down for
    /// positive `delta`.
    pub fn differential(delta: f64) -> TwistCommand {
        TwistCommand { delta_left: -delta, delta_right: delta, washout: Washout::Rigid }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.delta_left.abs() >= std::f64::consts::FRAC_PI_4
            || self.delta_right.abs() >= std::f64::consts::FRAC_PI_4
        {
            return Err("twist commands must stay below 45 degrees".into());
        }
        Ok(())
    }

    /// Aileron-style scalar: `(delta_right - delta_left) / 2`.
    pub fn differential_component(&self) -> f64 {
        0.5 * (self.delta_right - self.delta_left)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Section {
    Inner,
    Outer,
}

/// Pose and rigid-body rates of one wing panel in the body frame.
///
/// The panel-local frame has x along the chord (forward), y spanwise and
/// z along the plate normal; the panel surface is the local xy plane with
/// the spar on the local y axis at mid-chord. For the right wing local y
/// points outboard; the mirrored left wing has local y pointing inboard,
/// so left strip offsets carry negative local y.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PanelPose {
    pub side: Side,
    pub section: Section,
    pub pose: Pose,
    /// Body-frame angular velocity of the panel.
    pub angular_velocity: Vec3,
    /// Body-frame point the panel rotates about (shoulder or elbow).
    pub hinge_point: Vec3,
    /// Body-frame velocity of that hinge point (zero at the shoulder).
    pub hinge_velocity: Vec3,
    /// Extra spanwise twist at the tip beyond `pose`, interpolated
    /// linearly from zero at the root (nonzero only for
    /// `Washout::LinearToTip` outer panels).
    pub washout_tip: f64,
}

/// One aerodynamic strip: mid-chord centroid, unit plate normal, area and
/// the centroid's velocity relative to the air mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StripState {
    pub centroid: Vec3,
    pub normal: Vec3,
    pub area: f64,
    pub v_air: Vec3,
}

fn side_sign(side: Side) -> f64 {
    match side {
        Side::Right => 1.0,
        Side::Left => -1.0,
    }
}

/// Forward kinematics of all four panels at one instant.
///
/// `incidence` is the static pitch of the whole wing: every panel is
/// rotated by it about its local spanwise axis, the outer panels by
/// `incidence + delta` (their twist command on top).
pub fn panel_poses(
    geom: &WingGeometry,
    angles: &FlapAngles,
    twist: &TwistCommand,
    incidence: f64,
) -> [PanelPose; 4] {
    let right = side_panels(geom, angles, twist.delta_right, twist.washout, incidence, Side::Right);
    let left = side_panels(geom, angles, twist.delta_left, twist.washout, incidence, Side::Left);
    [right[0], right[1], left[0], left[1]]
}

fn side_panels(
    geom: &WingGeometry,
    angles: &FlapAngles,
    delta: f64,
    washout: Washout,
    incidence: f64,
    side: Side,
) -> [PanelPose; 2] {
    let sgn = side_sign(side);
    let shoulder = if side == Side::Right {
        geom.shoulder_offset
    } else {
        mirror_xz(geom.shoulder_offset)
    };
    // Right-wing hinge rotations are -phi, -psi about body x (tip up =
    // toward -z); the mirrored left wing flips the hinge angle signs.
    let r_flap = RotMatrix::about_x(-sgn * angles.phi);
    let r_fold = RotMatrix::about_x(-sgn * (angles.phi + angles.psi));

    let (twist_in_pose, twist_out_pose, washout_tip) = match washout {
        Washout::Rigid => (incidence, incidence + delta, 0.0),
        Washout::LinearToTip => (incidence, incidence, delta),
    };

    let inner_pose = Pose::new(r_flap.mat_mul(&RotMatrix::about_y(twist_in_pose)), shoulder);
    let elbow = shoulder + r_flap.apply(Vec3::new(0.0, sgn * geom.inner_span, 0.0));
    let outer_pose = Pose::new(r_fold.mat_mul(&RotMatrix::about_y(twist_out_pose)), elbow);

    let omega_inner = Vec3::new(-sgn * angles.phi_dot, 0.0, 0.0);
    let omega_outer = Vec3::new(-sgn * (angles.phi_dot + angles.psi_dot), 0.0, 0.0);
    let elbow_velocity = omega_inner.cross(elbow - shoulder);

    [
        PanelPose {
            side,
            section: Section::Inner,
            pose: inner_pose,
            angular_velocity: omega_inner,
            hinge_point: shoulder,
            hinge_velocity: Vec3::ZERO,
            washout_tip: 0.0,
        },
        PanelPose {
            side,
            section: Section::Outer,
            pose: outer_pose,
            angular_velocity: omega_outer,
            hinge_point: elbow,
            hinge_velocity: elbow_velocity,
            washout_tip,
        },
    ]
}

/// Extra rigid-body motion of the vehicle itself, folded into every
/// strip's air-relative velocity.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BodyMotion {
    pub velocity: Vec3,
    /// Body angular rate (roll feedback enters as `p * x_axis`).
    pub rate: Vec3,
}

/// Spanwise discretization of the panels into equal-width strips.
///
/// `v_air` is the strip centroid's velocity relative to the air mass:
/// structural chain velocity + body motion + cruise `(+U, 0, 0)` (a
/// static strip in cruise at speed U sees `v_air = (U, 0, 0)`).
pub fn make_strips(
    panels: &[PanelPose],
    geom: &WingGeometry,
    body: &BodyMotion,
    freestream_u: f64,
) -> Vec<StripState> {
    let mut strips =
        Vec::with_capacity(panels.len() / 2 * (geom.strips_inner + geom.strips_outer));
    for panel in panels {
        let (count, span, chord) = match panel.section {
            Section::Inner => (geom.strips_inner, geom.inner_span, geom.inner_chord),
            Section::Outer => (geom.strips_outer, geom.outer_span, geom.outer_chord),
        };
        let sgn = side_sign(panel.side);
        let width = span / count as f64;
        let area = width * chord;
        for k in 0..count {
            let s = (k as f64 + 0.5) * width;
            let centroid = panel.pose.transform_point(Vec3::new(0.0, sgn * s, 0.0));
            let normal = if panel.washout_tip == 0.0 {
                panel.pose.transform_vector(Vec3::z_axis())
            } else {
                let local = RotMatrix::about_y(panel.washout_tip * s / span).apply(Vec3::z_axis());
                panel.pose.transform_vector(local)
            };
            let v_structural = panel.hinge_velocity
                + panel.angular_velocity.cross(centroid - panel.hinge_point);
            let v_air = v_structural
                + body.velocity
                + body.rate.cross(centroid)
                + Vec3::new(freestream_u, 0.0, 0.0);
            strips.push(StripState { centroid, normal, area, v_air });
        }
    }
    strips
}

/// Full kinematic snapshot: angles, poses and strips at time `t` for a
/// tethered body (no extra body motion).
pub fn strips_at(
    geom: &WingGeometry,
    drive: &FlapDrive,
    twist: &TwistCommand,
    incidence: f64,
    freestream_u: f64,
    t: f64,
) -> Vec<StripState> {
    let angles = flap_angles(drive, t);
    let panels = panel_poses(geom, &angles, twist, incidence);
    make_strips(&panels, geom, &BodyMotion::default(), freestream_u)
}

/// Verification harness: compares the analytic structural strip velocities
/// against central finite differences of the centroid positions at
/// `t +/- h` and returns the largest error relative to the largest
/// analytic strip speed (zero when every strip is at rest).
pub fn strip_velocity_check(
    geom: &WingGeometry,
    drive: &FlapDrive,
    twist: &TwistCommand,
    incidence: f64,
    t: f64,
    h: f64,
) -> f64 {
    let strips = strips_at(geom, drive, twist, incidence, 0.0, t);
    let plus = strips_at(geom, drive, twist, incidence, 0.0, t + h);
    let minus = strips_at(geom, drive, twist, incidence, 0.0, t - h);

    let v_scale = strips
        .iter()
        .map(|s| s.v_air.norm())
        .fold(0.0f64, f64::max);
    if v_scale == 0.0 {
        return strips
            .iter()
            .zip(plus.iter().zip(minus.iter()))
            .map(|(_, (p, m))| ((p.centroid - m.centroid) * (1.0 / (2.0 * h))).norm())
            .fold(0.0, f64::max);
    }
    strips
        .iter()
        .zip(plus.iter().zip(minus.iter()))
        .map(|(s, (p, m))| {
            let fd = (p.centroid - m.centroid) * (1.0 / (2.0 * h));
            (fd - s.v_air).norm() / v_scale
        })
        .fold(0.0, f64::max)
}
