//! Quasi-steady plate aerodynamics: per-strip normal-pressure force and
//! aggregation into a wrench about the center of mass.
//!
//! The default law is pure plate drag opposing the normal component of
//! motion through the air, `F = -1/2 rho c_n0 A v_n |v_n| n`. A flat-plate
//! lift/drag variant exists to show the conclusions do not hinge on the
//! drag-only law. Neither model carries spanwise flow, added mass or wake
//! memory.

use crate::frames::Vec3;
use crate::wing::StripState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AeroModel {
    #[default]
    NormalPressure,
    FlatPlateLiftDrag,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AeroParams {
    pub rho: f64,
    /// Flat-plate normal-force coefficient for the normal-pressure law.
    pub c_n0: f64,
    pub model: AeroModel,
}

impl Default for AeroParams {
    fn default() -> Self {
        AeroParams { rho: 1.225, c_n0: 1.28, model: AeroModel::NormalPressure }
    }
}

impl AeroParams {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.rho > 0.0) {
            return Err("rho must be > 0".into());
        }
        if !(self.c_n0 > 0.0) {
            return Err("c_n0 must be > 0".into());
        }
        Ok(())
    }
}

/// Total force and moment about `ref_point` (the CoM, body origin, unless
/// re-referenced with [`Wrench::about`]). Positive `moment.x` is the
/// right-handed roll moment that drops the right wing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wrench {
    pub force: Vec3,
    pub moment: Vec3,
    pub ref_point: Vec3,
}

impl Wrench {
    pub const ZERO: Wrench =
        Wrench { force: Vec3::ZERO, moment: Vec3::ZERO, ref_point: Vec3::ZERO };

    /// Moment transport: `M(r0) = M(ref) - (r0 - ref) x F`.
    pub fn about(&self, r0: Vec3) -> Wrench {
        Wrench {
            force: self.force,
            moment: self.moment - (r0 - self.ref_point).cross(self.force),
            ref_point: r0,
        }
    }
}

/// Aerodynamic force on one strip, applied at its centroid.
pub fn strip_force(s: &StripState, p: &AeroParams) -> Vec3 {
    let v_n = s.v_air.dot(s.normal);
    match p.model {
        AeroModel::NormalPressure => s.normal * (-0.5 * p.rho * p.c_n0 * s.area * v_n * v_n.abs()),
        AeroModel::FlatPlateLiftDrag => {
            let speed = s.v_air.norm();
            if speed == 0.0 {
                return Vec3::ZERO;
            }
            let v_hat = s.v_air * (1.0 / speed);
            let sin_a = (v_n.abs() / speed).min(1.0);
            let cos_a = (1.0 - sin_a * sin_a).max(0.0).sqrt();
            let q = 0.5 * p.rho * s.area * speed * speed;
            // drag opposes motion through the air
            let drag = v_hat * (-q * 2.0 * sin_a * sin_a);
            // lift is normal to v_air in the (v_air, normal) plane, on the
            // suction side
            let e = s.normal - v_hat * s.normal.dot(v_hat);
            let e_norm = e.norm();
            if e_norm < 1e-12 {
                return drag;
            }
            let lift_dir = e * (-v_n.signum() / e_norm);
            drag + lift_dir * (q * 2.0 * sin_a * cos_a)
        }
    }
}

/// Sum of strip forces and their moments about the CoM (the body origin).
/// Summation is sequential in strip order for bit-reproducibility.
pub fn total_wrench(strips: &[StripState], p: &AeroParams) -> Wrench {
    let mut force = Vec3::ZERO;
    let mut moment = Vec3::ZERO;
    for s in strips {
        let f = strip_force(s, p);
        force = force + f;
        moment = moment + s.centroid.cross(f);
    }
    Wrench { force, moment, ref_point: Vec3::ZERO }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strip(centroid: Vec3, normal: Vec3, area: f64, v_air: Vec3) -> StripState {
        StripState { centroid, normal, area, v_air }
    }

    #[test]
    fn in_plane_flow_gives_zero_normal_force() {
        let s = strip(Vec3::ZERO, Vec3::z_axis(), 0.5, Vec3::new(3.0, -1.0, 0.0));
        assert_eq!(strip_force(&s, &AeroParams::default()), Vec3::ZERO);
    }

    #[test]
    fn unit_case_evaluates_directly() {
        // 0.5 * 1.225 * 1.28 * 1 * 1 = 0.784
        let s = strip(Vec3::ZERO, Vec3::z_axis(), 1.0, Vec3::new(0.0, 0.0, 1.0));
        let f = strip_force(&s, &AeroParams::default());
        assert!((f - Vec3::new(0.0, 0.0, -0.784)).norm() < 1e-15);
    }

    #[test]
    fn quadratic_in_normal_speed() {
        let p = AeroParams::default();
        let f1 = strip_force(&strip(Vec3::ZERO, Vec3::z_axis(), 1.0, Vec3::new(0.0, 0.0, 1.5)), &p);
        let f2 = strip_force(&strip(Vec3::ZERO, Vec3::z_axis(), 1.0, Vec3::new(0.0, 0.0, 3.0)), &p);
        assert!((f2.norm() - 4.0 * f1.norm()).abs() < 1e-12);
    }

    #[test]
    fn odd_in_velocity_both_models() {
        for model in [AeroModel::NormalPressure, AeroModel::FlatPlateLiftDrag] {
            let p = AeroParams { model, ..AeroParams::default() };
            let n = Vec3::new(0.1, -0.3, 0.9489736740677201).normalized();
            let v = Vec3::new(2.0, 1.0, -0.7);
            let f_pos = strip_force(&strip(Vec3::ZERO, n, 0.7, v), &p);
            let f_neg = strip_force(&strip(Vec3::ZERO, n, 0.7, -v), &p);
            assert_eq!(f_pos, -f_neg);
        }
    }

    #[test]
    fn normal_pressure_has_no_in_plane_component() {
        let p = AeroParams::default();
        let n = Vec3::new(0.2, 0.5, 0.8426149773176359).normalized();
        let v = Vec3::new(1.0, -2.0, 0.5);
        let f = strip_force(&strip(Vec3::ZERO, n, 0.3, v), &p);
        let cross = f.cross(n).norm();
        assert!(cross < 1e-15 * f.norm().max(1.0));
    }

    #[test]
    fn flat_plate_at_normal_incidence_matches_cn_two() {
        // pure normal flow: lift vanishes and drag equals the
        // normal-pressure law with c_n0 = 2
        let np = AeroParams { c_n0: 2.0, ..AeroParams::default() };
        let fp = AeroParams { model: AeroModel::FlatPlateLiftDrag, ..AeroParams::default() };
        let s = strip(Vec3::ZERO, Vec3::z_axis(), 1.0, Vec3::new(0.0, 0.0, 1.0));
        assert_eq!(strip_force(&s, &np), strip_force(&s, &fp));
        let s2 = strip(Vec3::ZERO, Vec3::z_axis(), 0.4, Vec3::new(0.0, 0.0, -2.5));
        let a = strip_force(&s2, &np);
        let b = strip_force(&s2, &fp);
        assert!((a - b).norm() < 1e-14 * a.norm());
    }

    #[test]
    fn flat_plate_lift_opposes_gravity_in_cruise() {
        // plate pitched leading-edge up in forward flow must lift (-z)
        let p = AeroParams { model: AeroModel::FlatPlateLiftDrag, ..AeroParams::default() };
        let incidence = 0.1f64;
        let n = Vec3::new(incidence.sin(), 0.0, incidence.cos());
        let f = strip_force(&strip(Vec3::ZERO, n, 1.0, Vec3::new(6.0, 0.0, 0.0)), &p);
        assert!(f.z < 0.0, "lift should point up, got {f:?}");
        assert!(f.x < 0.0, "drag should oppose motion, got {f:?}");
    }

    #[test]
    fn force_above_com_rolls_right() {
        // a rightward force applied above the CoM gives a positive
        // (right-handed) roll moment: (0,0,-h) x (0,f,0) = (h f, 0, 0)
        let p = AeroParams::default();
        let h = 0.2;
        let s = strip(Vec3::new(0.0, 0.0, -h), Vec3::y_axis(), 1.0, Vec3::new(0.0, -1.0, 0.0));
        let w = total_wrench(&[s], &p);
        assert!(w.force.y > 0.0);
        assert!((w.moment.x - h * w.force.y).abs() < 1e-15);
        assert!(w.moment.x > 0.0);
    }

    #[test]
    fn mirror_pair_cancels_lateral_terms() {
        let p = AeroParams::default();
        let r = Vec3::new(0.1, 0.4, -0.1);
        let n = Vec3::new(0.05, 0.2, 0.9782586334894937).normalized();
        let v = Vec3::new(1.0, 0.5, -2.0);
        let sr = strip(r, n, 0.3, v);
        let sl = strip(
            crate::frames::mirror_xz(r),
            crate::frames::mirror_xz(n),
            0.3,
            crate::frames::mirror_xz(v),
        );
        let w = total_wrench(&[sr, sl], &p);
        assert!(w.force.y.abs() < 1e-15);
        assert!(w.moment.x.abs() < 1e-15);
        assert!(w.moment.z.abs() < 1e-15);
    }

    #[test]
    fn wrench_is_linear_in_area() {
        let p = AeroParams::default();
        let r = Vec3::new(0.0, 0.5, -0.05);
        let n = Vec3::z_axis();
        let v = Vec3::new(0.0, 0.0, 2.0);
        let merged = total_wrench(&[strip(r, n, 0.6, v)], &p);
        let split = total_wrench(&[strip(r, n, 0.25, v), strip(r, n, 0.35, v)], &p);
        assert!((merged.force - split.force).norm() < 1e-12 * merged.force.norm());
        assert!((merged.moment - split.moment).norm() < 1e-12 * merged.moment.norm());
    }

    #[test]
    fn moment_transport_theorem() {
        let p = AeroParams::default();
        let strips = [
            strip(Vec3::new(0.0, 0.5, -0.1), Vec3::z_axis(), 0.2, Vec3::new(1.0, 0.0, 2.0)),
            strip(
                Vec3::new(0.1, -0.4, -0.2),
                Vec3::new(0.3, 0.0, 0.9539392014169456).normalized(),
                0.4,
                Vec3::new(-1.0, 2.0, 0.5),
            ),
        ];
        let w = total_wrench(&strips, &p);
        let r0 = Vec3::new(0.3, -0.2, 0.7);
        let moved = w.about(r0);
        let expect = w.moment - r0.cross(w.force);
        assert!((moved.moment - expect).norm() < 1e-12 * w.moment.norm().max(1.0));
        assert_eq!(moved.force, w.force);
    }
}
