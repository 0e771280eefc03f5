//! Planar four-bar linkage kinematics for the servo-to-spar twist mechanism.
//!
//! Layout: the crank pivot sits at the origin, the rocker pivot at
//! `(ground_d, 0)`. All joint angles are measured counterclockwise from
//! the ground line. Loop closure:
//!
//! ```text
//! crank_a·e^{iθ2} + coupler_b·e^{iθ3} = ground_d + rocker_c·e^{iθ4}
//! ```

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum LinkageError {
    #[error("link lengths must be strictly positive (a={a}, b={b}, c={c}, d={d})")]
    NonPositiveLength { a: f64, b: f64, c: f64, d: f64 },
    #[error(
        "linkage not assemblable at theta2 = {theta2} rad: \
         crank-tip to rocker-pivot diagonal {diag} outside [{min}, {max}]"
    )]
    NotAssemblable { theta2: f64, diag: f64, min: f64, max: f64 },
    #[error("singular configuration at theta2 = {theta2} rad: {reason}")]
    Singular { theta2: f64, reason: &'static str },
}

/// Which of the two assembly circuits the solver returns.
///
/// Selection is explicit, not continuity-tracked: `Open` keeps the
/// coupler/rocker joint on the positive side of the line from the crank
/// tip to the rocker pivot, `Crossed` on the negative side. At a change
/// point (e.g. the parallelogram) the two circuits meet at the toggles
/// and exchange sides there.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Open,
    Crossed,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourBar {
    pub ground_d: f64,
    pub crank_a: f64,
    pub coupler_b: f64,
    pub rocker_c: f64,
    pub branch: Branch,
}

/// Grashof classification by the shortest-link position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrashofClass {
    CrankRocker,
    DoubleCrank,
    DoubleRocker,
    ChangePoint,
    NonGrashofTripleRocker,
}

impl std::fmt::Display for GrashofClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            GrashofClass::CrankRocker => "crank_rocker",
            GrashofClass::DoubleCrank => "double_crank",
            GrashofClass::DoubleRocker => "double_rocker",
            GrashofClass::ChangePoint => "change_point",
            GrashofClass::NonGrashofTripleRocker => "non_grashof_triple_rocker",
        };
        f.write_str(s)
    }
}

/// Joint angles of an assembled four-bar, radians CCW from the ground line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkageState {
    pub theta2: f64,
    pub theta3: f64,
    pub theta4: f64,
}

impl FourBar {
    /// Plausible default geometry for the servo-to-spar twist mechanism:
    /// 12 mm servo arm, 30 mm connecting bar, 15 mm spar linkage, 30 mm
    /// between the servo arm root and the spar. A crank-rocker, so the
    /// servo never hits an assembly limit.
    pub fn default_servo_linkage() -> FourBar {
        FourBar::new(0.012, 0.030, 0.015, 0.030, Branch::Open).unwrap()
    }

    pub fn new(
        crank_a: f64,
        coupler_b: f64,
        rocker_c: f64,
        ground_d: f64,
        branch: Branch,
    ) -> Result<FourBar, LinkageError> {
        if !(crank_a > 0.0 && coupler_b > 0.0 && rocker_c > 0.0 && ground_d > 0.0) {
            return Err(LinkageError::NonPositiveLength {
                a: crank_a,
                b: coupler_b,
                c: rocker_c,
                d: ground_d,
            });
        }
        Ok(FourBar { ground_d, crank_a, coupler_b, rocker_c, branch })
    }

    pub fn max_length(&self) -> f64 {
        self.crank_a.max(self.coupler_b).max(self.rocker_c).max(self.ground_d)
    }

    /// Residual of the loop-closure equation for a candidate state.
    pub fn closure_residual(&self, s: &LinkageState) -> f64 {
        let re = self.crank_a * s.theta2.cos() + self.coupler_b * s.theta3.cos()
            - self.ground_d
            - self.rocker_c * s.theta4.cos();
        let im = self.crank_a * s.theta2.sin() + self.coupler_b * s.theta3.sin()
            - self.rocker_c * s.theta4.sin();
        (re * re + im * im).sqrt()
    }
}

/// Grashof condition `s + l <= p + q`; equality is the change point, and a
/// Grashof linkage's subclass follows from where the shortest link sits.
pub fn classify(fb: &FourBar) -> GrashofClass {
    let lengths = [fb.crank_a, fb.coupler_b, fb.rocker_c, fb.ground_d];
    let mut sorted = lengths;
    sorted.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let (s, l) = (sorted[0], sorted[3]);
    let (p, q) = (sorted[1], sorted[2]);
    if s + l > p + q {
        return GrashofClass::NonGrashofTripleRocker;
    }
    if s + l == p + q {
        return GrashofClass::ChangePoint;
    }
    if fb.crank_a == s {
        GrashofClass::CrankRocker
    } else if fb.ground_d == s {
        GrashofClass::DoubleCrank
    } else {
        GrashofClass::DoubleRocker
    }
}

/// Closed-form position solution via the tangent half-angle substitution
/// `t = tan(θ4/2)` applied to the Freudenstein form of the loop closure.
///
/// The quadratic has two roots, one per assembly circuit; the requested
/// `branch` picks between them geometrically (see [`Branch`]).
pub fn solve(fb: &FourBar, theta2: f64) -> Result<LinkageState, LinkageError> {
    let (a, b, c, d) = (fb.crank_a, fb.coupler_b, fb.rocker_c, fb.ground_d);
    let (s2, c2) = theta2.sin_cos();

    // crank tip and the diagonal to the rocker pivot
    let ax = a * c2;
    let ay = a * s2;
    let diag = ((ax - d) * (ax - d) + ay * ay).sqrt();
    let tol = 1e-12 * fb.max_length();
    if diag < tol {
        return Err(LinkageError::Singular {
            theta2,
            reason: "crank tip coincides with the rocker pivot",
        });
    }
    if diag > b + c + tol || diag < (b - c).abs() - tol {
        return Err(LinkageError::NotAssemblable {
            theta2,
            diag,
            min: (b - c).abs(),
            max: b + c,
        });
    }

    let k1 = d / a;
    let k2 = d / c;
    let k3 = (a * a - b * b + c * c + d * d) / (2.0 * a * c);
    let qa = c2 - k1 - k2 * c2 + k3;
    let qb = -2.0 * s2;
    let qc = k1 - (k2 + 1.0) * c2 + k3;

    let k_scale = 1.0 + k1.abs() + k2.abs() + k3.abs();
    let mut roots = [0.0f64; 2];
    if qa.abs() > 1e-13 * k_scale {
        let mut disc = qb * qb - 4.0 * qa * qc;
        if disc < 0.0 {
            // assemblability was checked above; a tiny negative here is
            // rounding at the toggle boundary
            disc = 0.0;
        }
        let sq = disc.sqrt();
        roots[0] = 2.0 * ((-qb + sq) / (2.0 * qa)).atan();
        roots[1] = 2.0 * ((-qb - sq) / (2.0 * qa)).atan();
    } else if qb.abs() > 1e-13 * k_scale {
        // qa -> 0 sends one root of the quadratic to t = inf, i.e. θ4 = π
        roots[0] = 2.0 * (-qc / qb).atan();
        roots[1] = std::f64::consts::PI;
    } else {
        // both leading coefficients vanish while the diagonal precheck
        // passed: the fully stretched toggle, θ4 = π as a double root
        roots[0] = std::f64::consts::PI;
        roots[1] = std::f64::consts::PI;
    }

    // Classify each root by which side of the crank-tip -> rocker-pivot
    // line the coupler/rocker joint falls on. Open keeps the joint on the
    // positive side (the parallelogram's non-crossed circuit).
    let pick = |theta4: f64| -> f64 {
        let bx = d + c * theta4.cos();
        let by = c * theta4.sin();
        (d - ax) * (by - ay) - (-ay) * (bx - ax)
    };
    let side0 = pick(roots[0]);
    let side1 = pick(roots[1]);
    let want_open = fb.branch == Branch::Open;
    let theta4 = if (side0 >= 0.0) == want_open || side0 == side1 {
        roots[0]
    } else {
        roots[1]
    };

    let bx = d + c * theta4.cos();
    let by = c * theta4.sin();
    let theta3 = (by - ay).atan2(bx - ax);
    Ok(LinkageState { theta2, theta3, theta4 })
}

/// Analytic `dθ4/dθ2` from differentiating the loop closure:
/// `θ4' = a·sin(θ2 − θ3) / (c·sin(θ4 − θ3))`.
pub fn transmission_ratio(fb: &FourBar, theta2: f64) -> Result<f64, LinkageError> {
    let s = solve(fb, theta2)?;
    let denom = (s.theta4 - s.theta3).sin();
    if denom.abs() < 1e-6 {
        return Err(LinkageError::Singular {
            theta2,
            reason: "coupler and rocker are collinear (toggle configuration)",
        });
    }
    Ok(fb.crank_a * (s.theta2 - s.theta3).sin() / (fb.rocker_c * denom))
}

/// Spar twist produced by a servo command away from its neutral angle:
/// `δ = θ4(neutral + cmd) − θ4(neutral)`, exactly zero at zero command.
pub fn servo_to_spar(
    fb: &FourBar,
    servo_angle_from_neutral: f64,
    neutral_theta2: f64,
) -> Result<f64, LinkageError> {
    let at_neutral = solve(fb, neutral_theta2)?;
    let at_cmd = solve(fb, neutral_theta2 + servo_angle_from_neutral)?;
    Ok(at_cmd.theta4 - at_neutral.theta4)
}
