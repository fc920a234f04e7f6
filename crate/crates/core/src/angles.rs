//! Monogamy caps and the per-edge angle schedule.
//!
//! Three monogamy-of-entanglement caps live here: the star cap
//! [`star_bound`] (degree-aware), the aggregate cap [`q_bound`] on sums of
//! positive neighbor values, and the pairwise cap [`r_bound`]. The
//! [`ScheduleParams`] type holds the constants and the piecewise profile
//! turning a relaxed edge value g into a rotation angle: sin^2 theta follows
//! the piecewise-linear profile for g below the switch point `beta` and the
//! rational profile above it.

use serde::Serialize;
use thiserror::Error;

/// Certified approximation ratio targeted by the paper schedule.
pub const ALPHA_PRIME: f64 = 0.839511;
/// Branch switch point of the schedule.
pub const BETA: f64 = 0.67;
/// Profile value pinned at the first interior breakpoint.
pub const GAMMA: f64 = 0.049;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScheduleError {
    #[error("{func}: argument {value} outside domain {domain}")]
    DomainViolation { func: &'static str, value: f64, domain: &'static str },
    #[error("{func}: internal profile value {value} escaped [0, 1]; schedule is inconsistent")]
    ProfileOutOfRange { func: &'static str, value: f64 },
    #[error("invalid schedule parameters: {0}")]
    InvalidParams(String),
}

fn check_domain(
    func: &'static str,
    value: f64,
    lo: f64,
    hi: f64,
    domain: &'static str,
) -> Result<(), ScheduleError> {
    // absorb rounding at the endpoints; reject genuine excursions
    if !(value >= lo - 1e-12 && value <= hi + 1e-12) || value.is_nan() {
        return Err(ScheduleError::DomainViolation { func, value, domain });
    }
    Ok(())
}

#[inline]
fn pos(x: f64) -> f64 {
    x.max(0.0)
}

/// Pairwise monogamy cap: neighboring edges obey g <= r_bound(g') for the
/// level-2 relaxation. Defined on [-1, 1].
pub fn r_bound(x: f64) -> Result<f64, ScheduleError> {
    check_domain("r_bound", x, -1.0, 1.0, "[-1, 1]")?;
    let x = x.clamp(-1.0, 1.0);
    Ok(0.5 * ((3.0 * (1.0 - x * x)).sqrt() - x))
}

/// Aggregate monogamy cap on the sum of positive neighbor values around a
/// vertex, as a function of the anchored edge's positive part. Defined on
/// [0, 1]; three pieces meeting continuously at 1/2 and sqrt(3)/2.
pub fn q_bound(x: f64) -> Result<f64, ScheduleError> {
    check_domain("q_bound", x, 0.0, 1.0, "[0, 1]")?;
    let x = x.clamp(0.0, 1.0);
    if x <= 0.5 {
        Ok(1.0 - x)
    } else if x <= 3f64.sqrt() / 2.0 {
        r_bound(x)
    } else {
        Ok(0.0)
    }
}

/// Degree-aware star cap: the sum of the other edge values around a vertex
/// of degree `d` is at most `star_bound(g, d)` where g is the anchored
/// edge's value.
pub fn star_bound(g: f64, d: usize) -> Result<f64, ScheduleError> {
    if d < 2 {
        return Err(ScheduleError::DomainViolation {
            func: "star_bound",
            value: d as f64,
            domain: "degree >= 2",
        });
    }
    check_domain("star_bound", g, -1.0, 1.0, "[-1, 1]")?;
    let g = g.clamp(-1.0, 1.0);
    let d = d as f64;
    if g < -1.0 / d {
        Ok(1.0)
    } else {
        Ok(0.5 * (2.0 - d - g + ((d * d - 1.0) * (1.0 - g * g)).sqrt()))
    }
}

/// Constants and breakpoints of the angle schedule.
///
/// `theta_points` are the knots of the piecewise-linear low branch; the high
/// branch is the rational profile determined by `alpha_prime`. The two meet
/// continuously at `beta` by construction of the third knot.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScheduleParams {
    alpha_prime: f64,
    beta: f64,
    gamma: f64,
    theta_points: [(f64, f64); 4],
    variant: &'static str,
}

impl ScheduleParams {
    /// The published schedule: alpha' = 0.839511, beta = 0.67, gamma = 0.049.
    pub fn paper() -> ScheduleParams {
        Self::with_constants(ALPHA_PRIME, BETA, GAMMA, "paper")
            .expect("paper constants form a valid schedule")
    }

    /// A schedule with the same structural form but different constants.
    /// Useful for diagnostics only; no ratio guarantee is implied.
    pub fn custom(alpha_prime: f64, beta: f64, gamma: f64) -> Result<ScheduleParams, ScheduleError> {
        Self::with_constants(alpha_prime, beta, gamma, "custom")
    }

    fn with_constants(
        alpha_prime: f64,
        beta: f64,
        gamma: f64,
        variant: &'static str,
    ) -> Result<ScheduleParams, ScheduleError> {
        if !(0.5 < beta && beta < 1.0) {
            return Err(ScheduleError::InvalidParams(format!("beta = {beta} not in (1/2, 1)")));
        }
        if !(0.0 < gamma && gamma < 1.0) {
            return Err(ScheduleError::InvalidParams(format!("gamma = {gamma} not in (0, 1)")));
        }
        if !(0.5 < alpha_prime && alpha_prime < 1.0) {
            return Err(ScheduleError::InvalidParams(format!("alpha' = {alpha_prime}")));
        }
        let qb = q_bound(beta)?;
        // third knot from its closed form so the two branches agree at beta
        let at_beta = (gamma / 2.0 + alpha_prime * (1.0 + beta) - 1.0).powi(2) / (1.0 - gamma);
        let at_one = 2.0 * (1.0 - alpha_prime);
        let theta_points = [(0.0, 0.0), (qb, gamma), (beta, at_beta), (1.0, at_one)];
        let params = ScheduleParams { alpha_prime, beta, gamma, theta_points, variant };
        // knots strictly increasing in x, profile inside [0, 1], convex
        for w in theta_points.windows(2) {
            if !(w[0].0 < w[1].0) {
                return Err(ScheduleError::InvalidParams(format!(
                    "knot abscissae not increasing: {} >= {}",
                    w[0].0, w[1].0
                )));
            }
        }
        if theta_points.iter().any(|&(_, y)| !(0.0..=1.0).contains(&y)) {
            return Err(ScheduleError::InvalidParams("profile escapes [0, 1]".into()));
        }
        let (s1, s2, s3) = (params.theta_slope(1), params.theta_slope(2), params.theta_slope(3));
        if !(s1 <= s2 && s2 <= s3) {
            return Err(ScheduleError::InvalidParams(format!(
                "profile not convex: slopes {s1}, {s2}, {s3}"
            )));
        }
        Ok(params)
    }

    pub fn alpha_prime(&self) -> f64 {
        self.alpha_prime
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn theta_points(&self) -> [(f64, f64); 4] {
        self.theta_points
    }

    pub fn q_beta(&self) -> f64 {
        self.theta_points[1].0
    }

    pub fn is_paper(&self) -> bool {
        self.variant == "paper"
    }

    /// Slope of linear piece `k` in {1, 2, 3}.
    pub fn theta_slope(&self, k: usize) -> f64 {
        let (x0, y0) = self.theta_points[k - 1];
        let (x1, y1) = self.theta_points[k];
        (y1 - y0) / (x1 - x0)
    }

    /// Piece `k` of the low branch evaluated as an unclamped line.
    pub fn theta_piece(&self, k: usize, x: f64) -> f64 {
        let (x0, y0) = self.theta_points[k - 1];
        y0 + self.theta_slope(k) * (x - x0)
    }

    /// Piecewise-linear low-branch profile on [0, 1].
    pub fn theta(&self, x: f64) -> Result<f64, ScheduleError> {
        check_domain("theta", x, 0.0, 1.0, "[0, 1]")?;
        let x = x.clamp(0.0, 1.0);
        let k = if x <= self.theta_points[1].0 {
            1
        } else if x <= self.theta_points[2].0 {
            2
        } else {
            3
        };
        Ok(self.theta_piece(k, x))
    }

    /// High-branch profile on [0, 1].
    pub fn lambda(&self, x: f64) -> Result<f64, ScheduleError> {
        check_domain("lambda", x, 0.0, 1.0, "[0, 1]")?;
        let x = x.clamp(0.0, 1.0);
        let tq = self.theta(q_bound(x)?)?;
        Ok((0.5 * tq + self.alpha_prime * (1.0 + x) - 1.0).powi(2) / (1.0 - tq))
    }

    /// sin^2 of the rotation angle for a relaxed edge value in [-1, 1].
    pub fn nu_sin2(&self, g: f64) -> Result<f64, ScheduleError> {
        check_domain("nu", g, -1.0, 1.0, "[-1, 1]")?;
        let g = g.clamp(-1.0, 1.0);
        let v = if g <= self.beta { self.theta(pos(g))? } else { self.lambda(pos(g))? };
        if !(-1e-12..=1.0 + 1e-12).contains(&v) {
            return Err(ScheduleError::ProfileOutOfRange { func: "nu", value: v });
        }
        Ok(v.clamp(0.0, 1.0))
    }

    /// Rotation angle in [0, pi/2] for a relaxed edge value in [-1, 1].
    pub fn nu(&self, g: f64) -> Result<f64, ScheduleError> {
        Ok(self.nu_sin2(g)?.sqrt().asin())
    }

    /// Coupling factor sqrt((1 - lambda(y+)) (1 - theta(q_bound(y+) - x+)))
    /// bounding the cosine product seen by an edge with one heavy neighbor.
    pub fn f_coupling(&self, x: f64, y: f64) -> Result<f64, ScheduleError> {
        check_domain("f_coupling", x, -1.0, 1.0, "[-1, 1]")?;
        check_domain("f_coupling", y, -1.0, 1.0, "[-1, 1]")?;
        let inner = q_bound(pos(y))? - pos(x);
        if !(-1e-12..=1.0 + 1e-12).contains(&inner) {
            return Err(ScheduleError::ProfileOutOfRange { func: "f_coupling", value: inner });
        }
        let t = self.theta(inner.clamp(0.0, 1.0))?;
        Ok(((1.0 - self.lambda(pos(y))?) * (1.0 - t)).sqrt())
    }

    /// Coupling at the pairwise cap: f(x, r_bound(x)).
    pub fn f_star(&self, x: f64) -> Result<f64, ScheduleError> {
        self.f_coupling(x, r_bound(x)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const S3H: f64 = 0.866_025_403_784_438_6; // sqrt(3)/2

    fn sched() -> ScheduleParams {
        ScheduleParams::paper()
    }

    #[test]
    fn q_bound_pieces_and_continuity() {
        // both pieces agree at the boundary 1/2
        assert_eq!(q_bound(0.5).unwrap(), 0.5);
        assert!((r_bound(0.5).unwrap() - 0.5).abs() < 1e-15);
        // boundary at sqrt(3)/2
        assert!(q_bound(S3H).unwrap().abs() < 1e-15);
        assert!(r_bound(S3H).unwrap().abs() < 1e-15);
        // frozen value of the middle piece at the switch point
        assert!((q_bound(0.67).unwrap() - 0.307_903_569_752_105_14).abs() < 1e-12);
        assert!(q_bound(1.1).is_err());
        assert!(q_bound(-0.1).is_err());
        // continuity scan over [0, 1]
        let mut prev = q_bound(0.0).unwrap();
        for k in 1..=1000 {
            let v = q_bound(k as f64 / 1000.0).unwrap();
            assert!((v - prev).abs() < 2e-3);
            prev = v;
        }
    }

    #[test]
    fn q_equals_r_on_middle_piece() {
        for k in 0..=100 {
            let x = 0.5 + (S3H - 0.5) * k as f64 / 100.0;
            assert!((q_bound(x).unwrap() - r_bound(x).unwrap()).abs() < 1e-15);
        }
    }

    #[test]
    fn r_bound_values_and_involution() {
        assert!((r_bound(0.0).unwrap() - S3H).abs() < 1e-15);
        assert!((r_bound(1.0).unwrap() + 0.5).abs() < 1e-15);
        for x in [0.0, 0.3, 0.6] {
            let rr = r_bound(r_bound(x).unwrap()).unwrap();
            assert!((rr - x).abs() < 1e-12, "r(r({x})) = {rr}");
        }
        assert!(r_bound(1.5).is_err());
    }

    #[test]
    fn star_bound_values() {
        // radical vanishes at g = 1
        assert!((star_bound(1.0, 2).unwrap() + 0.5).abs() < 1e-15);
        // cap never exceeds 1
        let mut rng_state = 88172645463325252u64;
        let mut next = move || {
            // xorshift is plenty for a sampling test
            rng_state ^= rng_state << 13;
            rng_state ^= rng_state >> 7;
            rng_state ^= rng_state << 17;
            rng_state as f64 / u64::MAX as f64
        };
        for _ in 0..200 {
            let g = 2.0 * next() - 1.0;
            let d = 2 + (next() * 6.0) as usize;
            assert!(star_bound(g, d).unwrap() <= 1.0 + 1e-12);
        }
        // continuity across the case split at g = -1/d
        for d in [2usize, 3, 5] {
            let g = -1.0 / d as f64;
            let lo = star_bound(g - 1e-9, d).unwrap();
            let hi = star_bound(g + 1e-9, d).unwrap();
            assert!((lo - 1.0).abs() < 1e-12);
            assert!((hi - 1.0).abs() < 1e-7, "d={d}: {hi}");
        }
        assert!(star_bound(0.0, 1).is_err());
    }

    #[test]
    fn theta_knots() {
        let s = sched();
        assert_eq!(s.theta(0.0).unwrap(), 0.0);
        assert!((s.theta(s.q_beta()).unwrap() - GAMMA).abs() < 1e-15);
        assert!((s.theta(1.0).unwrap() - 0.320_978).abs() < 1e-12);
        assert!((s.theta(BETA).unwrap() - 0.191_259_794_833_393_1).abs() < 1e-12);
        assert!(s.theta(-0.2).is_err());
    }

    #[test]
    fn branches_agree_at_the_switch_point() {
        let s = sched();
        assert!((s.lambda(BETA).unwrap() - s.theta(BETA).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn lambda_frozen_values() {
        let s = sched();
        // q_bound = 0 above sqrt(3)/2 collapses the formula
        assert!((s.lambda(S3H).unwrap() - 0.320_977_602_559_681_3).abs() < 1e-12);
        let two_ap_m1 = 2.0 * ALPHA_PRIME - 1.0;
        assert!((s.lambda(1.0).unwrap() - two_ap_m1 * two_ap_m1).abs() < 1e-12);
        assert!((s.lambda(1.0).unwrap() - 0.461_070_876_484).abs() < 1e-9);
    }

    #[test]
    fn angle_schedule_values() {
        let s = sched();
        assert_eq!(s.nu(0.0).unwrap(), 0.0);
        assert_eq!(s.nu(-0.7).unwrap(), 0.0);
        assert!((s.nu(1.0).unwrap().sin() - (2.0 * ALPHA_PRIME - 1.0)).abs() < 1e-12);
        let v = s.nu(S3H).unwrap().sin().powi(2);
        assert!((v - 0.320_977_602_559_681_3).abs() < 1e-12);
        assert!(s.nu(1.2).is_err());
    }

    #[test]
    fn angle_monotone_on_unit_interval() {
        let s = sched();
        let mut prev = 0.0;
        for k in 0..=1000 {
            let v = s.nu(k as f64 / 1000.0).unwrap();
            assert!(v >= prev - 1e-15, "dip at {k}");
            prev = v;
        }
    }

    #[test]
    fn coupling_floor_values() {
        let s = sched();
        assert!((s.f_star(0.0).unwrap() - 0.824_028_153_305_649_3).abs() < 1e-12);
        // stays above 0.6 on the far-negative stretch
        for k in 0..50 {
            let x = -1.0 + 1e-9 + (1.0 - S3H - 1e-9) * k as f64 / 49.0;
            assert!(s.f_star(x).unwrap() > 0.6, "x = {x}");
        }
    }

    #[test]
    fn coupling_decreasing_in_second_argument() {
        let s = sched();
        let x = 0.0;
        let hi = r_bound(x).unwrap();
        let mut prev = f64::INFINITY;
        for k in 0..=200 {
            let y = BETA + 1e-9 + (hi - BETA - 1e-9) * k as f64 / 200.0;
            let v = s.f_coupling(x, y).unwrap();
            assert!(v <= prev + 1e-12);
            prev = v;
        }
    }

    #[test]
    fn slope_chain_is_convex() {
        let s = sched();
        let (s1, s2, s3) = (s.theta_slope(1), s.theta_slope(2), s.theta_slope(3));
        assert!(s1 <= 0.2 && 0.2 <= s2, "{s1} {s2}");
        assert!(s2 <= 0.393 && 0.393 <= s3, "{s2} {s3}");
    }

    #[test]
    fn product_condition_on_random_tuples() {
        // prod (1 - theta(x_i)) >= 1 - theta(sum x_i) whenever sum <= 1
        let s = sched();
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..10_000 {
            let p = 1 + (next() * 5.0) as usize;
            let mut xs: Vec<f64> = (0..p).map(|_| next()).collect();
            let total: f64 = xs.iter().sum();
            if total > 1.0 {
                for x in &mut xs {
                    *x /= total;
                }
            }
            let total: f64 = xs.iter().sum::<f64>().min(1.0);
            let lhs: f64 = xs.iter().map(|&x| 1.0 - s.theta(x).unwrap()).product();
            let rhs = 1.0 - s.theta(total).unwrap();
            assert!(lhs >= rhs - 1e-12, "xs = {xs:?}");
        }
    }

    #[test]
    fn custom_params_validated() {
        assert!(ScheduleParams::custom(0.8395, 0.45, 0.049).is_err());
        // beta = 0.60 with the paper gamma breaks convexity of the profile
        assert!(ScheduleParams::custom(0.8395, 0.60, 0.049).is_err());
        let s = ScheduleParams::custom(0.8395, 0.60, 0.10).unwrap();
        assert!(!s.is_paper());
        assert!(sched().is_paper());
    }

    #[test]
    fn schedule_serializes_for_stamping() {
        let j = serde_json::to_value(sched()).unwrap();
        assert_eq!(j["variant"], "paper");
        assert!((j["alpha_prime"].as_f64().unwrap() - ALPHA_PRIME).abs() < 1e-15);
    }
}
