//! Numeric certification of the worst-edge ratio analysis.
//!
//! The guarantee rests on three case functions of the relaxed edge value:
//! `r1` (light edge, light neighbors), `r2` (heavy edge) and `r3` (light
//! edge with a heavy neighbor), each of which must stay at or above the
//! target ratio on its domain. This module evaluates them directly from the
//! schedule, decomposes them into the nine pieces induced by the breakpoint
//! structure, checks the closing identities at piece endpoints, and replaces
//! the two monotonicity arguments that need it with Lipschitz grid
//! certificates: a derivative-sign grid for the last `r1` piece and a value
//! grid for the last `r3` piece, each padded by a derivative bound times the
//! grid spacing (the spacing itself, twice the half-spacing a point can be
//! away from the grid).

use crate::angles::{q_bound, r_bound, ScheduleError, ScheduleParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::fmt::Write as _;
use thiserror::Error;

const S3H: f64 = 0.866_025_403_784_438_6; // sqrt(3)/2

/// Paper grid sizes and derivative bounds for the two certificates.
pub const R1D_GRID_POINTS: usize = 300;
pub const R1D_DERIVATIVE_BOUND: f64 = 30.0;
pub const R1D_EVAL_CEILING: f64 = -0.11;
pub const R3D_GRID_POINTS: usize = 1000;
pub const R3D_DERIVATIVE_BOUND: f64 = 6.1;
pub const R3D_EVAL_FLOOR: f64 = 0.842;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CertifierError {
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
    #[error("{func}: argument {value} outside case domain {domain}")]
    OutOfCase { func: &'static str, value: f64, domain: &'static str },
    #[error("grid request below the certified defaults: {0}")]
    GridTooCoarse(String),
}

fn in_case(
    func: &'static str,
    g: f64,
    lo: f64,
    hi: f64,
    domain: &'static str,
) -> Result<(), CertifierError> {
    if !(g >= lo - 1e-12 && g <= hi + 1e-12) || g.is_nan() {
        return Err(CertifierError::OutOfCase { func, value: g, domain });
    }
    Ok(())
}

#[inline]
fn pos(x: f64) -> f64 {
    x.max(0.0)
}

/// Case 1 ratio on [0, beta]: both endpoint cosine products bounded through
/// the aggregate cap.
pub fn eval_r1(s: &ScheduleParams, g: f64) -> Result<f64, CertifierError> {
    in_case("r1", g, 0.0, s.beta(), "[0, beta]")?;
    let tq = s.theta(q_bound(pos(g))?)?;
    Ok((2.0 - tq + 2.0 * (s.theta(pos(g))? * (1.0 - tq)).sqrt()) / (2.0 * (1.0 + g)))
}

/// Case 2 ratio on [beta, 1]: the heavy branch is built to make this
/// identically the target ratio.
pub fn eval_r2(s: &ScheduleParams, g: f64) -> Result<f64, CertifierError> {
    in_case("r2", g, s.beta(), 1.0, "[beta, 1]")?;
    let tq = s.theta(q_bound(pos(g))?)?;
    Ok((2.0 - tq + 2.0 * (s.lambda(pos(g))? * (1.0 - tq)).sqrt()) / (2.0 * (1.0 + g)))
}

/// Case 3 ratio on (-1, r_bound(beta)]: one heavy neighbor, pinned to the
/// pairwise cap.
pub fn eval_r3(s: &ScheduleParams, g: f64) -> Result<f64, CertifierError> {
    in_case("r3", g, -1.0, r_bound(s.beta())?, "(-1, r_bound(beta)]")?;
    let fs = s.f_star(g.clamp(-1.0, 1.0))?;
    Ok((1.0 + fs * fs + 2.0 * s.theta(pos(g))?.sqrt() * fs) / (2.0 * (1.0 + g)))
}

/// The nine pieces the three cases split into along the breakpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[allow(missing_docs)]
pub enum CasePiece {
    R1a,
    R1b,
    R1c,
    R1d,
    R2,
    R3a,
    R3b,
    R3c,
    R3d,
}

impl CasePiece {
    pub const ALL: [CasePiece; 9] = [
        CasePiece::R1a,
        CasePiece::R1b,
        CasePiece::R1c,
        CasePiece::R1d,
        CasePiece::R2,
        CasePiece::R3a,
        CasePiece::R3b,
        CasePiece::R3c,
        CasePiece::R3d,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CasePiece::R1a => "r1a",
            CasePiece::R1b => "r1b",
            CasePiece::R1c => "r1c",
            CasePiece::R1d => "r1d",
            CasePiece::R2 => "r2",
            CasePiece::R3a => "r3a",
            CasePiece::R3b => "r3b",
            CasePiece::R3c => "r3c",
            CasePiece::R3d => "r3d",
        }
    }

    /// Piece domain for a given schedule; the left end of r3a is open.
    pub fn domain(self, s: &ScheduleParams) -> (f64, f64) {
        let qb = s.q_beta();
        let b = s.beta();
        match self {
            CasePiece::R1a => (0.0, qb),
            CasePiece::R1b => (qb, 1.0 - b),
            CasePiece::R1c => (1.0 - b, 0.5),
            CasePiece::R1d => (0.5, b),
            CasePiece::R2 => (b, 1.0),
            CasePiece::R3a => (-1.0, -delta1(s)),
            CasePiece::R3b => (-delta1(s), -S3H),
            CasePiece::R3c => (-S3H, 0.0),
            CasePiece::R3d => (0.0, qb),
        }
    }
}

/// First negative breakpoint of the case-3 decomposition, beta + r_bound(beta).
pub fn delta1(s: &ScheduleParams) -> f64 {
    s.beta() + s.q_beta()
}

/// Second positive breakpoint of the case-3 decomposition, r_bound(1 - beta).
pub fn delta2(s: &ScheduleParams) -> f64 {
    r_bound(1.0 - s.beta()).expect("1 - beta in [-1, 1]")
}

fn fstar_piece(s: &ScheduleParams, piece: CasePiece, g: f64) -> f64 {
    let ap = s.alpha_prime();
    let r = r_bound(g.clamp(-1.0, 1.0)).expect("clamped");
    match piece {
        CasePiece::R3a => {
            let t = s.theta_piece(2, -r_bound((-g).clamp(-1.0, 1.0)).expect("clamped"));
            ((1.0 - t) - (0.5 * t + ap * (1.0 + r) - 1.0).powi(2)).sqrt()
        }
        CasePiece::R3b => {
            let t = s.theta_piece(1, -r_bound((-g).clamp(-1.0, 1.0)).expect("clamped"));
            ((1.0 - t) - (0.5 * t + ap * (1.0 + r) - 1.0).powi(2)).sqrt()
        }
        CasePiece::R3c => (1.0 - (ap * (1.0 + r) - 1.0).powi(2)).sqrt(),
        CasePiece::R3d => {
            let t = s.theta_piece(1, g);
            (1.0 - (0.5 * t + ap * (1.0 + r) - 1.0).powi(2) / (1.0 - t)).sqrt()
        }
        _ => unreachable!("fstar pieces are the r3 pieces"),
    }
}

/// One piece evaluated through its closed decomposition (no branch
/// dispatch); agrees with the direct case function on the piece domain.
pub fn eval_piece(s: &ScheduleParams, piece: CasePiece, g: f64) -> Result<f64, CertifierError> {
    let (lo, hi) = piece.domain(s);
    in_case(piece.name(), g, lo, hi, "piece domain")?;
    let two1g = 2.0 * (1.0 + g);
    let val = match piece {
        CasePiece::R1a => {
            let tq = s.theta_piece(3, 1.0 - g);
            (2.0 - tq + 2.0 * (s.theta_piece(1, g) * (1.0 - tq)).sqrt()) / two1g
        }
        CasePiece::R1b => {
            let tq = s.theta_piece(3, 1.0 - g);
            (2.0 - tq + 2.0 * (s.theta_piece(2, g) * (1.0 - tq)).sqrt()) / two1g
        }
        CasePiece::R1c => {
            let tq = s.theta_piece(2, 1.0 - g);
            (2.0 - tq + 2.0 * (s.theta_piece(2, g) * (1.0 - tq)).sqrt()) / two1g
        }
        CasePiece::R1d => {
            let tq = s.theta_piece(2, r_bound(g.clamp(-1.0, 1.0))?);
            (2.0 - tq + 2.0 * (s.theta_piece(2, g) * (1.0 - tq)).sqrt()) / two1g
        }
        CasePiece::R2 => return eval_r2(s, g),
        CasePiece::R3a | CasePiece::R3b | CasePiece::R3c => {
            let fs = fstar_piece(s, piece, g);
            (1.0 + fs * fs) / two1g
        }
        CasePiece::R3d => {
            let fs = fstar_piece(s, piece, g);
            (1.0 + fs * fs + 2.0 * s.theta_piece(1, g).max(0.0).sqrt() * fs) / two1g
        }
    };
    Ok(val)
}

/// Derivative surrogate for the last case-1 piece: r1d'(g) * 2 (1+g)^2 in
/// closed form. Negative everywhere on [1/2, beta] means the piece is
/// decreasing, pushing its minimum to the right endpoint.
pub fn r1d_derivative_surrogate(s: &ScheduleParams, g: f64) -> f64 {
    let s2 = s.theta_slope(2);
    let r = r_bound(g.clamp(-1.0, 1.0)).expect("clamped");
    let t2r = s.theta_piece(2, r);
    let t2g = s.theta_piece(2, g);
    let rp = -0.5 - 3f64.sqrt() * g / (2.0 * (1.0 - g * g).sqrt());
    let h = t2g * (1.0 - t2r);
    let hp = s2 * ((1.0 - t2r) - t2g * rp);
    (1.0 + g) * (-s2 * rp + hp / h.sqrt()) - (2.0 - t2r + 2.0 * h.sqrt())
}

/// Evidence from one Lipschitz grid.
#[derive(Debug, Clone, Serialize)]
pub struct GridEvidence {
    pub name: &'static str,
    pub points: usize,
    pub spacing: f64,
    pub derivative_bound: f64,
    /// The eval closest to failing: max for a ceiling grid, min for a floor.
    pub worst: f64,
    pub threshold: f64,
    /// Worst eval padded by bound * spacing, compared against the decisive
    /// level (0 for the derivative grid, the target ratio for the value
    /// grid). Positive margin means certified.
    pub margin: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GridPiece {
    R1dDerivative,
    R3dValue,
}

/// Runs one of the two grid certificates at the requested density.
pub fn certify_grid(
    s: &ScheduleParams,
    piece: GridPiece,
    points: usize,
    bound: f64,
) -> Result<GridEvidence, CertifierError> {
    match piece {
        GridPiece::R1dDerivative => {
            if points < R1D_GRID_POINTS || bound < R1D_DERIVATIVE_BOUND {
                return Err(CertifierError::GridTooCoarse(format!(
                    "need >= {R1D_GRID_POINTS} points and bound >= {R1D_DERIVATIVE_BOUND}, got {points}, {bound}"
                )));
            }
            let (lo, hi) = (0.5, s.beta());
            let spacing = (hi - lo) / (points - 1) as f64;
            let mut worst = f64::NEG_INFINITY;
            for k in 0..points {
                let g = lo + spacing * k as f64;
                worst = worst.max(r1d_derivative_surrogate(s, g));
            }
            let padded = worst + bound * spacing;
            Ok(GridEvidence {
                name: "r1d_derivative",
                points,
                spacing,
                derivative_bound: bound,
                worst,
                threshold: R1D_EVAL_CEILING,
                margin: -padded,
                pass: worst < R1D_EVAL_CEILING && padded < 0.0,
            })
        }
        GridPiece::R3dValue => {
            if points < R3D_GRID_POINTS || bound < R3D_DERIVATIVE_BOUND {
                return Err(CertifierError::GridTooCoarse(format!(
                    "need >= {R3D_GRID_POINTS} points and bound >= {R3D_DERIVATIVE_BOUND}, got {points}, {bound}"
                )));
            }
            let (lo, hi) = (0.02, s.q_beta());
            let spacing = (hi - lo) / (points - 1) as f64;
            let mut worst = f64::INFINITY;
            for k in 0..points {
                let g = lo + spacing * k as f64;
                worst = worst.min(eval_piece(s, CasePiece::R3d, g)?);
            }
            let padded = worst - bound * spacing;
            Ok(GridEvidence {
                name: "r3d_value",
                points,
                spacing,
                derivative_bound: bound,
                worst,
                threshold: R3D_EVAL_FLOOR,
                margin: padded - s.alpha_prime(),
                pass: worst > R3D_EVAL_FLOOR && padded > s.alpha_prime(),
            })
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub enum EndpointTarget {
    /// Value must equal the target ratio within the tolerance.
    EqualsAlpha { tol: f64 },
    /// Value must exceed the stated floor.
    GreaterThan(f64),
}

#[derive(Debug, Clone, Serialize)]
pub struct EndpointCheck {
    pub name: &'static str,
    pub value: f64,
    pub target: EndpointTarget,
    /// value - alpha' for equality checks, value - floor otherwise.
    pub residual: f64,
    pub pass: bool,
}

/// The closing identities and endpoint floors of the piece analysis.
pub fn certify_endpoints(s: &ScheduleParams) -> Result<Vec<EndpointCheck>, CertifierError> {
    let ap = s.alpha_prime();
    let qb = s.q_beta();
    let b = s.beta();
    let mut out = Vec::new();
    let mut push = |name: &'static str, value: f64, target: EndpointTarget| {
        let (residual, pass) = match target {
            EndpointTarget::EqualsAlpha { tol } => (value - ap, (value - ap).abs() <= tol),
            EndpointTarget::GreaterThan(floor) => (value - floor, value > floor),
        };
        out.push(EndpointCheck { name, value, target, residual, pass });
    };
    push(
        "r1a(0) = alpha'",
        eval_piece(s, CasePiece::R1a, 0.0)?,
        EndpointTarget::EqualsAlpha { tol: 1e-9 },
    );
    push(
        "r1a(q_beta) > 0.839529",
        eval_piece(s, CasePiece::R1a, qb)?,
        EndpointTarget::GreaterThan(0.839529),
    );
    push(
        "r1b(q_beta) > 0.839529",
        eval_piece(s, CasePiece::R1b, qb)?,
        EndpointTarget::GreaterThan(0.839529),
    );
    push(
        "r1b(1 - beta) > 0.842",
        eval_piece(s, CasePiece::R1b, 1.0 - b)?,
        EndpointTarget::GreaterThan(0.842),
    );
    push(
        "r1c(1 - beta) > 0.842",
        eval_piece(s, CasePiece::R1c, 1.0 - b)?,
        EndpointTarget::GreaterThan(0.842),
    );
    push(
        "r1c(1/2) > 0.845",
        eval_piece(s, CasePiece::R1c, 0.5)?,
        EndpointTarget::GreaterThan(0.845),
    );
    push(
        "r1d(beta) = alpha'",
        eval_piece(s, CasePiece::R1d, b)?,
        EndpointTarget::EqualsAlpha { tol: 1e-9 },
    );
    push(
        "r3c(0) > alpha'",
        eval_piece(s, CasePiece::R3c, 0.0)?,
        EndpointTarget::GreaterThan(ap),
    );
    Ok(out)
}

/// Evidence for the far-negative and near-zero stretches of case 3.
#[derive(Debug, Clone, Serialize)]
pub struct R3LowEvidence {
    /// (1 + 0.6^2) / (2 (1 - sqrt(3)/2)); both far pieces clear this, and it
    /// exceeds 1.
    pub ab_floor: f64,
    pub fstar_a_min: f64,
    pub fstar_b_min: f64,
    /// Largest forward difference of r3c on its domain; negative means
    /// decreasing, so the piece minimum sits at 0.
    pub r3c_max_slope: f64,
    pub r3c_at_zero: f64,
    /// Low-branch slope of the profile; the increasing argument for r3d near
    /// zero needs it below 0.16.
    pub theta1_slope: f64,
    /// The derivative bracket 0.1185 / sqrt(theta1(g)) - 2.04 at g = 0.02,
    /// the tightest point of the stretch.
    pub r3d_bracket_at_002: f64,
    /// Forward differences of r3d on [0, 0.02) all nonnegative.
    pub r3d_low_increasing: bool,
    pub pass: bool,
}

/// Checks the pieces of case 3 that the grids do not cover.
pub fn certify_r3_low(s: &ScheduleParams) -> Result<R3LowEvidence, CertifierError> {
    let ab_floor = (1.0 + 0.36) / (2.0 * (1.0 - S3H));
    let d1 = delta1(s);
    let mut fstar_a_min = f64::INFINITY;
    let mut fstar_b_min = f64::INFINITY;
    for k in 0..50 {
        let t = k as f64 / 49.0;
        let ga = -1.0 + 1e-9 + (1.0 - d1 - 1e-9) * t;
        let gb = -d1 + (d1 - S3H) * t;
        fstar_a_min = fstar_a_min.min(fstar_piece(s, CasePiece::R3a, ga));
        fstar_b_min = fstar_b_min.min(fstar_piece(s, CasePiece::R3b, gb));
    }
    let mut r3c_max_slope = f64::NEG_INFINITY;
    let mut prev = eval_piece(s, CasePiece::R3c, -S3H)?;
    for k in 1..=200 {
        let g = -S3H + S3H * k as f64 / 200.0;
        let v = eval_piece(s, CasePiece::R3c, g)?;
        r3c_max_slope = r3c_max_slope.max(v - prev);
        prev = v;
    }
    let r3c_at_zero = eval_piece(s, CasePiece::R3c, 0.0)?;
    let theta1_slope = s.theta_slope(1);
    let r3d_bracket_at_002 = 0.1185 / s.theta_piece(1, 0.02).sqrt() - 2.04;
    let mut r3d_low_increasing = true;
    let mut prev = eval_piece(s, CasePiece::R3d, 0.0)?;
    for k in 1..=100 {
        let g = 0.02 * k as f64 / 100.0;
        let v = eval_piece(s, CasePiece::R3d, g)?;
        if v < prev - 1e-12 {
            r3d_low_increasing = false;
        }
        prev = v;
    }
    let pass = ab_floor > 1.0
        && fstar_a_min > 0.6
        && fstar_b_min > 0.6
        && r3c_max_slope < 0.0
        && r3c_at_zero > s.alpha_prime()
        && theta1_slope < 0.16
        && r3d_bracket_at_002 > 0.0
        && r3d_low_increasing;
    Ok(R3LowEvidence {
        ab_floor,
        fstar_a_min,
        fstar_b_min,
        r3c_max_slope,
        r3c_at_zero,
        theta1_slope,
        r3d_bracket_at_002,
        r3d_low_increasing,
        pass,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseMinimum {
    pub piece: &'static str,
    pub min: f64,
    pub argmin: f64,
    pub samples: usize,
}

#[derive(Debug, Clone)]
pub struct GridDensities {
    pub r1d: usize,
    pub r3d: usize,
    /// Sample count per case domain for the dense minima scan.
    pub dense: usize,
}

impl Default for GridDensities {
    fn default() -> Self {
        GridDensities { r1d: R1D_GRID_POINTS, r3d: R3D_GRID_POINTS, dense: 10_000 }
    }
}

/// The assembled certificate.
#[derive(Debug, Clone, Serialize)]
pub struct CertificateReport {
    pub params: ScheduleParams,
    pub is_paper_params: bool,
    pub case_minima: Vec<CaseMinimum>,
    pub grid_evidence: Vec<GridEvidence>,
    pub endpoint_checks: Vec<EndpointCheck>,
    pub r3_low: R3LowEvidence,
    /// Largest deviation between the direct case functions and their piece
    /// decompositions on random domain points.
    pub piecewise_agreement: f64,
    /// Largest |r2 - alpha'| over the heavy-edge domain.
    pub r2_deviation: f64,
    /// Smallest sampled case value minus alpha'.
    pub overall_margin: f64,
    pub pass: bool,
}

fn direct_eval(s: &ScheduleParams, piece: CasePiece, g: f64) -> Result<f64, CertifierError> {
    match piece {
        CasePiece::R1a | CasePiece::R1b | CasePiece::R1c | CasePiece::R1d => eval_r1(s, g),
        CasePiece::R2 => eval_r2(s, g),
        _ => eval_r3(s, g),
    }
}

/// Runs every check and dense-samples the case minima.
pub fn certify_all(
    s: &ScheduleParams,
    densities: &GridDensities,
) -> Result<CertificateReport, CertifierError> {
    let endpoint_checks = certify_endpoints(s)?;
    let grid_evidence = vec![
        certify_grid(s, GridPiece::R1dDerivative, densities.r1d, R1D_DERIVATIVE_BOUND)?,
        certify_grid(s, GridPiece::R3dValue, densities.r3d, R3D_DERIVATIVE_BOUND)?,
    ];
    let r3_low = certify_r3_low(s)?;

    // dense minima per piece, proportional to piece length within its case
    let case_len = |pieces: &[CasePiece]| -> f64 {
        pieces.iter().map(|p| {
            let (lo, hi) = p.domain(s);
            hi - lo
        }).sum()
    };
    let r1_pieces = [CasePiece::R1a, CasePiece::R1b, CasePiece::R1c, CasePiece::R1d];
    let r3_pieces = [CasePiece::R3a, CasePiece::R3b, CasePiece::R3c, CasePiece::R3d];
    let mut case_minima = Vec::new();
    let mut overall_min = f64::INFINITY;
    for piece in CasePiece::ALL {
        let (lo, hi) = piece.domain(s);
        let lo = if piece == CasePiece::R3a { lo + 1e-6 } else { lo };
        let total = match piece {
            CasePiece::R2 => 1.0 - s.beta(),
            p if r1_pieces.contains(&p) => case_len(&r1_pieces),
            _ => case_len(&r3_pieces),
        };
        let samples = (((densities.dense as f64) * (hi - lo) / total).ceil() as usize).max(64);
        let mut min = f64::INFINITY;
        let mut argmin = lo;
        for k in 0..=samples {
            let g = lo + (hi - lo) * k as f64 / samples as f64;
            let v = eval_piece(s, piece, g)?;
            if v < min {
                min = v;
                argmin = g;
            }
        }
        overall_min = overall_min.min(min);
        case_minima.push(CaseMinimum { piece: piece.name(), min, argmin, samples: samples + 1 });
    }

    // piecewise forms against the direct compositions on random points
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut piecewise_agreement: f64 = 0.0;
    for piece in CasePiece::ALL {
        let (lo, hi) = piece.domain(s);
        let lo = if piece == CasePiece::R3a { lo + 1e-6 } else { lo };
        for _ in 0..1000 {
            let g = rng.gen_range(lo..=hi);
            let direct = direct_eval(s, piece, g)?;
            let split = eval_piece(s, piece, g)?;
            piecewise_agreement = piecewise_agreement.max((direct - split).abs());
        }
    }

    let mut r2_deviation: f64 = 0.0;
    for k in 0..=2000 {
        let g = s.beta() + (1.0 - s.beta()) * k as f64 / 2000.0;
        r2_deviation = r2_deviation.max((eval_r2(s, g)? - s.alpha_prime()).abs());
    }

    let overall_margin = overall_min - s.alpha_prime();
    let pass = overall_margin >= -1e-9
        && endpoint_checks.iter().all(|c| c.pass)
        && grid_evidence.iter().all(|g| g.pass)
        && r3_low.pass
        && piecewise_agreement <= 1e-12
        && r2_deviation <= 1e-12;
    Ok(CertificateReport {
        params: s.clone(),
        is_paper_params: s.is_paper(),
        case_minima,
        grid_evidence,
        endpoint_checks,
        r3_low,
        piecewise_agreement,
        r2_deviation,
        overall_margin,
        pass,
    })
}

/// Sample rows `g,r1,r2,r3` over [-1, 1]; out-of-domain cells are empty.
pub fn csv_samples(s: &ScheduleParams, count: usize) -> Result<String, CertifierError> {
    let mut out = String::from("g,r1,r2,r3\n");
    let rb = r_bound(s.beta())?;
    for k in 0..count {
        let g = -1.0 + 1e-6 + (2.0 - 1e-6) * k as f64 / (count - 1) as f64;
        let _ = write!(out, "{g}");
        if (0.0..=s.beta()).contains(&g) {
            let _ = write!(out, ",{}", eval_r1(s, g)?);
        } else {
            out.push(',');
        }
        if g >= s.beta() && g <= 1.0 {
            let _ = write!(out, ",{}", eval_r2(s, g)?);
        } else {
            out.push(',');
        }
        if g > -1.0 && g <= rb {
            let _ = write!(out, ",{}", eval_r3(s, g)?);
        } else {
            out.push(',');
        }
        out.push('\n');
    }
    Ok(out)
}
