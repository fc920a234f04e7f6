//! The depth-1 ansatz end to end: per-edge angles from the schedule, exact
//! statevector simulation of the commuting gate layer, the closed-form
//! energy lower bound, exact maximum eigenvalues, and the ratio pipeline.
//!
//! Each edge contributes the two-qubit gate cos(t/2) I + i sin(t/2) G with
//! G = (X - Y) (x) (X - Y) / 2; G squares to the identity, so the gate is
//! applied as an explicit 4x4 action on amplitude pairs rather than through
//! a matrix exponential. All gates commute, so edge order is immaterial; the
//! canonical edge order is still fixed for bit-reproducibility.

use crate::angles::{ScheduleError, ScheduleParams};
use crate::graph::WeightedGraph;
use crate::sdp::{self, MomentSolution, SdpError, SolveOptions};
use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde_json::{json, Value};
use thiserror::Error;

/// Amplitude vectors are materialized up to this many qubits.
pub const STATE_CAP: usize = 20;

#[derive(Debug, Error)]
pub enum AnsatzError {
    #[error("n = {n} exceeds the amplitude-vector budget of {cap} qubits")]
    StateTooLarge { n: usize, cap: usize },
    #[error("state has {len} amplitudes but the graph needs 2^{n}")]
    DimensionMismatch { len: usize, n: usize },
    #[error("one angle per edge required: {angles} angles for {edges} edges")]
    AngleCountMismatch { angles: usize, edges: usize },
    #[error("eigenvalue iteration did not converge")]
    EigsNonConvergence,
    #[error(transparent)]
    Schedule(#[from] ScheduleError),
    #[error(transparent)]
    Sdp(#[from] SdpError),
}

/// Knobs for the simulation side of the pipeline.
#[derive(Debug, Clone)]
pub struct AnsatzOptions {
    pub state_cap: usize,
    /// Dense eigensolve below this qubit count, Krylov iteration above.
    pub dense_eig_cap: usize,
    /// Solver outputs in (0, g_snap) are treated as exact zeros before the
    /// angle schedule: the profile has a sqrt-shaped onset at 0+, so angles
    /// would otherwise amplify solver noise of order eps into angles of
    /// order sqrt(eps). Snapping costs at most alpha' * g_snap of ratio.
    pub g_snap: f64,
    pub keep_state: bool,
}

impl Default for AnsatzOptions {
    fn default() -> Self {
        AnsatzOptions { state_cap: STATE_CAP, dense_eig_cap: 9, g_snap: 1e-6, keep_state: false }
    }
}

/// Angles from relaxed edge values: one schedule evaluation per edge.
pub fn angles_from_g(gs: &[f64], params: &ScheduleParams) -> Result<Vec<f64>, ScheduleError> {
    gs.iter().map(|&g| params.nu(g)).collect()
}

/// Applies the commuting gate layer to |0...0> in canonical edge order.
pub fn build_state(
    g: &WeightedGraph,
    angles: &[f64],
    cap: usize,
) -> Result<Vec<Complex64>, AnsatzError> {
    let n = g.n();
    if n > cap || n > STATE_CAP {
        return Err(AnsatzError::StateTooLarge { n, cap: cap.min(STATE_CAP) });
    }
    if angles.len() != g.edge_count() {
        return Err(AnsatzError::AngleCountMismatch { angles: angles.len(), edges: g.edge_count() });
    }
    let dim = 1usize << n;
    let mut psi = vec![Complex64::new(0.0, 0.0); dim];
    psi[0] = Complex64::new(1.0, 0.0);
    for (e, &(i, j, _)) in g.edges().iter().enumerate() {
        apply_gate(&mut psi, i, j, angles[e]);
    }
    Ok(psi)
}

fn apply_gate(psi: &mut [Complex64], i: usize, j: usize, theta: f64) {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let (bi, bj) = (1usize << i, 1usize << j);
    for base in 0..psi.len() {
        if base & bi != 0 || base & bj != 0 {
            continue;
        }
        let (s00, s01, s10, s11) = (base, base | bj, base | bi, base | bi | bj);
        // G maps |00> -> -i|11>, |11> -> i|00>, |01> <-> |10>
        let (a00, a11) = (psi[s00], psi[s11]);
        psi[s00] = c * a00 - s * a11;
        psi[s11] = c * a11 + s * a00;
        let (a01, a10) = (psi[s01], psi[s10]);
        psi[s01] = c * a01 + Complex64::i() * s * a10;
        psi[s10] = c * a10 + Complex64::i() * s * a01;
    }
}

/// Exact energy of a state: each edge term is twice the overlap with the
/// maximally entangled pair on its endpoints.
pub fn energy(g: &WeightedGraph, state: &[Complex64]) -> Result<f64, AnsatzError> {
    let n = g.n();
    if state.len() != 1usize << n {
        return Err(AnsatzError::DimensionMismatch { len: state.len(), n });
    }
    let mut total = 0.0;
    for &(i, j, w) in g.edges() {
        let (bi, bj) = (1usize << i, 1usize << j);
        let mut acc = 0.0;
        for base in 0..state.len() {
            if base & bi != 0 || base & bj != 0 {
                continue;
            }
            acc += (state[base] + state[base | bi | bj]).norm_sqr();
        }
        total += w * acc;
    }
    Ok(total)
}

/// Per-edge terms of the closed-form lower bound; their sum is the bound.
pub fn edge_energy_terms(g: &WeightedGraph, angles: &[f64]) -> Vec<f64> {
    let cos_at = |v: usize, skip: usize| -> f64 {
        g.neighbors(v)
            .iter()
            .filter(|&&(_, e)| e != skip)
            .map(|&(_, e)| angles[e].cos())
            .product()
    };
    g.edges()
        .iter()
        .enumerate()
        .map(|(e, &(i, j, w))| {
            let aij = cos_at(i, e);
            let aji = cos_at(j, e);
            w * (1.0 + aij * aji + (aij + aji) * angles[e].sin()) / 2.0
        })
        .collect()
}

/// Closed-form lower bound on the ansatz energy; exact on triangle-free
/// graphs.
pub fn lower_bound_ell(g: &WeightedGraph, angles: &[f64]) -> f64 {
    edge_energy_terms(g, angles).iter().sum()
}

fn apply_hamiltonian(g: &WeightedGraph, v: &[f64], out: &mut [f64]) {
    out.fill(0.0);
    for &(i, j, w) in g.edges() {
        let (bi, bj) = (1usize << i, 1usize << j);
        for base in 0..v.len() {
            if base & bi != 0 || base & bj != 0 {
                continue;
            }
            let top = base | bi | bj;
            let t = w * (v[base] + v[top]);
            out[base] += t;
            out[top] += t;
        }
    }
}

fn dense_hamiltonian(g: &WeightedGraph) -> DMatrix<f64> {
    let dim = 1usize << g.n();
    let mut h = DMatrix::zeros(dim, dim);
    for &(i, j, w) in g.edges() {
        let (bi, bj) = (1usize << i, 1usize << j);
        for base in 0..dim {
            if base & bi != 0 || base & bj != 0 {
                continue;
            }
            let top = base | bi | bj;
            h[(base, base)] += w;
            h[(top, top)] += w;
            h[(base, top)] += w;
            h[(top, base)] += w;
        }
    }
    h
}

/// Largest eigenvalue of the instance Hamiltonian: dense eigensolve for
/// small n, Lanczos with full reorthogonalization and restarts above.
pub fn lambda_max(g: &WeightedGraph, opts: &AnsatzOptions) -> Result<f64, AnsatzError> {
    if g.edge_count() == 0 {
        return Ok(0.0);
    }
    let n = g.n();
    if n > STATE_CAP {
        return Err(AnsatzError::StateTooLarge { n, cap: STATE_CAP });
    }
    if n <= opts.dense_eig_cap {
        let eig = SymmetricEigen::new(dense_hamiltonian(g));
        return Ok(eig.eigenvalues.max());
    }
    lanczos_lambda_max(g, 1e-11)
}

fn lanczos_lambda_max(g: &WeightedGraph, rel_tol: f64) -> Result<f64, AnsatzError> {
    let dim = 1usize << g.n();
    // window capped so the stored basis stays within a ~256 MB budget
    let window = ((256usize << 20) / (8 * dim)).clamp(24, 64).min(dim);
    // the Hamiltonian is entrywise nonnegative, so the uniform vector
    // overlaps the top eigenvector
    let mut start: Vec<f64> = vec![1.0 / (dim as f64).sqrt(); dim];
    let mut best = f64::NEG_INFINITY;
    for _restart in 0..200 {
        let mut basis: Vec<Vec<f64>> = vec![start.clone()];
        let mut alpha: Vec<f64> = Vec::new();
        let mut beta: Vec<f64> = Vec::new();
        let mut w = vec![0.0; dim];
        for step in 0..window {
            apply_hamiltonian(g, &basis[step], &mut w);
            let a = dot(&w, &basis[step]);
            alpha.push(a);
            for (k, prev) in basis.iter().enumerate() {
                let coeff = if k == step {
                    a
                } else if k + 1 == step {
                    beta[k]
                } else {
                    0.0
                };
                if coeff != 0.0 {
                    axpy(&mut w, -coeff, prev);
                }
            }
            // full reorthogonalization pass
            for prev in &basis {
                let c = dot(&w, prev);
                axpy(&mut w, -c, prev);
            }
            let b = dot(&w, &w).sqrt();
            if b < 1e-13 {
                break;
            }
            beta.push(b);
            basis.push(w.iter().map(|x| x / b).collect());
        }
        let k = alpha.len();
        let mut t = DMatrix::zeros(k, k);
        for i in 0..k {
            t[(i, i)] = alpha[i];
            if i + 1 < k {
                t[(i, i + 1)] = beta[i];
                t[(i + 1, i)] = beta[i];
            }
        }
        let eig = SymmetricEigen::new(t);
        let (mut top, mut top_idx) = (f64::NEG_INFINITY, 0);
        for (idx, &ev) in eig.eigenvalues.iter().enumerate() {
            if ev > top {
                top = ev;
                top_idx = idx;
            }
        }
        let y = eig.eigenvectors.column(top_idx);
        // residual norm of the Ritz pair
        let resid = if beta.len() >= k && k > 0 { beta[k - 1] * y[k - 1].abs() } else { 0.0 };
        best = best.max(top);
        if resid <= rel_tol * top.abs().max(1.0) || k < window {
            return Ok(best);
        }
        // restart from the Ritz vector
        let mut next = vec![0.0; dim];
        for (kk, b) in basis.iter().take(k).enumerate() {
            axpy(&mut next, y[kk], b);
        }
        let norm = dot(&next, &next).sqrt();
        for v in &mut next {
            *v /= norm;
        }
        start = next;
    }
    Err(AnsatzError::EigsNonConvergence)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(y: &mut [f64], a: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

/// Everything the pipeline produces for one instance.
#[derive(Debug)]
pub struct AnsatzRun {
    pub angles: Vec<f64>,
    pub state: Option<Vec<Complex64>>,
    pub energy: f64,
    pub ell: f64,
    pub lambda_max: f64,
    pub u: f64,
    /// ell / u; this is the quantity the schedule guarantees.
    pub ratio_lower: f64,
    /// energy / lambda_max, diagnostic only.
    pub ratio_true: f64,
    pub guarantee_met: bool,
    pub solution: MomentSolution,
}

impl AnsatzRun {
    /// Per-edge ratio of the bound term to the relaxed edge value.
    pub fn edge_ratios(&self) -> Vec<f64> {
        let g = self.solution.graph();
        edge_energy_terms(g, &self.angles)
            .iter()
            .zip(g.edges().iter().zip(&self.solution.g))
            .map(|(&term, (&(_, _, w), &gij))| term / (w * (1.0 + gij)))
            .collect()
    }

    pub fn to_json(&self, include_state: bool) -> Value {
        let g = self.solution.graph();
        let angles: serde_json::Map<String, Value> = g
            .edges()
            .iter()
            .zip(&self.angles)
            .map(|(&(i, j, _), &t)| (format!("{i}-{j}"), json!(t)))
            .collect();
        let mut out = json!({
            "angles": angles,
            "ell": self.ell,
            "u": self.u,
            "lambda_max": self.lambda_max,
            "energy": self.energy,
            "ratio_lower": self.ratio_lower,
            "ratio_true": self.ratio_true,
            "guarantee_met": self.guarantee_met,
            "solver": self.solution.to_json(),
        });
        if include_state {
            if let Some(state) = &self.state {
                out["state"] = json!(state
                    .iter()
                    .map(|a| json!([a.re, a.im]))
                    .collect::<Vec<_>>());
            }
        }
        out
    }
}

/// Relaxation, schedule, simulation and eigenvalue in one call.
pub fn run_pipeline(
    g: &WeightedGraph,
    params: &ScheduleParams,
    solve_opts: &SolveOptions,
    opts: &AnsatzOptions,
) -> Result<AnsatzRun, AnsatzError> {
    let solution = sdp::solve(g, solve_opts)?;
    let schedule_g: Vec<f64> = solution
        .g
        .iter()
        .map(|&v| {
            let v = v.clamp(-1.0, 1.0);
            if v > 0.0 && v < opts.g_snap {
                0.0
            } else {
                v
            }
        })
        .collect();
    let angles = angles_from_g(&schedule_g, params)?;
    let ell = lower_bound_ell(g, &angles);
    let (state, en) = if g.n() <= opts.state_cap.min(STATE_CAP) {
        let psi = build_state(g, &angles, opts.state_cap)?;
        let en = energy(g, &psi)?;
        (if opts.keep_state { Some(psi) } else { None }, en)
    } else {
        (None, f64::NAN)
    };
    let lam = lambda_max(g, opts)?;
    let u = solution.u;
    let ratio_lower = if u.abs() < 1e-12 { 1.0 } else { ell / u };
    let ratio_true = if lam.abs() < 1e-12 { 1.0 } else { en / lam };
    let guarantee_met = ratio_lower >= params.alpha_prime() - 1e-6;
    Ok(AnsatzRun {
        angles,
        state,
        energy: en,
        ell,
        lambda_max: lam,
        u,
        ratio_lower,
        ratio_true,
        guarantee_met,
        solution,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angles::ALPHA_PRIME;

    const S3H: f64 = 0.866_025_403_784_438_6;

    fn k2() -> WeightedGraph {
        WeightedGraph::path(2).unwrap()
    }

    /// Brute-force oracle: exp(i t/4 (X-Y)(x)(X-Y)) as a dense 4x4 series.
    fn gate_oracle(theta: f64) -> DMatrix<Complex64> {
        let i = Complex64::i();
        let xmy = nalgebra::Matrix2::new(
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 1.0),
            Complex64::new(1.0, -1.0),
            Complex64::new(0.0, 0.0),
        );
        let mut gen = DMatrix::zeros(4, 4);
        for r in 0..2 {
            for c in 0..2 {
                for r2 in 0..2 {
                    for c2 in 0..2 {
                        // qubit 0 is the low bit
                        gen[(r2 * 2 + r, c2 * 2 + c)] = xmy[(r, c)] * xmy[(r2, c2)];
                    }
                }
            }
        }
        gen *= i * Complex64::new(theta / 4.0, 0.0);
        // series exp; converges fast for |theta| <= pi
        let mut term = DMatrix::identity(4, 4);
        let mut sum = DMatrix::identity(4, 4);
        for k in 1..40 {
            term = (&term * &gen) / Complex64::new(k as f64, 0.0);
            sum += &term;
        }
        sum
    }

    #[test]
    fn gate_matches_matrix_exponential_oracle() {
        for theta in [0.0, 0.3, std::f64::consts::FRAC_PI_2, 1.2] {
            let psi = build_state(&k2(), &[theta], 20).unwrap();
            let u = gate_oracle(theta);
            let mut expect = [Complex64::new(0.0, 0.0); 4];
            for r in 0..4 {
                expect[r] = u[(r, 0)];
            }
            for r in 0..4 {
                assert!((psi[r] - expect[r]).norm() < 1e-12, "theta={theta} r={r}");
            }
        }
    }

    #[test]
    fn k2_quarter_turn_amplitudes() {
        let psi = build_state(&k2(), &[std::f64::consts::FRAC_PI_2], 20).unwrap();
        let c = Complex64::new(std::f64::consts::FRAC_PI_4.cos(), 0.0);
        let s = Complex64::new(std::f64::consts::FRAC_PI_4.sin(), 0.0);
        assert!((psi[0] - c).norm() < 1e-15);
        assert!((psi[3] - s).norm() < 1e-15);
        assert!(psi[1].norm() < 1e-15 && psi[2].norm() < 1e-15);
    }

    #[test]
    fn zero_angles_leave_the_all_zeros_state() {
        let g = WeightedGraph::cycle(5).unwrap();
        let psi = build_state(&g, &vec![0.0; 5], 20).unwrap();
        assert_eq!(psi[0], Complex64::new(1.0, 0.0));
        assert!(psi[1..].iter().all(|a| a.norm() == 0.0));
    }

    #[test]
    fn gate_order_is_immaterial() {
        // generators share the (X - Y) factor on common endpoints, so they
        // commute; applying the gates in any order reproduces the state
        let apply_in_order = |g: &WeightedGraph, angles: &[f64], order: &[usize]| {
            let mut psi = vec![Complex64::new(0.0, 0.0); 1 << g.n()];
            psi[0] = Complex64::new(1.0, 0.0);
            for &e in order {
                let (i, j, _) = g.edges()[e];
                apply_gate(&mut psi, i, j, angles[e]);
            }
            psi
        };
        let p4 = WeightedGraph::path(4).unwrap();
        let angles = [0.4, 0.9, 1.3];
        let reference = build_state(&p4, &angles, 20).unwrap();
        for order in [[2, 1, 0], [1, 0, 2], [2, 0, 1]] {
            let psi = apply_in_order(&p4, &angles, &order);
            for (a, b) in reference.iter().zip(&psi) {
                assert!((a - b).norm() < 1e-12);
            }
        }
        // random graphs, reversed order
        for seed in 0..6 {
            let g = WeightedGraph::random_gnp(8, 0.4, seed).unwrap();
            let angles: Vec<f64> = (0..g.edge_count()).map(|e| 0.1 + 0.07 * e as f64).collect();
            let fwd = build_state(&g, &angles, 20).unwrap();
            let order: Vec<usize> = (0..g.edge_count()).rev().collect();
            let rev = apply_in_order(&g, &angles, &order);
            for (a, b) in fwd.iter().zip(&rev) {
                assert!((a - b).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn k2_energy_closed_form() {
        // single edge: energy is 1 + sin(theta)
        for theta in [0.0, 0.4, 1.0, std::f64::consts::FRAC_PI_2] {
            let psi = build_state(&k2(), &[theta], 20).unwrap();
            let e = energy(&k2(), &psi).unwrap();
            assert!((e - (1.0 + theta.sin())).abs() < 1e-12);
            assert!((lower_bound_ell(&k2(), &[theta]) - e).abs() < 1e-12);
        }
    }

    #[test]
    fn edge_term_is_twice_the_pair_overlap() {
        // h = 2 * projector onto (|00> + |11>)/sqrt(2): check against the
        // dense Pauli construction on n = 2
        use crate::pauli::{dense_matrix, PauliString};
        let ii = dense_matrix(&PauliString::identity(2).unwrap()).unwrap();
        let xx = dense_matrix(&PauliString::from_masks(2, 0b11, 0).unwrap()).unwrap();
        let yy = dense_matrix(&PauliString::from_masks(2, 0b11, 0b11).unwrap()).unwrap();
        let zz = dense_matrix(&PauliString::from_masks(2, 0, 0b11).unwrap()).unwrap();
        let h = (ii + xx - yy + zz) * Complex64::new(0.5, 0.0);
        for (r, c, expect) in [(0, 0, 1.0), (0, 3, 1.0), (3, 0, 1.0), (3, 3, 1.0)] {
            assert_eq!(h[(r, c)], Complex64::new(expect, 0.0));
        }
        for r in 1..3 {
            for c in 0..4 {
                assert_eq!(h[(r, c)], Complex64::new(0.0, 0.0));
            }
        }
        // and the simulated energy agrees with <psi| h |psi> via the oracle
        let theta = 0.7;
        let psi = build_state(&k2(), &[theta], 20).unwrap();
        let mut quad = Complex64::new(0.0, 0.0);
        for r in 0..4 {
            for c in 0..4 {
                quad += psi[r].conj() * h[(r, c)] * psi[c];
            }
        }
        assert!((quad.im).abs() < 1e-14);
        assert!((quad.re - energy(&k2(), &psi).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn c4_at_the_golden_angle_reaches_the_cap_numerator() {
        let g = WeightedGraph::cycle(4).unwrap();
        let theta = ((5f64.sqrt() - 1.0) / 2.0).atan();
        let psi = build_state(&g, &vec![theta; 4], 20).unwrap();
        let e = energy(&g, &psi).unwrap();
        assert!((e - (3.0 + 5f64.sqrt())).abs() < 1e-9, "e = {e}");
        // triangle-free, so the closed form is exact
        assert!((lower_bound_ell(&g, &vec![theta; 4]) - e).abs() < 1e-12);
    }

    #[test]
    fn lambda_max_small_cases() {
        let opts = AnsatzOptions::default();
        assert!((lambda_max(&k2(), &opts).unwrap() - 2.0).abs() < 1e-10);
        let c4 = WeightedGraph::cycle(4).unwrap();
        assert!((lambda_max(&c4, &opts).unwrap() - 6.0).abs() < 1e-10);
        let p4 = WeightedGraph::path(4).unwrap();
        let lam = lambda_max(&p4, &opts).unwrap();
        let angles = [0.5, 0.2, 0.5];
        assert!(lower_bound_ell(&p4, &angles) <= lam + 1e-9);
    }

    #[test]
    fn lanczos_agrees_with_dense() {
        for seed in 0..4 {
            let g = WeightedGraph::random_connected_weighted(7, 0.45, (0.3, 1.7), seed).unwrap();
            let dense = lambda_max(&g, &AnsatzOptions::default()).unwrap();
            let kry = lambda_max(&g, &AnsatzOptions { dense_eig_cap: 0, ..Default::default() })
                .unwrap();
            assert!((dense - kry).abs() <= 1e-9 * dense.max(1.0), "seed {seed}: {dense} {kry}");
        }
    }

    #[test]
    fn energy_never_falls_below_the_bound_with_triangles() {
        // triangle-containing instances: the closed form is a strict bound
        let g = WeightedGraph::new(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        for angles in [[0.3, 0.3, 0.3], [0.9, 0.2, 0.5], [1.2, 1.2, 1.2]] {
            let psi = build_state(&g, &angles, 20).unwrap();
            let e = energy(&g, &psi).unwrap();
            assert!(e >= lower_bound_ell(&g, &angles) - 1e-9);
        }
    }

    #[test]
    fn pipeline_on_p4_meets_the_guarantee() {
        let run = run_pipeline(
            &WeightedGraph::path(4).unwrap(),
            &ScheduleParams::paper(),
            &SolveOptions::default(),
            &AnsatzOptions::default(),
        )
        .unwrap();
        assert!(run.guarantee_met);
        assert!(run.ratio_lower >= ALPHA_PRIME - 1e-6);
        assert!(run.ell <= run.energy + 1e-9);
        assert!(run.energy <= run.lambda_max + 1e-9);
        assert!(run.lambda_max <= run.u + 1e-6);
        let ratios = run.edge_ratios();
        for r in ratios {
            assert!((r - 0.839_511_1).abs() < 1e-5, "edge ratio {r}");
        }
    }

    #[test]
    fn pipeline_reports_json() {
        let run = run_pipeline(
            &k2(),
            &ScheduleParams::paper(),
            &SolveOptions::default(),
            &AnsatzOptions { keep_state: true, ..Default::default() },
        )
        .unwrap();
        let j = run.to_json(true);
        // single edge: ell = 1 + sin nu(1) = 2 alpha', u = 2
        assert!((j["ratio_lower"].as_f64().unwrap() - ALPHA_PRIME).abs() < 1e-5);
        assert_eq!(j["guarantee_met"], serde_json::json!(true));
        assert_eq!(j["state"].as_array().unwrap().len(), 4);
        assert!(j["angles"]["0-1"].as_f64().unwrap() > 0.0);
    }
}
