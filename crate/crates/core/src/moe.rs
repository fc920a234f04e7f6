//! Monogamy-of-entanglement validators over solver output.
//!
//! The level-2 relaxation provably satisfies three families of caps on the
//! per-edge values around each vertex: the degree-aware star cap, the
//! aggregate cap on positive neighbor sums, and the pairwise cap. These
//! checkers scan a solved instance and report every violation beyond
//! tolerance; on exact solver output all three come back empty, so anything
//! reported flags either solver drift or a broken instance.

use crate::angles::{q_bound, r_bound, star_bound};
use crate::graph::WeightedGraph;
use crate::sdp::MomentSolution;
use serde::Serialize;

/// Default tolerance tied to the solver residual scale: smaller deviations
/// are classified as numerical noise.
pub const DEFAULT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MoeKind {
    StarP,
    StarQ,
    PairR,
}

/// One violated inequality: `lhs <= rhs + tol` failed with the given slack.
#[derive(Debug, Clone, Serialize)]
pub struct MoeViolation {
    pub kind: MoeKind,
    pub center: usize,
    /// Edges appearing in the inequality, anchored edge first.
    pub witness_edges: Vec<(usize, usize)>,
    pub lhs: f64,
    pub rhs: f64,
    /// rhs - lhs; negative beyond tolerance when reported.
    pub slack: f64,
}

fn edge_pair(g: &WeightedGraph, e: usize) -> (usize, usize) {
    let (i, j, _) = g.edges()[e];
    (i, j)
}

/// Star cap: around every vertex of degree >= 2, the other edge values sum
/// to at most the degree-aware cap of the anchored edge. Raw (unclipped)
/// values are scanned; the cap itself is evaluated on values clamped to
/// [-1, 1] to absorb solver rounding.
pub fn check_star_p(sol: &MomentSolution, tol: f64) -> Vec<MoeViolation> {
    let g = sol.graph();
    let mut out = Vec::new();
    for center in 0..g.n() {
        let nbrs = g.neighbors(center);
        let d = nbrs.len();
        if d < 2 {
            continue;
        }
        for &(_, anchor) in nbrs {
            let lhs: f64 = nbrs
                .iter()
                .filter(|&&(_, e)| e != anchor)
                .map(|&(_, e)| sol.g[e])
                .sum();
            let rhs = star_bound(sol.g[anchor].clamp(-1.0, 1.0), d).expect("degree >= 2");
            if lhs > rhs + tol {
                let mut witness = vec![edge_pair(g, anchor)];
                witness.extend(nbrs.iter().filter(|&&(_, e)| e != anchor).map(|&(_, e)| edge_pair(g, e)));
                out.push(MoeViolation {
                    kind: MoeKind::StarP,
                    center,
                    witness_edges: witness,
                    lhs,
                    rhs,
                    slack: rhs - lhs,
                });
            }
        }
    }
    out
}

/// Aggregate cap: positive parts of the other edge values sum to at most the
/// cap of the anchored edge's positive part.
pub fn check_star_q(sol: &MomentSolution, tol: f64) -> Vec<MoeViolation> {
    let g = sol.graph();
    let mut out = Vec::new();
    for center in 0..g.n() {
        let nbrs = g.neighbors(center);
        if nbrs.len() < 2 {
            continue;
        }
        for &(_, anchor) in nbrs {
            let lhs: f64 = nbrs
                .iter()
                .filter(|&&(_, e)| e != anchor)
                .map(|&(_, e)| sol.g[e].max(0.0))
                .sum();
            let rhs = q_bound(sol.g[anchor].clamp(0.0, 1.0)).expect("clamped");
            if lhs > rhs + tol {
                let mut witness = vec![edge_pair(g, anchor)];
                witness.extend(nbrs.iter().filter(|&&(_, e)| e != anchor).map(|&(_, e)| edge_pair(g, e)));
                out.push(MoeViolation {
                    kind: MoeKind::StarQ,
                    center,
                    witness_edges: witness,
                    lhs,
                    rhs,
                    slack: rhs - lhs,
                });
            }
        }
    }
    out
}

/// Pairwise cap, checked in both orientations for every pair of edges
/// sharing a vertex.
pub fn check_pair_r(sol: &MomentSolution, tol: f64) -> Vec<MoeViolation> {
    let g = sol.graph();
    let mut out = Vec::new();
    for center in 0..g.n() {
        let nbrs = g.neighbors(center);
        for (a, &(_, ea)) in nbrs.iter().enumerate() {
            for &(_, eb) in &nbrs[a + 1..] {
                for (anchor, other) in [(ea, eb), (eb, ea)] {
                    let lhs = sol.g[other];
                    let rhs = r_bound(sol.g[anchor].clamp(-1.0, 1.0)).expect("clamped");
                    if lhs > rhs + tol {
                        out.push(MoeViolation {
                            kind: MoeKind::PairR,
                            center,
                            witness_edges: vec![edge_pair(g, anchor), edge_pair(g, other)],
                            lhs,
                            rhs,
                            slack: rhs - lhs,
                        });
                    }
                }
            }
        }
    }
    out
}

/// All three checkers in sequence.
pub fn check_all(sol: &MomentSolution, tol: f64) -> Vec<MoeViolation> {
    let mut out = check_star_p(sol, tol);
    out.extend(check_star_q(sol, tol));
    out.extend(check_pair_r(sol, tol));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedGraph;
    use crate::sdp::{solve, SolveOptions};

    fn solved(g: &WeightedGraph) -> MomentSolution {
        solve(g, &SolveOptions::default()).unwrap()
    }

    #[test]
    fn k2_has_no_stars() {
        let sol = solved(&WeightedGraph::path(2).unwrap());
        assert!(check_star_p(&sol, DEFAULT_TOL).is_empty());
        assert!(check_star_q(&sol, DEFAULT_TOL).is_empty());
        assert!(check_pair_r(&sol, DEFAULT_TOL).is_empty());
    }

    #[test]
    fn p4_center_values_sit_on_the_caps() {
        // at the known optimum (s3/2, 0, s3/2) the degree-2 star cap and the
        // pairwise cap are tight at the middle vertex, so the checkers must
        // stay quiet at tolerance while tiny negative slack is expected
        let sol = solved(&WeightedGraph::path(4).unwrap());
        assert!(check_all(&sol, DEFAULT_TOL).is_empty());
        let s3h = 0.866_025_403_784_438_6_f64;
        let cap = crate::angles::star_bound(0.0, 2).unwrap();
        assert!((cap - 3f64.sqrt() / 2.0).abs() < 1e-12);
        assert!(sol.g[0] <= cap + 1e-5);
        // pairwise: g12 <= r(g01) with r(s3/2) = 0, tight
        let r = crate::angles::r_bound(s3h).unwrap();
        assert!(r.abs() < 1e-12);
        assert!(sol.g[1] <= 1e-5);
    }

    #[test]
    fn three_leaf_star_passes_all_instances() {
        let sol = solved(&WeightedGraph::star(3).unwrap());
        assert!(check_all(&sol, DEFAULT_TOL).is_empty());
    }

    #[test]
    fn all_nonpositive_values_trivially_satisfy_the_aggregate_cap() {
        // hand-built solution-like check: lhs of the aggregate cap is 0 when
        // every value is nonpositive, and q_bound is nonnegative
        let g = WeightedGraph::star(2).unwrap();
        let mut sol = solved(&g);
        sol.g = vec![-0.3, -0.9];
        assert!(check_star_q(&sol, 0.0).is_empty());
    }

    #[test]
    fn random_instances_stay_clean() {
        for seed in 0..5 {
            let g = WeightedGraph::random_connected_weighted(6, 0.5, (0.3, 1.5), seed).unwrap();
            let sol = solved(&g);
            let v = check_all(&sol, DEFAULT_TOL);
            assert!(v.is_empty(), "seed {seed}: {v:?}");
        }
    }

    #[test]
    fn violations_are_reported_with_witnesses() {
        let g = WeightedGraph::star(2).unwrap();
        let mut sol = solved(&g);
        sol.g = vec![0.9, 0.9]; // impossible for a true solution
        let v = check_pair_r(&sol, DEFAULT_TOL);
        assert!(!v.is_empty());
        assert_eq!(v[0].kind, MoeKind::PairR);
        assert_eq!(v[0].center, 0);
        assert!(v[0].slack < 0.0);
        assert!(!check_star_p(&sol, DEFAULT_TOL).is_empty());
        assert!(!check_star_q(&sol, DEFAULT_TOL).is_empty());
    }
}
