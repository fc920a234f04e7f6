use epr_core::graph::WeightedGraph;
use epr_core::sdp::{solve, SolveOptions};
use std::time::Instant;

fn main() {
    let rho: f64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1.0);
    let alpha: f64 = std::env::args().nth(2).and_then(|s| s.parse().ok()).unwrap_or(1.6);
    let iters: usize = std::env::args().nth(3).and_then(|s| s.parse().ok()).unwrap_or(8000);
    let mut worst_gap = 0.0f64;
    let t = Instant::now();
    for seed in [7u64, 8, 9] {
        let g = WeightedGraph::random_connected_weighted(8, 0.5, (0.2, 2.0), seed).unwrap();
        let opts = SolveOptions { rho, over_relaxation: alpha, max_iters: iters, ..Default::default() };
        let sol = solve(&g, &opts).unwrap();
        print!("[s{seed}: it={} gap={:+.1e} me={:.1e}] ", sol.iterations, sol.gap, sol.min_eigenvalue);
        worst_gap = worst_gap.max(sol.gap.abs());
    }
    println!("\nrho={rho} alpha={alpha} budget={iters} worst_gap={worst_gap:.2e} t={:?}", t.elapsed());
}
