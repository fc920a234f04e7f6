//! Level-2 quantum moment-SoS relaxation of the EPR Hamiltonian.
//!
//! The moment matrix is indexed by the weight-<=2 Pauli basis. Its entries
//! are classified once by the exact monomial algebra: pairs whose product is
//! non-Hermitian are pinned to zero, and the remaining entries are grouped
//! into classes sharing one scalar per canonical product monomial, which
//! enforces the equality constraints by construction. A global spin-flip
//! symmetry of the Hamiltonian (conjugation by X^n, Y^n, Z^n) lets the
//! solver restrict to moment matrices that are block-diagonal over the four
//! (x-parity, z-parity) sectors without changing the optimum or any edge
//! value, which shrinks the spectral projections considerably.
//!
//! The solver itself is an operator-splitting scheme: it alternates a
//! projection onto the PSD cone (per sector block) with the closed-form
//! update of the class scalars against the objective; see [`admm`]. A dual
//! certificate turns any iterate into a rigorous upper bound on the
//! relaxation value, which is what `certified` mode reports.

mod admm;

use crate::graph::WeightedGraph;
use crate::pauli::{enumerate_basis, PauliString};
use nalgebra::DMatrix;
use serde_json::{json, Value};
use std::collections::HashMap;
use thiserror::Error;

pub use admm::SolverStats;

/// Default cap on the instance size; the moment matrix has dimension
/// 1 + 3n + 9n(n-1)/2.
pub const DEFAULT_SIZE_CAP: usize = 14;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SdpError {
    #[error("instance with n = {n} exceeds the solver size cap {cap}")]
    SizeCap { n: usize, cap: usize },
    #[error("monomial {0} is not a product of two basis elements")]
    NotRepresentable(String),
    #[error("monomial acts on {0} qubits but the solution has {1}")]
    QubitMismatch(usize, usize),
    #[error("vertex subset does not cross edge ({0}, {1})")]
    PartNotBipartition(usize, usize),
    #[error("vertex {0} out of range")]
    BadVertex(usize),
}

/// Options for [`solve`].
#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Scaled primal/dual residual target.
    pub tol: f64,
    /// Certified duality-gap target, relative to 1 + |objective|.
    pub tol_gap: f64,
    /// Feasibility floor asserted on the reconstructed moment matrix.
    pub tol_psd: f64,
    pub max_iters: usize,
    /// Report the dual bound (valid for any iterate) as `u`.
    pub certified: bool,
    pub size_cap: usize,
    /// Initial step size of the splitting (weights are normalized to mean 1
    /// internally, so this is instance-independent).
    pub rho: f64,
    pub over_relaxation: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            tol: 1e-8,
            tol_gap: 1e-7,
            tol_psd: 1e-7,
            max_iters: 200_000,
            certified: false,
            size_cap: DEFAULT_SIZE_CAP,
            rho: 1.0,
            over_relaxation: 1.6,
        }
    }
}

/// Assignment of the weight-<=2 basis to the four parity sectors.
#[derive(Debug, Clone)]
pub struct BasisLayout {
    pub basis: Vec<PauliString>,
    /// Sector id in 0..4 per basis element: (x-parity << 1) | z-parity.
    pub sector_of: Vec<usize>,
    /// Index within the element's sector block.
    pub index_in_sector: Vec<usize>,
    pub sector_sizes: [usize; 4],
}

impl BasisLayout {
    fn new(n: usize) -> BasisLayout {
        let basis = enumerate_basis(n, 2).expect("n within symbol-layer range");
        let mut sector_of = Vec::with_capacity(basis.len());
        let mut index_in_sector = Vec::with_capacity(basis.len());
        let mut sector_sizes = [0usize; 4];
        for p in &basis {
            let s = sector_id(p);
            sector_of.push(s);
            index_in_sector.push(sector_sizes[s]);
            sector_sizes[s] += 1;
        }
        BasisLayout { basis, sector_of, index_in_sector, sector_sizes }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn sector_id(p: &PauliString) -> usize {
    let xp = (p.x_mask().count_ones() & 1) as usize;
    let zp = (p.z_mask().count_ones() & 1) as usize;
    (xp << 1) | zp
}

/// One entry of a class: position within a sector block and relative sign.
#[derive(Debug, Clone, Copy)]
pub struct ClassMember {
    pub sector: u8,
    pub row: u32,
    pub col: u32,
    pub sign: f64,
}

/// All moment-matrix entries tied to one canonical product monomial.
#[derive(Debug, Clone)]
pub struct EntryClass {
    pub canonical: PauliString,
    /// Strict upper-triangle members (row < col in sector-local indices).
    pub members: Vec<ClassMember>,
    /// Number of matrix entries in the class (2 per member, by symmetry).
    pub entry_count: f64,
}

/// How a basis pair (A, B) enters the moment matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EntryKind {
    /// AB is non-Hermitian; the entry is pinned to zero.
    Zero,
    /// A == B; the entry is pinned to one.
    Diagonal,
    /// The entry equals `sign` times the class scalar.
    Class { id: usize, sign: f64 },
}

/// The assembled relaxation: entry classes, objective and layout.
#[derive(Debug, Clone)]
pub struct Relaxation {
    pub layout: BasisLayout,
    classes: Vec<EntryClass>,
    class_of: HashMap<PauliString, usize>,
    /// Objective coefficient per class; the relaxed value is
    /// `objective_constant + sum_C objective[C] * value[C]`.
    objective: Vec<f64>,
    objective_constant: f64,
    graph: WeightedGraph,
}

impl Relaxation {
    pub fn classes(&self) -> &[EntryClass] {
        &self.classes
    }

    pub fn class_index(&self, canonical: &PauliString) -> Option<usize> {
        self.class_of.get(canonical).copied()
    }

    pub fn objective(&self) -> (&[f64], f64) {
        (&self.objective, self.objective_constant)
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    /// Classification of a single pair of basis elements.
    pub fn classify(&self, a: &PauliString, b: &PauliString) -> Result<EntryKind, SdpError> {
        let prod = a
            .multiply(b)
            .map_err(|_| SdpError::QubitMismatch(a.n(), b.n()))?;
        let Some(sign) = prod.phase.real_sign() else {
            return Ok(EntryKind::Zero);
        };
        if prod.op.is_identity() {
            return Ok(EntryKind::Diagonal);
        }
        match self.class_of.get(&prod.op) {
            Some(&id) => Ok(EntryKind::Class { id, sign }),
            // product lands in an odd parity sector: pinned to zero by the
            // symmetry restriction
            None => Ok(EntryKind::Zero),
        }
    }
}

/// Builds the entry classes and the objective vector for a graph.
///
/// The objective touches only the classes of X_iX_j, Y_iY_j, Z_iZ_j over the
/// edges, with signs (+, -, +) and coefficient w/2 each, plus the constant
/// sum(w)/2.
pub fn build_relaxation(g: &WeightedGraph) -> Relaxation {
    let layout = BasisLayout::new(g.n().max(1));
    let m = layout.dim();
    let mut classes: Vec<EntryClass> = Vec::new();
    let mut class_of: HashMap<PauliString, usize> = HashMap::new();
    for a in 0..m {
        for b in (a + 1)..m {
            if layout.sector_of[a] != layout.sector_of[b] {
                continue;
            }
            let prod = layout.basis[a].multiply(&layout.basis[b]).expect("same n");
            let Some(sign) = prod.phase.real_sign() else {
                continue;
            };
            let id = *class_of.entry(prod.op).or_insert_with(|| {
                classes.push(EntryClass {
                    canonical: prod.op,
                    members: Vec::new(),
                    entry_count: 0.0,
                });
                classes.len() - 1
            });
            classes[id].members.push(ClassMember {
                sector: layout.sector_of[a] as u8,
                row: layout.index_in_sector[a] as u32,
                col: layout.index_in_sector[b] as u32,
                sign,
            });
            classes[id].entry_count += 2.0;
        }
    }
    let mut objective = vec![0.0; classes.len()];
    let mut objective_constant = 0.0;
    let n = g.n().max(1);
    for &(i, j, w) in g.edges() {
        objective_constant += w / 2.0;
        for (letters, s) in [((1u64, 0u64, 1u64, 0u64), 1.0), ((1, 1, 1, 1), -1.0), ((0, 1, 0, 1), 1.0)]
        {
            let (xi, zi, xj, zj) = letters;
            let mono = PauliString::from_masks(n, (xi << i) | (xj << j), (zi << i) | (zj << j))
                .expect("edge endpoints in range");
            let id = class_of[&mono];
            objective[id] += s * w / 2.0;
        }
    }
    Relaxation {
        layout,
        classes,
        class_of,
        objective,
        objective_constant,
        graph: g.clone(),
    }
}

/// A solved relaxation: the pseudo-expectation scalars, per-edge values and
/// the upper bound.
#[derive(Debug, Clone)]
pub struct MomentSolution {
    relaxation: Relaxation,
    class_values: Vec<f64>,
    /// Per-edge relaxed values, aligned with `graph().edges()`.
    pub g: Vec<f64>,
    /// Per-edge values of the sibling (sign-flipped) objective.
    pub q: Vec<f64>,
    /// Reported upper bound: the dual certificate in certified mode, the
    /// primal objective otherwise.
    pub u: f64,
    pub u_primal: f64,
    pub u_certified: f64,
    /// Certified duality gap, `u_certified - u_primal`.
    pub gap: f64,
    pub certified: bool,
    /// False when the iteration budget ran out before the tolerances.
    pub converged: bool,
    pub iterations: usize,
    /// Smallest eigenvalue over the sector blocks of the reconstruction.
    pub min_eigenvalue: f64,
}

impl MomentSolution {
    pub fn graph(&self) -> &WeightedGraph {
        &self.relaxation.graph
    }

    pub fn relaxation(&self) -> &Relaxation {
        &self.relaxation
    }

    pub fn class_values(&self) -> &[f64] {
        &self.class_values
    }

    /// Pseudo-expectation of a canonical monomial of weight <= 4.
    pub fn pseudo_expectation(&self, p: &PauliString) -> Result<f64, SdpError> {
        let n = self.relaxation.layout.basis[0].n();
        if p.n() != n {
            return Err(SdpError::QubitMismatch(p.n(), n));
        }
        if p.is_identity() {
            return Ok(1.0);
        }
        if p.weight() > 4 {
            return Err(SdpError::NotRepresentable(p.to_string()));
        }
        if sector_id(p) != 0 {
            // odd-parity monomials vanish on the symmetry-invariant solution
            return Ok(0.0);
        }
        match self.relaxation.class_of.get(p) {
            Some(&id) => Ok(self.class_values[id]),
            None => Err(SdpError::NotRepresentable(p.to_string())),
        }
    }

    /// The full moment matrix (cross-sector entries are zero).
    pub fn gamma(&self) -> DMatrix<f64> {
        let layout = &self.relaxation.layout;
        let m = layout.dim();
        let mut full = DMatrix::zeros(m, m);
        for a in 0..m {
            full[(a, a)] = 1.0;
        }
        // global index per (sector, local) position
        let mut pos = vec![vec![0usize; 0]; 4];
        for (g, _) in layout.basis.iter().enumerate() {
            pos[layout.sector_of[g]].push(g);
        }
        for (id, class) in self.relaxation.classes.iter().enumerate() {
            let v = self.class_values[id];
            for mem in &class.members {
                let a = pos[mem.sector as usize][mem.row as usize];
                let b = pos[mem.sector as usize][mem.col as usize];
                full[(a, b)] = mem.sign * v;
                full[(b, a)] = mem.sign * v;
            }
        }
        full
    }

    /// The four sector blocks of the moment matrix.
    pub fn gamma_blocks(&self) -> Vec<DMatrix<f64>> {
        admm::assemble_blocks(&self.relaxation, &self.class_values)
    }

    /// Entrywise sign flip induced by a vertex subset crossed by every edge;
    /// swaps the two per-edge value families and preserves feasibility
    /// exactly (it conjugates each block by a diagonal sign matrix).
    pub fn bipartite_transform(&self, part: &[usize]) -> Result<MomentSolution, SdpError> {
        let g = self.graph();
        let mut mask = 0u64;
        for &v in part {
            if v >= g.n() {
                return Err(SdpError::BadVertex(v));
            }
            mask |= 1 << v;
        }
        for &(i, j, _) in g.edges() {
            if ((mask >> i) & 1) == ((mask >> j) & 1) {
                return Err(SdpError::PartNotBipartition(i, j));
            }
        }
        let mut out = self.clone();
        for (id, class) in self.relaxation.classes.iter().enumerate() {
            let c = class.canonical;
            let supp_xz = c.x_mask() ^ c.z_mask();
            if (supp_xz & mask).count_ones() & 1 == 1 {
                out.class_values[id] = -self.class_values[id];
            }
        }
        let (gv, qv) = edge_values(&out.relaxation, &out.class_values);
        out.g = gv;
        out.q = qv;
        out.u = g
            .edges()
            .iter()
            .zip(&out.g)
            .map(|(&(_, _, w), &gij)| w * (1.0 + gij))
            .sum();
        out.u_primal = out.u;
        // the dual certificate bounded the original objective, not this one
        out.u_certified = f64::INFINITY;
        out.certified = false;
        Ok(out)
    }

    /// JSON report: per-edge values keyed "i-j", bound, gap and mode.
    pub fn to_json(&self) -> Value {
        let edges = self.graph().edges();
        let gmap: serde_json::Map<String, Value> = edges
            .iter()
            .zip(&self.g)
            .map(|(&(i, j, _), &v)| (format!("{i}-{j}"), json!(v)))
            .collect();
        let qmap: serde_json::Map<String, Value> = edges
            .iter()
            .zip(&self.q)
            .map(|(&(i, j, _), &v)| (format!("{i}-{j}"), json!(v)))
            .collect();
        json!({
            "g": gmap,
            "q": qmap,
            "u": self.u,
            "gap": self.gap,
            "certified": self.certified,
        })
    }
}

fn edge_values(relax: &Relaxation, class_values: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = relax.layout.basis[0].n();
    let read = |i: usize, j: usize, xi: u64, zi: u64, xj: u64, zj: u64| -> f64 {
        let mono = PauliString::from_masks(n, (xi << i) | (xj << j), (zi << i) | (zj << j))
            .expect("edge endpoints in range");
        class_values[relax.class_of[&mono]]
    };
    let mut g = Vec::new();
    let mut q = Vec::new();
    for &(i, j, _) in relax.graph.edges() {
        let xx = read(i, j, 1, 0, 1, 0);
        let yy = read(i, j, 1, 1, 1, 1);
        let zz = read(i, j, 0, 1, 0, 1);
        g.push((-1.0 + xx - yy + zz) / 2.0);
        q.push((-1.0 - xx - yy - zz) / 2.0);
    }
    (g, q)
}

/// Solves the level-2 relaxation for a graph.
///
/// Returns the best iterate with `converged = false` if the iteration budget
/// runs out; errors only on instances over the size cap.
pub fn solve(g: &WeightedGraph, opts: &SolveOptions) -> Result<MomentSolution, SdpError> {
    if g.n() > opts.size_cap {
        return Err(SdpError::SizeCap { n: g.n(), cap: opts.size_cap });
    }
    // normalize weights to mean 1 so the step size is instance-independent;
    // the optimal moment matrix is unchanged and the bound rescales back
    let scale = if g.edge_count() > 0 { g.total_weight() / g.edge_count() as f64 } else { 1.0 };
    let solved_graph = if (scale - 1.0).abs() > 1e-15 {
        WeightedGraph::new(g.n(), g.edges().iter().map(|&(i, j, w)| (i, j, w / scale)))
            .expect("rescaled copy of a valid graph")
    } else {
        g.clone()
    };
    let relax_scaled = build_relaxation(&solved_graph);
    let out = admm::run(&relax_scaled, opts);
    let relax = if (scale - 1.0).abs() > 1e-15 { build_relaxation(g) } else { relax_scaled };
    let (gv, qv) = edge_values(&relax, &out.class_values);
    let u_primal = out.u_primal * scale;
    let u_certified = out.u_certified * scale;
    // the primal objective can overshoot the optimum while the matrix is
    // still slightly infeasible; the dual bound caps that overshoot
    let u = if opts.certified { u_certified } else { u_primal.min(u_certified) };
    Ok(MomentSolution {
        relaxation: relax,
        class_values: out.class_values,
        g: gv,
        q: qv,
        u,
        u_primal,
        u_certified,
        gap: u_certified - u_primal,
        certified: opts.certified,
        converged: out.converged,
        iterations: out.iterations,
        min_eigenvalue: out.min_eigenvalue,
    })
}
