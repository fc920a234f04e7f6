//! Exact Pauli-monomial algebra over n qubits.
//!
//! Monomials are stored in symplectic form: one bit per qubit for the X
//! component and one for the Z component, so X = (1,0), Z = (0,1) and
//! Y = (1,1) with the convention Y = i·X·Z. Products track their phase
//! exactly as a power of i, which is what classifies moment-matrix entries
//! into equal, negated and zero classes.

use nalgebra::DMatrix;
use num_complex::Complex64;
use std::fmt;
use thiserror::Error;

/// Largest qubit count supported by the symplectic layer.
pub const MAX_QUBITS: usize = 32;

/// Largest qubit count for which [`dense_matrix`] will materialize 2^n x 2^n.
pub const MAX_DENSE_QUBITS: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PauliError {
    #[error("qubit counts differ: {0} vs {1}")]
    QubitCountMismatch(usize, usize),
    #[error("qubit index {index} out of range for {n} qubits")]
    QubitOutOfRange { index: usize, n: usize },
    #[error("{n} qubits exceeds the supported maximum of {max}")]
    TooManyQubits { n: usize, max: usize },
    #[error("unsupported basis level k = {0}; only k in {{1, 2}} is implemented")]
    UnsupportedLevel(usize),
}

/// Single-site Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    fn bits(self) -> (u64, u64) {
        match self {
            Letter::I => (0, 0),
            Letter::X => (1, 0),
            Letter::Y => (1, 1),
            Letter::Z => (0, 1),
        }
    }
}

/// One of the four phase units {+1, +i, -1, -i}, stored as the exponent of i.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_exponent(k: i64) -> Phase {
        Phase(k.rem_euclid(4) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    /// True for +1 and -1; a Hermitian product has a real phase.
    pub fn is_real(self) -> bool {
        self.0 % 2 == 0
    }

    /// +1.0 or -1.0 for real phases.
    pub fn real_sign(self) -> Option<f64> {
        match self.0 {
            0 => Some(1.0),
            2 => Some(-1.0),
            _ => None,
        }
    }

    pub fn as_complex(self) -> Complex64 {
        match self.0 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }

    pub fn mul(self, other: Phase) -> Phase {
        Phase((self.0 + other.0) % 4)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.0 {
            0 => "+1",
            1 => "+i",
            2 => "-1",
            _ => "-i",
        };
        write!(f, "{s}")
    }
}

/// Phase-free Pauli monomial on `n` qubits in symplectic (x, z) encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    n: u32,
    x: u64,
    z: u64,
}

/// A canonical monomial together with the phase split off by a product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhasedPauli {
    pub phase: Phase,
    pub op: PauliString,
}

impl PauliString {
    pub fn identity(n: usize) -> Result<PauliString, PauliError> {
        Self::from_masks(n, 0, 0)
    }

    pub fn from_masks(n: usize, x: u64, z: u64) -> Result<PauliString, PauliError> {
        if n > MAX_QUBITS {
            return Err(PauliError::TooManyQubits { n, max: MAX_QUBITS });
        }
        let live = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        if x & !live != 0 || z & !live != 0 {
            return Err(PauliError::QubitOutOfRange {
                index: 63 - ((x | z) & !live).leading_zeros() as usize,
                n,
            });
        }
        Ok(PauliString { n: n as u32, x, z })
    }

    pub fn single(n: usize, qubit: usize, letter: Letter) -> Result<PauliString, PauliError> {
        if qubit >= n {
            return Err(PauliError::QubitOutOfRange { index: qubit, n });
        }
        let (x, z) = letter.bits();
        Self::from_masks(n, x << qubit, z << qubit)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    /// Number of non-identity sites.
    pub fn weight(&self) -> u32 {
        (self.x | self.z).count_ones()
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn letter(&self, qubit: usize) -> Letter {
        match ((self.x >> qubit) & 1, (self.z >> qubit) & 1) {
            (0, 0) => Letter::I,
            (1, 0) => Letter::X,
            (1, 1) => Letter::Y,
            _ => Letter::Z,
        }
    }

    /// Exact product a*b = phase * canonical, with the canonical convention
    /// Y = i·X·Z, i.e. a monomial with masks (x, z) is i^{|x & z|} X^x Z^z.
    pub fn multiply(&self, other: &PauliString) -> Result<PhasedPauli, PauliError> {
        if self.n != other.n {
            return Err(PauliError::QubitCountMismatch(self.n(), other.n()));
        }
        let x3 = self.x ^ other.x;
        let z3 = self.z ^ other.z;
        // i-exponents of the canonical forms, plus the anticommutation sign
        // (-1)^{|z1 & x2|} from moving Z^{z1} past X^{x2}.
        let k = (self.x & self.z).count_ones() as i64 + (other.x & other.z).count_ones() as i64
            - (x3 & z3).count_ones() as i64
            + 2 * (self.z & other.x).count_ones() as i64;
        Ok(PhasedPauli {
            phase: Phase::from_exponent(k),
            op: PauliString { n: self.n, x: x3, z: z3 },
        })
    }

    /// True iff the two monomials commute (symplectic form vanishes mod 2).
    pub fn commutes_with(&self, other: &PauliString) -> bool {
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()) % 2 == 0
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "I");
        }
        let mut first = true;
        for q in 0..self.n() {
            let l = self.letter(q);
            if l == Letter::I {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            // 1-based site labels in diagnostics
            match l {
                Letter::X => write!(f, "X{}", q + 1)?,
                Letter::Y => write!(f, "Y{}", q + 1)?,
                Letter::Z => write!(f, "Z{}", q + 1)?,
                Letter::I => unreachable!(),
            }
        }
        Ok(())
    }
}

/// True iff a*b carries a real phase, i.e. the operator product is Hermitian.
pub fn is_hermitian_product(a: &PauliString, b: &PauliString) -> Result<bool, PauliError> {
    Ok(a.multiply(b)?.phase.is_real())
}

/// Monomials of weight <= k in a fixed deterministic order: identity, then
/// weight-1 by qubit with X < Y < Z, then weight-2 by qubit pair and letter
/// pair. Length is 1 + 3n for k = 1 and 1 + 3n + 9n(n-1)/2 for k = 2.
pub fn enumerate_basis(n: usize, k: usize) -> Result<Vec<PauliString>, PauliError> {
    if !(1..=2).contains(&k) {
        return Err(PauliError::UnsupportedLevel(k));
    }
    if n == 0 || n > MAX_QUBITS {
        return Err(PauliError::TooManyQubits { n, max: MAX_QUBITS });
    }
    let letters = [Letter::X, Letter::Y, Letter::Z];
    let mut out = vec![PauliString::identity(n)?];
    for q in 0..n {
        for l in letters {
            out.push(PauliString::single(n, q, l)?);
        }
    }
    if k == 2 {
        for i in 0..n {
            for j in (i + 1)..n {
                for li in letters {
                    for lj in letters {
                        let a = PauliString::single(n, i, li)?;
                        let b = PauliString::single(n, j, lj)?;
                        // disjoint supports: product is canonical with phase +1
                        out.push(a.multiply(&b)?.op);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Tensor-product matrix of the monomial in the computational basis.
pub fn dense_matrix(p: &PauliString) -> Result<DMatrix<Complex64>, PauliError> {
    let n = p.n();
    if n > MAX_DENSE_QUBITS {
        return Err(PauliError::TooManyQubits { n, max: MAX_DENSE_QUBITS });
    }
    let dim = 1usize << n;
    let mut m = DMatrix::zeros(dim, dim);
    // Canonical form i^{|x & z|} X^x Z^z: column c maps to row c ^ x with
    // coefficient i^{|x & z|} (-1)^{|z & c|}.
    for c in 0..dim as u64 {
        let r = c ^ p.x;
        let k = (p.x & p.z).count_ones() as i64 + 2 * (p.z & c).count_ones() as i64;
        m[(r as usize, c as usize)] = Phase::from_exponent(k).as_complex();
    }
    Ok(m)
}
