//! Constructors for the gate families under study, plus seeded random
//! unitaries and product states.
//!
//! All randomness flows through [`seeded_rng`], a ChaCha20 stream cipher
//! generator keyed by a 64-bit seed. Identical seeds give bit-identical output
//! on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::densemat::{ComplexMatrix, C64};
use crate::entanglement::{CoefficientMatrix, UNITARITY_TOL};
use crate::error::{Error, Result};
use crate::rearrange::BipartiteOperator;

/// The deterministic generator behind every seeded routine in this crate.
pub type SeededRng = ChaCha20Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Generator for the `index`-th independent stream under `seed`.
///
/// Used where work items (Monte-Carlo samples, sweep points) must be
/// reproducible regardless of evaluation order.
pub fn stream_rng(seed: u64, index: u64) -> SeededRng {
    let mut rng = seeded_rng(seed);
    rng.set_stream(index);
    rng
}

fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        Err(Error::LocalDimension(d))
    } else {
        Ok(())
    }
}

pub fn identity_op(d: usize) -> Result<BipartiteOperator> {
    check_dim(d)?;
    BipartiteOperator::new(d, ComplexMatrix::identity(d * d))
}

/// Swap `S12 = Σ |ij⟩⟨ji|`.
pub fn swap_op(d: usize) -> Result<BipartiteOperator> {
    check_dim(d)?;
    let n = d * d;
    let mat = ComplexMatrix::from_fn(n, n, |r, c| {
        let (i, j) = (r / d, r % d);
        let (k, l) = (c / d, c % d);
        if i == l && j == k {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    BipartiteOperator::new(d, mat)
}

/// Projector onto `|Ψ+⟩ = Σ_i |ii⟩ / √d`.
pub fn max_entangled_projector(d: usize) -> Result<BipartiteOperator> {
    check_dim(d)?;
    let n = d * d;
    let w = 1.0 / d as f64;
    let mat = ComplexMatrix::from_fn(n, n, |r, c| {
        if r / d == r % d && c / d == c % d {
            C64::new(w, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    BipartiteOperator::new(d, mat)
}

/// `V(t) = exp(-i t S12) = cos(t) I - i sin(t) S12`.
pub fn exp_swap(d: usize, t: f64) -> Result<BipartiteOperator> {
    check_dim(d)?;
    if !t.is_finite() {
        return Err(Error::NonFiniteParameter(t));
    }
    let (sin, cos) = t.sin_cos();
    let n = d * d;
    let mat = ComplexMatrix::from_fn(n, n, |r, c| {
        let (i, j) = (r / d, r % d);
        let (k, l) = (c / d, c % d);
        let mut z = C64::new(0.0, 0.0);
        if r == c {
            z.re += cos;
        }
        if i == l && j == k {
            z.im -= sin;
        }
        z
    });
    BipartiteOperator::new(d, mat)
}

/// The `d` target unitaries of a controlled-U gate, validated on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlledUSpec {
    d: usize,
    blocks: Vec<ComplexMatrix>,
}

impl ControlledUSpec {
    pub fn new(d: usize, blocks: Vec<ComplexMatrix>) -> Result<Self> {
        check_dim(d)?;
        if blocks.len() != d {
            return Err(Error::BlockCount {
                expected: d,
                found: blocks.len(),
            });
        }
        for (index, block) in blocks.iter().enumerate() {
            if block.shape() != (d, d) {
                return Err(Error::InvalidBlock {
                    index,
                    reason: format!("shape {:?}, expected ({d}, {d})", block.shape()),
                });
            }
            let defect = block.unitarity_defect();
            if defect > UNITARITY_TOL {
                return Err(Error::InvalidBlock {
                    index,
                    reason: format!("not unitary (defect {defect:.3e})"),
                });
            }
        }
        Ok(Self { d, blocks })
    }

    /// `d` independent Haar-random blocks.
    pub fn random(d: usize, seed: u64) -> Result<Self> {
        check_dim(d)?;
        let mut rng = seeded_rng(seed);
        let blocks = (0..d).map(|_| haar_unitary_with(d, &mut rng)).collect();
        Self::new(d, blocks)
    }

    pub fn local_dim(&self) -> usize {
        self.d
    }

    pub fn blocks(&self) -> &[ComplexMatrix] {
        &self.blocks
    }
}

/// `C_U = Σ_n |n⟩⟨n| ⊗ U_n`.
pub fn controlled_u(spec: &ControlledUSpec) -> BipartiteOperator {
    let d = spec.d;
    let n = d * d;
    let mut mat = ComplexMatrix::zeros(n, n).into_vec();
    for (ctrl, block) in spec.blocks.iter().enumerate() {
        for j in 0..d {
            for l in 0..d {
                mat[(ctrl * d + j) * n + ctrl * d + l] = block.get(j, l);
            }
        }
    }
    BipartiteOperator::from_parts(d, ComplexMatrix::from_raw(n, n, mat))
}

/// Local operator `a ⊗ b` on two qudits.
pub fn local_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<BipartiteOperator> {
    if !a.is_square() || a.shape() != b.shape() {
        return Err(Error::DimensionMismatch {
            op: "local_product",
            left: a.shape(),
            right: b.shape(),
        });
    }
    BipartiteOperator::new(a.rows(), a.kron(b))
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// `n x n` matrix of independent standard complex Gaussians.
pub fn ginibre_matrix(n: usize, seed: u64) -> ComplexMatrix {
    let mut rng = seeded_rng(seed);
    ComplexMatrix::from_fn(n, n, |_, _| complex_gaussian(&mut rng))
}

/// Haar-random `n x n` unitary drawn from `seed`.
pub fn haar_unitary(n: usize, seed: u64) -> ComplexMatrix {
    haar_unitary_with(n, &mut seeded_rng(seed))
}

/// Haar-random unitary from a caller-owned generator.
///
/// Orthonormalizes the columns of a complex Ginibre matrix by Gram-Schmidt
/// (two passes per column). The resulting triangular factor has a positive
/// real diagonal, which is the phase convention that makes `Q` exactly Haar.
pub fn haar_unitary_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let ginibre: Vec<C64> = (0..n * n).map(|_| complex_gaussian(rng)).collect();
    // columns[j] holds column j of the Ginibre matrix
    let mut columns: Vec<Vec<C64>> = (0..n)
        .map(|j| (0..n).map(|i| ginibre[i * n + j]).collect())
        .collect();
    for j in 0..n {
        let (done, rest) = columns.split_at_mut(j);
        let v = &mut rest[0];
        for _ in 0..2 {
            for q in done.iter() {
                let proj: C64 = q.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= proj * qi;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for vi in v.iter_mut() {
            *vi /= norm;
        }
    }
    ComplexMatrix::from_fn(n, n, |i, j| columns[j][i])
}

/// A normalized pure state on two qudits, amplitudes in composite-index order.
#[derive(Debug, Clone, PartialEq)]
pub struct PureStateVector {
    d: usize,
    amplitudes: Vec<C64>,
}

impl PureStateVector {
    pub fn new(d: usize, amplitudes: Vec<C64>) -> Result<Self> {
        check_dim(d)?;
        if amplitudes.len() != d * d {
            return Err(Error::BadLength {
                expected: d * d,
                found: amplitudes.len(),
            });
        }
        let norm_sqr: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > UNITARITY_TOL {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self { d, amplitudes })
    }

    pub fn local_dim(&self) -> usize {
        self.d
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    /// The `d x d` matrix `A` with `|Ψ⟩ = Σ A_ij |i⟩⊗|j⟩`.
    pub fn coefficient_matrix(&self) -> CoefficientMatrix {
        CoefficientMatrix::from_amplitudes(self.d, &self.amplitudes)
    }

    pub fn apply(&self, u: &BipartiteOperator) -> Result<PureStateVector> {
        if u.local_dim() != self.d {
            return Err(Error::DimensionMismatch {
                op: "apply",
                left: u.matrix().shape(),
                right: (self.amplitudes.len(), 1),
            });
        }
        let amplitudes = u.matrix().matvec(&self.amplitudes)?;
        Ok(Self {
            d: self.d,
            amplitudes,
        })
    }
}

fn random_unit_vector<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<C64> {
    let mut v: Vec<C64> = (0..d).map(|_| complex_gaussian(rng)).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in &mut v {
        *z /= norm;
    }
    v
}

/// `|ψ1⟩⊗|ψ2⟩` with both factors independent Haar-random unit vectors.
pub fn random_product_state(d: usize, seed: u64) -> Result<PureStateVector> {
    random_product_state_with(d, &mut seeded_rng(seed))
}

pub fn random_product_state_with<R: Rng + ?Sized>(
    d: usize,
    rng: &mut R,
) -> Result<PureStateVector> {
    check_dim(d)?;
    let a = random_unit_vector(d, rng);
    let b = random_unit_vector(d, rng);
    let amplitudes = a
        .iter()
        .flat_map(|x| b.iter().map(move |y| x * y))
        .collect();
    PureStateVector::new(d, amplitudes)
}
