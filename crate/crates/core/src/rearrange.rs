//! Two-qudit operators and the index rearrangements acting on them.
//!
//! Basis ket `|i⟩⊗|j⟩` (zero-based) sits at flat index `i * d + j`. With that
//! convention an entry of a `d² x d²` operator is addressed as `((i, j), (k, l))`
//! and every rearrangement below is a pure entry move: no arithmetic touches
//! the values, so results are bit-exact permutations of the input.

use crate::densemat::{ComplexMatrix, C64};
use crate::error::{Error, Result};

/// Flat index of `|i⟩⊗|j⟩` in a `d ⊗ d` system.
pub fn composite_index(i: usize, j: usize, d: usize) -> Result<usize> {
    for idx in [i, j] {
        if idx >= d {
            return Err(Error::IndexOutOfRange { index: idx, dim: d });
        }
    }
    Ok(i * d + j)
}

/// A `d² x d²` matrix acting on two qudits of local dimension `d`.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteOperator {
    d: usize,
    mat: ComplexMatrix,
}

impl BipartiteOperator {
    pub fn new(d: usize, mat: ComplexMatrix) -> Result<Self> {
        if d < 2 {
            return Err(Error::LocalDimension(d));
        }
        let n = d * d;
        if mat.shape() != (n, n) {
            return Err(Error::DimensionMismatch {
                op: "bipartite operator",
                left: (n, n),
                right: mat.shape(),
            });
        }
        Ok(Self { d, mat })
    }

    /// Wraps a square matrix, inferring `d` from its side length.
    pub fn from_matrix(mat: ComplexMatrix) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::NotSquare {
                rows: mat.rows(),
                cols: mat.cols(),
            });
        }
        let n = mat.rows();
        let d = (n as f64).sqrt().round() as usize;
        if d * d != n {
            return Err(Error::DimensionMismatch {
                op: "bipartite operator",
                left: (d * d, d * d),
                right: mat.shape(),
            });
        }
        Self::new(d, mat)
    }

    pub(crate) fn from_parts(d: usize, mat: ComplexMatrix) -> Self {
        debug_assert_eq!(mat.shape(), (d * d, d * d));
        Self { d, mat }
    }

    #[inline]
    pub fn local_dim(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    /// Entry `⟨ij|U|kl⟩`.
    #[inline]
    pub fn entry(&self, i: usize, j: usize, k: usize, l: usize) -> C64 {
        self.mat.get(i * self.d + j, k * self.d + l)
    }

    /// Builds a new operator of the same dimension whose entry at
    /// `((i, j), (k, l))` is read from `self` at the position `source` returns.
    fn rearranged(
        &self,
        source: impl Fn(usize, usize, usize, usize) -> (usize, usize),
    ) -> BipartiteOperator {
        let d = self.d;
        let n = d * d;
        let src = self.mat.as_slice();
        let mut out = Vec::with_capacity(n * n);
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        let (r, c) = source(i, j, k, l);
                        out.push(src[r * n + c]);
                    }
                }
            }
        }
        Self::from_parts(d, ComplexMatrix::from_raw(n, n, out))
    }

    /// Realignment: `(U^R)_{ij,kl} = U_{ik,jl}`.
    pub fn realign(&self) -> BipartiteOperator {
        let d = self.d;
        self.rearranged(|i, j, k, l| (i * d + k, j * d + l))
    }

    /// Partial transpose on the first factor: `(U^{T1})_{ij,kl} = U_{kj,il}`.
    pub fn partial_transpose_first(&self) -> BipartiteOperator {
        let d = self.d;
        self.rearranged(|i, j, k, l| (k * d + j, i * d + l))
    }

    /// Partial transpose on the second factor: `(U^{T2})_{ij,kl} = U_{il,kj}`.
    pub fn partial_transpose_second(&self) -> BipartiteOperator {
        let d = self.d;
        self.rearranged(|i, j, k, l| (i * d + l, k * d + j))
    }

    /// `S12 · U`, computed as a row permutation.
    pub fn swap_left(&self) -> BipartiteOperator {
        let d = self.d;
        self.rearranged(|i, j, k, l| (j * d + i, k * d + l))
    }

    /// `U · S12`, computed as a column permutation.
    pub fn swap_right(&self) -> BipartiteOperator {
        let d = self.d;
        self.rearranged(|i, j, k, l| (i * d + j, l * d + k))
    }

    pub fn matmul(&self, other: &BipartiteOperator) -> Result<BipartiteOperator> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch {
                op: "bipartite matmul",
                left: self.mat.shape(),
                right: other.mat.shape(),
            });
        }
        Ok(Self::from_parts(self.d, self.mat.matmul(&other.mat)?))
    }

    pub fn adjoint(&self) -> BipartiteOperator {
        Self::from_parts(self.d, self.mat.adjoint())
    }

    pub fn scale(&self, factor: C64) -> BipartiteOperator {
        Self::from_parts(self.d, self.mat.scale(factor))
    }

    pub fn unitarity_defect(&self) -> f64 {
        self.mat.unitarity_defect()
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.mat.is_unitary(tol)
    }
}

pub fn realign(u: &BipartiteOperator) -> BipartiteOperator {
    u.realign()
}

pub fn partial_transpose_first(u: &BipartiteOperator) -> BipartiteOperator {
    u.partial_transpose_first()
}

pub fn partial_transpose_second(u: &BipartiteOperator) -> BipartiteOperator {
    u.partial_transpose_second()
}

pub fn swap_left(u: &BipartiteOperator) -> BipartiteOperator {
    u.swap_left()
}

pub fn swap_right(u: &BipartiteOperator) -> BipartiteOperator {
    u.swap_right()
}
