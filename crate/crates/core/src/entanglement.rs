//! Linear-entropy measures: state entanglement, operator entanglement and
//! entangling power.
//!
//! For a unitary `U` on `d ⊗ d` the operator entanglement is
//! `E(U) = 1 - Tr[(R R†)²] / d⁴` with `R` the realigned matrix, and the same
//! expression with the first-factor partial transpose in place of `R` gives
//! `E(S12 U)`. The entangling power combines the two:
//!
//! ```text
//! e_p(U) = (d/(d+1))² [2 - E(S12)] - (Tr[(R R†)²] + Tr[(T T†)²]) / ((d+1)² d²)
//! ```

use rayon::prelude::*;

use crate::densemat::{ComplexMatrix, C64};
use crate::error::{Error, Result};
use crate::operators::{random_product_state_with, stream_rng, swap_op};
use crate::rearrange::BipartiteOperator;

/// Max-abs tolerance on `U†U - I` accepted by the measure functions.
pub const UNITARITY_TOL: f64 = 1e-9;

/// Minimum sample count for [`entangling_power_mc`].
pub const MIN_MC_SAMPLES: usize = 100;

/// `d x d` coefficient matrix `A` of `|Ψ⟩ = Σ A_ij |i⟩⊗|j⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientMatrix(ComplexMatrix);

impl CoefficientMatrix {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::NotSquare {
                rows: mat.rows(),
                cols: mat.cols(),
            });
        }
        Ok(Self(mat))
    }

    pub(crate) fn from_amplitudes(d: usize, amplitudes: &[C64]) -> Self {
        Self(ComplexMatrix::from_raw(d, d, amplitudes.to_vec()))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.frobenius_norm_sqr()
    }
}

/// `Tr[(M M†)²]`, evaluated as the squared Frobenius norm of `M M†`.
fn gram_square_trace(m: &ComplexMatrix) -> f64 {
    m.matmul(&m.adjoint())
        .expect("M and M† are conformable")
        .frobenius_norm_sqr()
}

fn linear_entropy_raw(a: &ComplexMatrix) -> f64 {
    1.0 - gram_square_trace(a)
}

/// Linear entropy `1 - Tr[(A A†)²]` of a normalized pure state.
pub fn state_linear_entropy(a: &CoefficientMatrix) -> Result<f64> {
    let norm_sqr = a.norm_sqr();
    if (norm_sqr - 1.0).abs() > 1e-9 {
        return Err(Error::NotNormalized { norm_sqr });
    }
    Ok(linear_entropy_raw(&a.0))
}

fn check_unitary(u: &BipartiteOperator, tol: f64) -> Result<()> {
    let defect = u.unitarity_defect();
    if defect > tol {
        Err(Error::NotUnitary { defect, tol })
    } else {
        Ok(())
    }
}

fn d4(u: &BipartiteOperator) -> f64 {
    (u.local_dim() as f64).powi(4)
}

fn realigned_trace(u: &BipartiteOperator) -> f64 {
    gram_square_trace(u.realign().matrix())
}

fn transposed_trace(u: &BipartiteOperator) -> f64 {
    gram_square_trace(u.partial_transpose_first().matrix())
}

fn operator_entanglement_raw(u: &BipartiteOperator) -> f64 {
    1.0 - realigned_trace(u) / d4(u)
}

fn swapped_operator_entanglement_raw(u: &BipartiteOperator) -> f64 {
    1.0 - transposed_trace(u) / d4(u)
}

fn swap_entanglement(d: usize) -> f64 {
    operator_entanglement_raw(&swap_op(d).expect("operator has d >= 2"))
}

fn entangling_power_raw(u: &BipartiteOperator) -> f64 {
    let d = u.local_dim() as f64;
    let lead = (d / (d + 1.0)).powi(2) * (2.0 - swap_entanglement(u.local_dim()));
    lead - (realigned_trace(u) + transposed_trace(u)) / ((d + 1.0).powi(2) * d * d)
}

/// Operator entanglement `E(U)` from the realigned matrix.
pub fn operator_entanglement(u: &BipartiteOperator) -> Result<f64> {
    check_unitary(u, UNITARITY_TOL)?;
    Ok(operator_entanglement_raw(u))
}

/// `E(S12 U)` from the first-factor partial transpose, without forming `S12 U`.
pub fn swapped_operator_entanglement(u: &BipartiteOperator) -> Result<f64> {
    check_unitary(u, UNITARITY_TOL)?;
    Ok(swapped_operator_entanglement_raw(u))
}

/// Entangling power from the realignment/partial-transpose closed form.
pub fn entangling_power(u: &BipartiteOperator) -> Result<f64> {
    check_unitary(u, UNITARITY_TOL)?;
    Ok(entangling_power_raw(u))
}

/// Monte-Carlo estimate of the mean linear entropy produced on product states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    /// Sample standard deviation over `sqrt(n_samples)`.
    pub stderr: f64,
    pub n_samples: usize,
    pub seed: u64,
}

/// Averages the linear entropy of `U(|ψ1⟩⊗|ψ2⟩)` over Haar-random factors.
///
/// Sample `i` draws from the ChaCha stream `i` under `seed`, so the estimate
/// does not depend on how the samples are scheduled across threads.
pub fn entangling_power_mc(
    u: &BipartiteOperator,
    n_samples: usize,
    seed: u64,
) -> Result<McEstimate> {
    check_unitary(u, UNITARITY_TOL)?;
    if n_samples < MIN_MC_SAMPLES {
        return Err(Error::TooFewSamples {
            min: MIN_MC_SAMPLES,
            found: n_samples,
        });
    }
    let d = u.local_dim();
    let samples: Vec<f64> = (0..n_samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, i);
            let psi = random_product_state_with(d, &mut rng).expect("d >= 2");
            let out = psi.apply(u).expect("dimensions agree");
            linear_entropy_raw(out.coefficient_matrix().matrix())
        })
        .collect();
    let n = n_samples as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    Ok(McEstimate {
        mean,
        stderr: (var / n).sqrt(),
        n_samples,
        seed,
    })
}

/// All measures for one operator.
#[derive(Debug, Clone, PartialEq)]
pub struct EntanglementReport {
    pub d: usize,
    /// `E(U)`
    pub e_op: f64,
    /// `E(S12 U)`, via the partial transpose.
    pub e_op_swapped: f64,
    /// `E(U S12)`, via direct realignment of `U S12`.
    pub e_op_swapped_right: f64,
    /// `E(S12)`
    pub e_swap: f64,
    /// Entangling power; `None` when the unitarity check failed.
    pub e_power: Option<f64>,
    pub unitarity_ok: bool,
    pub unitarity_defect: f64,
}

pub fn entanglement_report(u: &BipartiteOperator) -> EntanglementReport {
    entanglement_report_with_tol(u, UNITARITY_TOL)
}

/// Like [`entanglement_report`] with a caller-chosen unitarity tolerance.
pub fn entanglement_report_with_tol(u: &BipartiteOperator, tol: f64) -> EntanglementReport {
    let unitarity_defect = u.unitarity_defect();
    let unitarity_ok = unitarity_defect <= tol;
    EntanglementReport {
        d: u.local_dim(),
        e_op: operator_entanglement_raw(u),
        e_op_swapped: swapped_operator_entanglement_raw(u),
        e_op_swapped_right: operator_entanglement_raw(&u.swap_right()),
        e_swap: swap_entanglement(u.local_dim()),
        e_power: unitarity_ok.then(|| entangling_power_raw(u)),
        unitarity_ok,
        unitarity_defect,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{
        controlled_u, exp_swap, haar_unitary, identity_op, max_entangled_projector, ControlledUSpec,
    };
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    fn cnot() -> BipartiteOperator {
        let x = ComplexMatrix::new(2, 2, vec![c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]).unwrap();
        controlled_u(&ControlledUSpec::new(2, vec![ComplexMatrix::identity(2), x]).unwrap())
    }

    #[test]
    fn state_entropy_examples() {
        let mut e11 = ComplexMatrix::zeros(3, 3).into_vec();
        e11[0] = c(1., 0.);
        let a = CoefficientMatrix::new(ComplexMatrix::new(3, 3, e11).unwrap()).unwrap();
        assert_eq!(state_linear_entropy(&a).unwrap(), 0.0);

        for d in 2..=5 {
            let a = ComplexMatrix::identity(d).scale(c(1.0 / (d as f64).sqrt(), 0.));
            let e = state_linear_entropy(&CoefficientMatrix::new(a).unwrap()).unwrap();
            close(e, 1.0 - 1.0 / d as f64, 1e-14);
        }

        let diag = ComplexMatrix::new(
            2,
            2,
            vec![
                c(0.8f64.sqrt(), 0.),
                c(0., 0.),
                c(0., 0.),
                c(0.2f64.sqrt(), 0.),
            ],
        )
        .unwrap();
        let e = state_linear_entropy(&CoefficientMatrix::new(diag).unwrap()).unwrap();
        close(e, 0.32, 1e-14);
    }

    #[test]
    fn state_entropy_rejects_unnormalized() {
        let a = CoefficientMatrix::new(ComplexMatrix::identity(2)).unwrap();
        assert_eq!(
            state_linear_entropy(&a),
            Err(Error::NotNormalized { norm_sqr: 2.0 })
        );
        assert!(CoefficientMatrix::new(ComplexMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn operator_entanglement_examples() {
        for d in 2..=5 {
            let dd = d as f64;
            close(
                operator_entanglement(&swap_op(d).unwrap()).unwrap(),
                1. - 1. / (dd * dd),
                1e-12,
            );
            close(
                operator_entanglement(&identity_op(d).unwrap()).unwrap(),
                0.0,
                1e-12,
            );
        }
        let v = exp_swap(3, PI / 6.0).unwrap();
        close(operator_entanglement(&v).unwrap(), 7.0 / 18.0, 1e-12);
    }

    #[test]
    fn non_unitary_rejected() {
        let p = max_entangled_projector(2).unwrap();
        assert!(matches!(
            operator_entanglement(&p),
            Err(Error::NotUnitary { .. })
        ));
        assert!(matches!(
            swapped_operator_entanglement(&p),
            Err(Error::NotUnitary { .. })
        ));
        assert!(matches!(
            entangling_power(&p),
            Err(Error::NotUnitary { .. })
        ));
        assert!(matches!(
            entangling_power_mc(&p, 1000, 1),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn swapped_entanglement_examples() {
        for d in 2..=4 {
            let dd = d as f64;
            let e = swapped_operator_entanglement(&identity_op(d).unwrap()).unwrap();
            close(e, 1. - 1. / (dd * dd), 1e-12);
        }
        let v = exp_swap(2, PI / 3.0).unwrap();
        close(
            swapped_operator_entanglement(&v).unwrap(),
            21.0 / 64.0,
            1e-12,
        );
        let cu = controlled_u(&ControlledUSpec::random(3, 8).unwrap());
        close(
            swapped_operator_entanglement(&cu).unwrap(),
            8.0 / 9.0,
            1e-12,
        );
    }

    #[test]
    fn entangling_power_examples() {
        for d in 2..=5 {
            close(entangling_power(&swap_op(d).unwrap()).unwrap(), 0.0, 1e-12);
        }
        close(
            entangling_power(&exp_swap(2, PI / 4.0).unwrap()).unwrap(),
            1.0 / 6.0,
            1e-12,
        );
        close(operator_entanglement(&cnot()).unwrap(), 0.5, 1e-12);
        close(entangling_power(&cnot()).unwrap(), 2.0 / 9.0, 1e-12);
    }

    #[test]
    fn mc_rejects_too_few_samples() {
        assert_eq!(
            entangling_power_mc(&identity_op(2).unwrap(), 99, 0),
            Err(Error::TooFewSamples {
                min: 100,
                found: 99
            })
        );
    }

    #[test]
    fn mc_vanishes_on_identity_and_swap() {
        // Product states stay product; only rounding separates the mean from 0.
        for d in 2..=3 {
            for u in [identity_op(d).unwrap(), swap_op(d).unwrap()] {
                let est = entangling_power_mc(&u, 2000, 17).unwrap();
                assert!(est.mean.abs() <= 1e-14, "mean {}", est.mean);
                assert!(est.stderr <= 1e-14);
            }
        }
    }

    #[test]
    fn mc_sqrt_swap() {
        let est = entangling_power_mc(&exp_swap(2, PI / 4.0).unwrap(), 50_000, 1).unwrap();
        assert!((est.mean - 1.0 / 6.0).abs() <= 5.0 * est.stderr, "{est:?}");
        assert_eq!(
            est,
            entangling_power_mc(&exp_swap(2, PI / 4.0).unwrap(), 50_000, 1).unwrap()
        );
    }

    #[test]
    fn report_examples() {
        let r = entanglement_report(&swap_op(2).unwrap());
        close(r.e_op, 0.75, 1e-12);
        close(r.e_op_swapped, 0.0, 1e-12);
        close(r.e_swap, 0.75, 1e-12);
        close(r.e_power.unwrap(), 0.0, 1e-12);
        assert!(r.unitarity_ok);

        let r = entanglement_report(&identity_op(3).unwrap());
        close(r.e_op, 0.0, 1e-12);
        close(r.e_op_swapped, 8.0 / 9.0, 1e-12);
        close(r.e_power.unwrap(), 0.0, 1e-12);

        let r = entanglement_report(&exp_swap(2, PI / 4.0).unwrap());
        close(r.e_op, 9.0 / 16.0, 1e-12);
        close(r.e_op_swapped, 9.0 / 16.0, 1e-12);
        close(r.e_op_swapped_right, 9.0 / 16.0, 1e-12);
        close(r.e_power.unwrap(), 1.0 / 6.0, 1e-12);
    }

    #[test]
    fn report_flags_non_unitary() {
        let r = entanglement_report(&max_entangled_projector(3).unwrap());
        assert!(!r.unitarity_ok);
        assert!(r.e_power.is_none());
        assert!(r.unitarity_defect > 0.5);
    }

    #[test]
    fn report_routes_agree_on_random_unitary() {
        for d in 2..=3 {
            let u = BipartiteOperator::new(d, haar_unitary(d * d, 21)).unwrap();
            let r = entanglement_report(&u);
            let dd = d as f64;
            let two_term = (dd / (dd + 1.)).powi(2) * (r.e_op + r.e_op_swapped - r.e_swap);
            close(r.e_power.unwrap(), two_term, 1e-12);
            close(r.e_op_swapped, r.e_op_swapped_right, 1e-12);
        }
    }
}
