//! Operator entanglement and entangling power of two-qudit unitaries.
//!
//! The measures are evaluated through two index rearrangements of the
//! `d² x d²` operator matrix: realignment, which exposes the operator Schmidt
//! coefficients of `U`, and the first-factor partial transpose, which does the
//! same for `S12 U`. A Monte-Carlo average over random product states serves
//! as an independent check of the closed form.

pub mod cli;
pub mod densemat;
pub mod entanglement;
pub mod error;
pub mod operators;
pub mod rearrange;

pub use densemat::{ComplexMatrix, C64};
pub use entanglement::{
    entanglement_report, entanglement_report_with_tol, entangling_power, entangling_power_mc,
    operator_entanglement, state_linear_entropy, swapped_operator_entanglement, CoefficientMatrix,
    EntanglementReport, McEstimate, UNITARITY_TOL,
};
pub use error::{Error, Result};
pub use operators::{
    controlled_u, exp_swap, haar_unitary, identity_op, local_product, max_entangled_projector,
    random_product_state, swap_op, ControlledUSpec, PureStateVector,
};
pub use rearrange::{composite_index, BipartiteOperator};
