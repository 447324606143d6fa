//! Generalized quantum axes `Σ_J a_J |J M⟩`, rotationally invariant POVMs
//! described by coefficient matrices `ξ`, and the analytic two-spin `M = 0`
//! solution.

mod axis;
mod kernel;
mod two_spin;
mod xi;

pub use axis::GeneralAxis;
pub use kernel::{delta_general, outcome_prob_general, v_vector_general, v_vectors_general, MeritKernel};
pub use two_spin::{
    classical_two_spin_coefficients, convexity_check, delta_two_spin, delta_two_spin_classical, delta_two_spin_max,
    delta_two_spin_max_classical, golden_section_max, two_spin_argmax, two_spin_coefficients, two_spin_max_closed_form,
    two_spin_merit, ConvexityVerdict, TwoSpinOptimum, TwoSpinSolution,
};
pub use xi::{couples, outcome_range, random_xi_family, validate_xi, XiDiagnostics, XiElement, XiFamily, XI_TOLERANCE};
