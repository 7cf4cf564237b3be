//! Differential forms, vector fields and vector-valued forms on a single
//! coordinate chart, with the Frölicher–Nijenhuis calculus built on top:
//! insertion, Lie derivatives, the RN and FN brackets, Nijenhuis torsion and
//! the splitting of degree-one derivations.

mod alternating;
mod brackets;
mod chart;
mod decompose;
mod field;
mod form;
pub mod matrix;
mod operators;
pub mod random;
mod vvf;

pub use alternating::{increasing, shuffles, sort_with_sign, Alternating, MultiIndex};
pub use brackets::{
    contracted_bracket, contracted_bracket_table, fn_bracket, lie_derivative_along, nijenhuis_torsion, rn_bracket,
};
pub use chart::Chart;
pub use decompose::{decompose_operator, fn_decompose, DerivationDeg1};
pub use field::VectorField;
pub use form::KForm;
pub use operators::{
    graded_commutator, insertion, lie_derivative, Commutator, ExteriorD, FormOperator, Insertion, LieDerivative,
    OperatorSum,
};
pub use vvf::VectorValuedForm;

use crate::error::Result;

/// Exterior derivative, as a free function.
pub fn exterior_d(w: &KForm) -> KForm {
    w.d()
}

/// The complex conjugate `Z̄` of a vector-valued form on a complexified
/// chart.
pub fn conjugate(k: &VectorValuedForm) -> Result<VectorValuedForm> {
    if !k.chart().is_complexified() {
        return Err(crate::error::Error::RealChart);
    }
    Ok(k.conj())
}

/// Moves a real tensor to the complexification of its chart.
pub fn complexify(k: &VectorValuedForm) -> VectorValuedForm {
    k.on_chart(&k.chart().complexified()).expect("real coefficients are admissible on the complexification")
}
