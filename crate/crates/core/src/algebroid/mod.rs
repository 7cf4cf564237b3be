//! The correspondence between Lie algebroids and degree-one cohomology
//! operators: building the de Rham operator of an algebroid, recovering an
//! algebroid from a derivation with `D² = 0`, and checking every axiom.

mod axioms;
mod bundle;
mod cohomology;
mod connection;
mod invertible;
mod tangent;

pub use axioms::{check_axioms, AxiomReport};
pub use bundle::{bundle_de_rham, bundle_koszul, check_bundle_axioms, BundleAlgebroid, BundleReport, EForm, ESection};
pub use cohomology::{algebroid_from_derivation, check_cohomology, CohomologyReport};
pub use connection::{
    check_connection_decomposition, delta_torsion, nabla_k, nabla_k_direct, symmetric_torsion_crosscheck,
    LinearConnection,
};
pub use invertible::{inverse_bracket_residuals, invertible_algebroid, verify_trivial_isomorphism};
pub use tangent::{algebroid_bracket, derivation_from_algebroid, koszul_differential, TangentAlgebroid};

use crate::calculus::{Chart, KForm, VectorField, VectorValuedForm};

/// Anything a residual can be: it passes exactly when it is zero.
pub trait Vanishes {
    fn vanishes(&self) -> bool;

    /// Nonzero components as `(basis label, rendered coefficient)` pairs,
    /// for instance `("∂x", "1")` or `("dz∧dw ⊗ ∂x", "-1")`.
    fn components(&self) -> Vec<(String, String)>;
}

impl Vanishes for VectorField {
    fn vanishes(&self) -> bool {
        self.is_zero()
    }

    fn components(&self) -> Vec<(String, String)> {
        let chart = self.chart();
        (0..chart.dim())
            .filter(|&j| !self.component(j).is_zero())
            .map(|j| (chart.basis_label(j), chart.render(self.component(j))))
            .collect()
    }
}

fn form_label(chart: &Chart, idx: &[usize]) -> String {
    if idx.is_empty() {
        return "1".to_string();
    }
    idx.iter().map(|&i| format!("d{}", chart.names()[i])).collect::<Vec<_>>().join("∧")
}

impl Vanishes for KForm {
    fn vanishes(&self) -> bool {
        self.is_zero()
    }

    fn components(&self) -> Vec<(String, String)> {
        self.terms().map(|(idx, c)| (form_label(self.chart(), idx), self.chart().render(c))).collect()
    }
}

impl Vanishes for VectorValuedForm {
    fn vanishes(&self) -> bool {
        self.is_zero()
    }

    fn components(&self) -> Vec<(String, String)> {
        let chart = self.chart();
        let mut out = Vec::new();
        for (idx, v) in self.nonzero_values() {
            for (basis, c) in Vanishes::components(&v) {
                let label = if idx.is_empty() { basis } else { format!("{} ⊗ {basis}", form_label(chart, &idx)) };
                out.push((label, c));
            }
        }
        out
    }
}

/// One evaluated identity: which identity (`slot`), on which arguments, and
/// the canonical value that must vanish.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Residual<T> {
    pub slot: String,
    pub args: Vec<String>,
    pub value: T,
}

impl<T: Vanishes> Residual<T> {
    pub fn new(slot: impl Into<String>, args: Vec<String>, value: T) -> Self {
        Self { slot: slot.into(), args, value }
    }

    pub fn vanishes(&self) -> bool {
        self.value.vanishes()
    }
}

pub fn all_vanish<T: Vanishes>(rs: &[Residual<T>]) -> bool {
    rs.iter().all(Residual::vanishes)
}
