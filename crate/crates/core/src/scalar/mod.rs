//! Exact arithmetic kernel: multivariate rational functions over the
//! Gaussian rationals ℚ(i).
//!
//! Every value is kept in canonical form (coprime numerator and
//! denominator, monic denominator in graded-lex order), so deciding an
//! identity is a structural comparison.

mod expr;
mod gaussian;
pub mod gcd;
mod parse;
mod point;
mod poly;

pub use expr::ScalarExpr;
pub use gaussian::GaussianRational;
pub use parse::parse_expr;
pub(crate) use parse::parse_with;
pub use point::{eval_at, monomials_up_to, random_point, random_poly, ChartPoint};
pub use poly::{grlex, Exponents, Poly};

use crate::error::Result;

/// The four field operations, for callers that dispatch on an operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn arith(a: &ScalarExpr, b: &ScalarExpr, op: ArithOp) -> Result<ScalarExpr> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

/// Partial derivative by variable name.
pub fn partial<S: AsRef<str>>(e: &ScalarExpr, var: &str, vars: &[S]) -> Result<ScalarExpr> {
    let idx = vars
        .iter()
        .position(|v| v.as_ref() == var)
        .ok_or_else(|| crate::error::Error::UnknownVariable { name: var.to_string(), offset: 0 })?;
    Ok(e.partial(idx))
}
