//! Named geometric constructions built on the algebroid correspondence:
//! idempotent, complex, product, foliation and tangent-bundle algebroids,
//! each returned with the side identities that hold for it.

mod complex;
pub mod fixtures;
mod foliation;
mod idempotent;
mod tangent_bundle;

pub use complex::{
    complex_algebroid, complex_algebroid_eps, complex_projectors, complex_projectors_eps, product_algebroid,
    product_algebroid_eps, product_projectors_eps, ComplexAlgebroid, ComplexProjectors, ProductAlgebroid,
};
pub use foliation::{
    adapted_frame, bigrade, d_components, foliation_connection, reassemble, AdaptedFrame, BigradedForm, DComponents,
    FoliationConnection,
};
pub use idempotent::{
    complement_operator, idempotent_algebroid, idempotent_data, idempotent_tensorial_operator, ComplementOperator,
    IdempotentAlgebroid, IdempotentData, IdempotentOperators,
};
pub use tangent_bundle::{
    check_semispray, connection_algebroid, connection_from_semispray, semispray, tangent_chart, ConnectionAlgebroid,
    SemisprayConnection, TangentChartData,
};
