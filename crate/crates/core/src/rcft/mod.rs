//! Theory-agnostic modular data and the generic operations on it.

mod data;
mod fusion;
mod relations;

pub use data::{Label, ModularData, ModularDataDoc, TheoryId};
pub use fusion::{
    qdim_intervals, qdim_product_bounds, quantum_dims, quantum_dims_with_precision,
    simple_currents, simple_currents_with, verlinde_entry_exact, verlinde_fusion,
    verlinde_fusion_with, FusionTensor, QuantumDim,
};
pub(crate) use relations::slot_matrix;
pub use relations::{
    check_modular_relations, check_modular_relations_with, is_self_conjugate, Relation,
    RelationFailure, RelationReport,
};
