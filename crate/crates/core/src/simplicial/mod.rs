//! Finite simplicial complexes, their cohomology and cup products.

mod cochain;
mod complex;
mod ring;

pub use cochain::{
    cohomology, cohomology_with, integral_cohomology, CellComplex, CochainComplex, CohomologyBasis, GradedBetti,
};
pub use complex::{cyclic_local_order, SimplicialComplex};
pub use ring::{cup_cochains, cup_pairing, pd_check, CohomologyRing, PdReport};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("facet list is empty")]
    NoFacets,
    #[error("facet has no vertices")]
    EmptyFacet,
    #[error("facet references unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex `{0}` declared twice")]
    DuplicateVertex(String),
    #[error("complex is not connected: {components} components")]
    Disconnected { components: usize },
}
