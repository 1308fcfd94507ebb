pub mod cli;
pub mod corpus;
pub mod equivariant;
pub mod exactalg;
pub mod group_action;
pub mod pd_algebra;
pub mod report;
pub mod simplicial;
pub mod theorems;
