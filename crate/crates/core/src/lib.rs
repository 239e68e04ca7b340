//! Logarithmic derivation modules of central hyperplane arrangements over Q.

pub mod arrangement;
pub mod exactmath;
pub mod graphic;
pub mod hypersolvable;
pub mod lattice;
pub mod logder;
pub mod restriction;
