pub mod nat_terms;
pub mod surface_terms;
