pub mod algebra;
pub mod cli;
pub mod darboux;
pub mod error;
pub mod invariants;
pub mod painleve;
pub mod polysolve;
pub mod validate;
pub mod vectorfield;
pub mod weierstrass;

pub use error::{Error, Result};
