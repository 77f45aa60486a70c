//! Dynamics of rational maps on the projective line over `F_q(t)`.

pub mod algebra;
pub mod error;

pub use error::{Error, Result};
pub mod constructions;
pub mod dynamics;
pub mod maps;
pub mod projective;
pub mod parse;
pub mod verify;
