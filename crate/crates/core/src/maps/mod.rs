//! Rational maps over `F_q(t)`, their reductions, and interpolation over
//! finite fields.

pub mod conjugacy;
pub mod mobius;
pub mod rational;
pub mod residue;

pub use conjugacy::{invert_map, invert_point, detect_constant_field_conjugacy, ConjugacyOutcome, ConjugacyWitness};
pub use mobius::{conjugate, Mobius};
pub use rational::{bareiss_det, Form, RationalMap};
pub use residue::{rational_interpolate, reduce_map, ResidueMap};
