//! Pure braids, the k-free braid groups `G_n^k`, parity homomorphisms into
//! free products of `Z_2`, and the lower bounds on trisecant counts and
//! unknotting numbers that they give.

pub mod certificate;
pub mod error;
pub mod geometry;
pub mod gnk;
pub mod parity;
pub mod pure_braid;
pub mod unknotting;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
