//! Finite-field arithmetic and the Möbius-twisted transform
//! `R_{σ,t} = P_{σ⁻¹} ∘ S_t ∘ P_σ` for building families of irreducible,
//! completely normal polynomials over `F_q`.
//!
//! Field contexts ([`PrimeField`], [`ExtField`]) own the arithmetic;
//! elements are plain values. Polynomials ([`Poly`]) carry their field.
//! Every fast decision procedure in [`criteria`] has a brute-force
//! counterpart in [`verify`].

pub mod criteria;
pub mod error;
pub mod exec;
pub mod generator;
pub mod gf;
pub mod moebius;
pub mod num;
pub mod poly;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Exec;
pub use gf::{ExtField, Field, PrimeField};
pub use moebius::{eta, p_sigma, r_transform, Mat2, ProjPoint};
pub use poly::Poly;
