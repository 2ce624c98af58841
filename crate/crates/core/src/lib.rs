//! Exact symbolic engine for W-algebras of type A.
//!
//! The crate is organised bottom-up: exact scalars ([`scalar`]), finite Lie
//! data ([`lie`]), the lambda-bracket engine ([`vertex`]) and the concrete
//! presentations built on it ([`free_fields`]), the BRST reduction
//! ([`brst`]) and explicit generators ([`miura`]), and the surrounding
//! structure checks ([`finite_brst`], [`zhu`], [`jets`], [`characters`]).

#![allow(clippy::needless_range_loop)]

pub mod brst;
pub mod characters;
pub mod error;
pub mod finite_brst;
pub mod free_fields;
pub mod jets;
pub mod lie;
pub mod linalg;
pub mod miura;
pub mod poly;
pub mod scalar;
pub mod vertex;
pub mod zhu;

pub use error::{Error, Result};
pub use scalar::{QSeries, Rat, Scalar};
