//! Comb representation of compact ultrametric spaces.
//!
//! A [`Comb`] is a finite list of teeth on a compact interval; the distance
//! between two zeros is the highest tooth strictly between them. This crate
//! evaluates that metric and its completion ([`Face`]), embeds finite
//! ultrametric matrices into combs and back ([`ultrametric`]), samples random
//! combs ([`coalescent`]), extracts the comb of a sphere in a tree coded by a
//! contour function ([`contour`]) and realizes p-adic distances as comb
//! distances ([`padic`]).

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coalescent;
pub mod comb;
pub mod contour;
pub mod error;
pub mod metric;
pub mod numfmt;
pub mod padic;
pub mod rng;
pub mod ultrametric;

pub use comb::{
    build_index, face_distance, Approach, Comb, CombFunction, CombPoint, Face, FacePoint,
    RangeMaxIndex, Tooth,
};
pub use error::{Error, Result};
pub use ultrametric::UltrametricMatrix;
pub use contour::Contour;
