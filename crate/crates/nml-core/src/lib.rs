//! Exact analysis and design of framed lotteries over q-ary Hamming space.
//!
//! A lottery frame is a triple `(q, n, W)`: outcomes are length-`n` vectors
//! over an alphabet of `q` symbols, every outcome equally likely, and
//! `W ⊆ Q^n` is the winning set. The near-miss index of a frame,
//! `E_x[1 − min_{w∈W} d(x, w)/n]` under the Hamming distance `d`, measures
//! how close a typical outcome looks to a win and can be read as the
//! perceived probability of winning. This crate computes the index
//! exactly (all quantities are rationals with denominators dividing
//! `n·q^n`), transforms frames in ways that provably preserve or improve
//! the index, generates Hamming codes over GF(q), evaluates the
//! closed-form bounds, and runs exact and heuristic searches for minimal
//! covering codes and index-maximal frames.

pub mod bounds;
pub mod constructions;
pub mod error;
pub mod field;
pub mod nm;
pub mod rational;
pub mod search;
pub mod seller;
pub mod space;

pub use error::Error;
pub use rational::Rational;
pub use space::{FrameDocument, Limits, LotteryFrame, OutcomeIndex};
