//! Exact supercommutative algebra and the super Euclidean geometry built on it.

pub mod berezin;
pub mod circle;
pub mod derivation;
pub mod element;
pub mod point;

pub use element::{GrassmannElement, Parity, Symbol, Term};
pub use point::{Arity, R11Law, SuperPoint, TimeReversal, TimeSign};
