//! Supersymmetric sections over polynomial forms and their cochain map to
//! closed differential forms.

pub mod form;
pub mod section;

pub use form::{FormMonomial, PolyForm};
pub use section::{Cocycle, Section, SectionKey, TwoPiPower};
