//! Monomial ideals in polynomial rings over prime fields: ordinary and
//! symbolic powers, fiber products, irreducible decompositions, Betti
//! tables, depth and regularity, together with a formula-check harness.

pub mod decompose;
pub mod error;
pub mod fiber;
pub mod ideal;
pub mod lang;
pub mod monomial;
pub mod par;
pub mod resolution;
pub mod ring;
pub mod symbolic;
pub mod verify;

pub use error::{Error, Result};
pub use ideal::MonomialIdeal;
pub use monomial::{Exp, Monomial};
pub use resolution::FieldChar;
pub use ring::Ring;
