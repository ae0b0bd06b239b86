//! Minimal free resolutions, Koszul certificates and Ext algebras over
//! artinian local rings whose maximal ideal cubes to zero.

pub mod algebra;
pub mod error;
pub mod exactla;
pub mod extalg;
pub mod field;
pub mod koszul;
pub mod modrep;
pub mod resolution;
pub mod series;
pub mod suite;

pub use error::{Error, Result};
pub use field::{Elem, Field};
