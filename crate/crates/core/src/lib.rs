pub mod arithmetic;
pub mod bessel;
pub mod error;
pub mod geodesics;
pub mod io;
pub mod lattice_count;
pub mod lie_data;
pub mod numeric;
pub mod spectrum;

pub use error::{Error, Result};
