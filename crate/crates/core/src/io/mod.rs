//! CSV series, JSON spectrum dumps and the on-disk result cache.

mod cache;
mod dump;
mod table;
#[cfg(test)]
mod tests;

pub use cache::{Cache, CACHE_DIR_ENV, FORMAT_VERSION};
pub use dump::{DumpEntry, SpectrumDump};
pub use table::{identity_table, length_table, trend_table, IdentityRow, Table, ToTable};
