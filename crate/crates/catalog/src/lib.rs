//! Group data: the group file format, shipped subgroup catalogs for
//! `Sₙ`/`Aₙ`, small sporadic groups, the extensions of `A6` and a few linear
//! groups, plus the append-only results ledger.

pub mod format;
pub mod ledger;
pub mod linear;
pub mod sporadic;
pub mod symalt;

pub use format::{
    parse_group_file, parse_group_records, write_group_file, GroupRecord, Shape, Tag,
};
pub use ledger::{
    ledger_append, ledger_query, ledger_read, ledger_replay, LedgerError, LedgerRecord,
    ReplayReport,
};
pub use linear::{linear_group, LinearGroup, LinearKind};
pub use sporadic::{a6_extension_catalog, sporadic_catalog, Catalog, LoadedCatalog};
pub use symalt::{symalt_maximal_catalog, Filter};
