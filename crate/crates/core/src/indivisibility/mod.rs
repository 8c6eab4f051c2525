//! Finite, checkable counterparts of indivisibility statements for
//! Hecke eigenforms: exceptional primes, fundamental-discriminant
//! enumeration under local conditions, valuation scans, and the descent
//! from an arbitrary coprime discriminant to a fundamental one.

mod conditions;
mod enumerate;
mod exceptional;
mod reduce;
mod scan;

pub use conditions::{LocalCondition, LocalConditions};
pub use enumerate::{enumerate_fundamentals, FundamentalEnumerator};
pub use exceptional::{exceptional_intersection, exceptional_set};
pub use reduce::{
    hecke_relation_check, reduce_to_fundamental, FundamentalReduction, RelationEntry,
    RelationReport,
};
pub use scan::{
    scan, EigenData, ExclusionClause, ScanCheckpoint, ScanHit, ScanOptions, ScanReport, ScanStatus,
    CHECKPOINT_INTERVAL,
};
