pub mod birational;
pub mod certify;
pub mod composition;
pub mod error;
pub mod exactmath;
pub mod incidence;
pub mod invariants;
pub mod jordan;
pub mod report;
pub mod suite;
