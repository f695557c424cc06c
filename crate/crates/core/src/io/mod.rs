//! Matrix Market ingestion and partition reports.

mod matrix_market;
mod report;

pub use matrix_market::{parse_matrix_market, read_matrix_market, write_matrix_market, ReadOptions};
pub use report::{read_report, write_report, PartitionReport, SparsifyRecord, Target, REPORT_SCHEMA};
