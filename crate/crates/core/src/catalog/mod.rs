//! File formats, table reports and benchmarks built on the search engine.

pub mod bench;
pub mod checkpoint;
mod report;
mod result_file;

pub use checkpoint::{
    enumerate_checkpointed, frontier_key, parse_checkpoint, FrontierKey, ENGINE_VERSION,
};
pub use report::{build_table, compute_report, format_table, TableEngine};
pub use result_file::{parse_results, render_results, write_results, ResultFile};
