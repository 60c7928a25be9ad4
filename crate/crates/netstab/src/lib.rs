//! File formats and run-configuration plumbing for the `netstab` binary:
//! INI-style configs, edge-list graphs, CSV writers with matching readers,
//! stability reports and SVG heatmaps. All numeric text I/O uses `.` as the
//! decimal point, `,` as the CSV separator and LF line endings.

pub mod config;
pub mod csvio;
pub mod edgelist;
pub mod report;
pub mod svg;
