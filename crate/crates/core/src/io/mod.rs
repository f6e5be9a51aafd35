//! Graph files, CSV output and the command implementations used by the binary.

pub mod commands;
pub mod csv;
pub mod graph_file;
pub mod report;

pub use commands::{cmd_nodal, cmd_spectrum, cmd_sweep, cmd_verify, cmd_weylgap, cmd_zeta, CommandOptions, Suite};
pub use csv::{format_sig, CsvTable};
pub use graph_file::{parse_graph_file, serialize_graph, GraphFile};
pub use report::{Check, ReportDocument};
