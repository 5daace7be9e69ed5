//! Result emission: CSV tables, SVG line charts and the experiment config
//! file.

pub mod config;
pub mod csv;
pub mod svg;

pub use config::Config;
pub use csv::{fmt_sci, CsvTable};
pub use svg::{LineChart, Series};
