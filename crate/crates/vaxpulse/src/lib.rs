//! File formats, configuration, parallel drivers and the `vaxpulse`
//! command line around [`vaxpulse_core`].

pub mod cli;
pub mod config;
pub mod error;
pub mod model_io;
pub mod pipeline;
pub mod records;
pub mod report;
pub mod resources;
pub mod sweep;

pub use error::{PipelineError, Result};
