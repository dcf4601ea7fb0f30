//! The GroupRR protocol steps as simulated message exchanges.

mod comm;
mod css;
mod degree;
mod publication;
mod publish;

pub use comm::{bits_per_index, CommLedger};
pub use css::{central_server_sampling, Css, CssView};
pub use degree::{degree_sharing, DegreeReport};
pub use publication::{edge_estimate, run_grouprr, GroupRrConfig, Publication};
pub use publish::{
    expected_upload_ones, group_rr_step, group_rr_user, read_lists, write_lists, ObfuscatedList,
};
