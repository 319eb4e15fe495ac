//! Campaigns, searches and the `metric-gap` command line built on
//! `metric_gap_core`.

pub mod campaign;
pub mod cli;
pub mod corpus;
pub mod input;
pub mod search;
pub mod worked;

pub use campaign::{run_campaign, CampaignOptions, CampaignReport, GapCache};
pub use corpus::{CorpusSpec, NamedGraph};
pub use input::parse_graph;
