pub mod analysis;
pub mod cli;
pub mod devices;
pub mod fuse;
pub mod geo;
pub mod ingest;
pub mod mission;
pub mod sim;
pub mod time;
