//! Benchmark instances, bundled fixtures, timing and performance profiles.

pub mod fixtures;
pub mod generator;
pub mod profile;
pub mod timing;

pub use fixtures::{demand_sweep, example_fixture, load_pan_european, pan_european_fixture, ExampleFixture};
pub use generator::{derive_query, generate_instance, generate_suite, suite_seed, GenConfig, GeneratedInstance};
pub use profile::{performance_profile, ProfileData};
pub use timing::{group_means, run_benchmark, BenchInstance, GroupRow, TimingProtocol, TimingRecord};
