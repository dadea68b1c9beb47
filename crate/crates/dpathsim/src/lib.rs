//! Discrete-event simulator of per-packet processing delay in the Open
//! vSwitch kernel datapath.
//!
//! A packet traversing the OVS fast path is charged four delay components:
//! fetching per-CPU datapath counters, flow-table lookup, an upcall to
//! `ovs-vswitchd` when no cached flow rule matches, and the statistics
//! update that follows action execution. This crate models each component
//! as an empirical distribution (ECDF) built from measured or synthetic
//! delay traces, replays packet workloads against a flow-cache state
//! machine, and reports per-stage and total delay distributions.
//!
//! The crate is organized around the pipeline:
//!
//! * [`empirical`] — build, evaluate, invert, sample, and compare ECDFs.
//! * [`datapath`] — flow cache with LRU eviction and the per-packet
//!   stage-charging state machine.
//! * [`scenario`] — workload generation, simulation runs, reference
//!   datasets, and scenario comparison.
//! * [`traceio`] — text formats: delay traces, ECDF/record/comparison
//!   CSVs, and the stage-delay model container.
//!
//! All randomness is drawn from seeded ChaCha streams; identical
//! configuration and seed reproduce identical results across processes
//! and platforms.

pub mod datapath;
pub mod empirical;
mod error;
pub mod scenario;
pub mod traceio;

pub use datapath::{
    Datapath, EvictionPolicy, FlowCache, FlowKey, FlowStats, PacketRecord, Stage, StageDelayModel,
};
pub use empirical::{
    ks_distance, relative_frequencies, DelaySample, DistributionSummary, EmpiricalDistribution,
};
pub use error::{Error, Result};
pub use scenario::{
    build_reference_models, compare_distributions, compare_scenarios, generate_arrivals,
    reference_configs, resolve_model_source, run_simulation, run_simulation_with_model,
    ArrivalEvent, ArrivalProcess, ComparisonRow, ComparisonTable, DataRateSpec, DelayDistributions,
    PacketSizeSpec, PerStage, Platform, ScenarioConfig, SimulationReport, SummaryDelta,
};
pub use traceio::{TraceFile, TraceRow};
