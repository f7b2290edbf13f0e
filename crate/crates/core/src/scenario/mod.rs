//! JSON-configured scenarios, presets and report bundles.

mod config;
mod presets;
mod run;

pub use config::{
    ClassKind, ComponentRef, ConstancyClaim, Expectations, GridSpec, LabelledDirection, ScenarioConfig,
};
pub use presets::{list_presets, preset, Preset, PRESETS};
pub use run::{
    reduced_series, run, ClaimOutcome, ComponentMax, ExpectationOutcome, RunOutput, ScanSummary, ScenarioReport,
    TwoLevelComparison,
};
