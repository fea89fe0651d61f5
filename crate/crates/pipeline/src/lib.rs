//! End-to-end computations on top of `angmom`: the elimination workflow and
//! its comparison with the quadratic ideal, order benchmarks, an on-disk
//! result cache and the identity suite.

pub mod bench;
pub mod cache;
pub mod case;
pub mod error;
pub mod suite;
pub mod workflow;

pub use bench::{benchmark_orders, BenchReport, BenchRow};
pub use cache::{Cache, CacheKey};
pub use case::{Caps, CaseSpec, Mode};
pub use error::{PipelineError, Result};
pub use suite::{verify_suite, Mutation, SuiteOptions, SuiteSummary};
pub use workflow::{compare_ideals, run_case, run_elimination_workflow, CaseReport, CaseRun, Verdict};
