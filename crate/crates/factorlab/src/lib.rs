//! Constructive solvers and exhaustive audit harness for graph factors and
//! toughness conditions: perfect matchings and factor-criticality,
//! {K2, cycle}-factors, parity (g,f)-factors via the Lovász criterion with a
//! gadget reduction to perfect matching, degree-set (H and H_f) factors and
//! pendant criticality, exact omega(G-S) cut checkers, and corpus audits
//! that verify both directions of each characterization on every small
//! graph, emitting independently checkable certificates.

pub mod audit;
pub mod certify;
pub mod error;
pub mod graph;
pub mod matching;
pub mod parity;
pub mod set_factor;
pub mod toughness;

pub use audit::{
    audit_classic, audit_l1, audit_t3, audit_t4, audit_t5, generate_connected, parse_checks,
    critical_failure_certificate, failing_h_certificate, run_corpus, AuditReport, CorpusOptions,
    CorpusSource, CorpusSummary, FPolicy, TheoremTag,
};
pub use certify::{revalidate, Certificate, CutMeasure, FactorContext};
pub use error::{Error, Result};
pub use graph::{
    attach_pendant, component_stats, delete_vertices, delete_vertices_with_map, edge_cut_count,
    encode_graph6, parse_edge_list, parse_graph6, ComponentStats, Graph, VertexSet,
};
pub use matching::{
    has_one_factor, is_factor_critical, k2cn_factor_search, k2cn_from_critical, max_matching,
    tutte_witness, FactorSubgraph, Matching, TutteVerdict,
};
pub use parity::{
    eta, lemma1_residue, parity_feasible_oracle, q_count, solve_parity_factor, EtaBreakdown,
    ParityIntervalSpec, ParityPair, ParityVerdict,
};
pub use set_factor::{
    counterexample_h, enumerate_h, is_h_critical, normalize_h, solve_h_factor, CriticalityReport,
    HAssignment, Side,
};
pub use toughness::{classify, condition_check, is_1_tough, Classification, ConditionVerdict};
