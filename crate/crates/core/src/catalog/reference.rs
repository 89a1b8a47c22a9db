//! Reference figures the catalog must reproduce.
//!
//! These are the published crosswalk totals. The integrity checker compares
//! the loaded data against them, so a data edit that silently shifts a count
//! is caught at load time.

use super::{Framework, GapClass, GovernanceDomain, Tier};

use GovernanceDomain::*;
use Tier::*;

/// Obligations per framework, in [`Framework::ALL`] order.
pub const FRAMEWORK_TOTALS: [usize; 3] = [55, 37, 62];

/// Obligations per domain and framework (ISO, EU, NIST).
pub const DOMAIN_TOTALS: [(GovernanceDomain, [usize; 3]); 8] = [
    (D1, [23, 13, 17]),
    (D2, [7, 4, 7]),
    (D3, [5, 4, 5]),
    (D4, [3, 2, 3]),
    (D5, [4, 4, 10]),
    (D6, [5, 5, 8]),
    (D7, [2, 2, 4]),
    (D8, [6, 3, 8]),
];

/// Non-harmonizable obligations: each framework's gaps share one class.
pub const GAP_TOTALS: [(Framework, GapClass, usize); 3] = [
    (Framework::Iso42001, GapClass::OrganizationalProcedure, 3),
    (Framework::EuAiAct, GapClass::RegulatoryWorkflow, 3),
    (Framework::NistRmf, GapClass::ContextSetting, 7),
];

/// Control id, domain and tier activation set.
pub const CONTROL_LAYOUT: [(&str, GovernanceDomain, &[Tier]); 12] = [
    ("UC-01", D1, &[T1Vehicle, T2Edge, T3Cloud]),
    ("UC-02", D1, &[T1Vehicle, T2Edge, T3Cloud]),
    ("UC-03", D2, &[T2Edge, T3Cloud]),
    ("UC-04", D2, &[T2Edge, T3Cloud]),
    ("UC-05", D3, &[T1Vehicle, T2Edge]),
    ("UC-06", D3, &[T1Vehicle, T2Edge]),
    ("UC-07", D6, &[T1Vehicle, T2Edge, T3Cloud]),
    ("UC-08", D4, &[T1Vehicle, T2Edge, T3Cloud]),
    ("UC-09", D5, &[T1Vehicle, T2Edge, T3Cloud]),
    ("UC-10", D5, &[T1Vehicle, T2Edge, T3Cloud]),
    ("UC-11", D7, &[T3Cloud]),
    ("UC-12", D8, &[T1Vehicle, T2Edge, T3Cloud]),
];

/// The control that alone covers a fixed number of obligations per framework.
pub const SOLE_COVERAGE: (&str, [usize; 3]) = ("UC-11", [1, 1, 4]);

pub const ARTIFACT_COUNT: usize = 20;
pub const TRI_FRAMEWORK_ARTIFACTS: usize = 16;
pub const DUAL_FRAMEWORK_ARTIFACTS: usize = 4;

/// Artifacts producible at the edge tier.
pub const EDGE_PRODUCIBLE: usize = 12;
/// Artifacts producible at the cloud tier but not at the edge.
pub const CLOUD_NOT_EDGE: usize = 6;
/// Artifacts producible only at the vehicle tier.
pub const VEHICLE_ONLY: usize = 2;
/// Dual-framework artifacts in each of the three groups above, in that order.
pub const DUAL_FRAMEWORK_BY_GROUP: [usize; 3] = [1, 1, 2];

/// Chain id, name and steps as (alternative tiers, controls).
pub type ChainShape = (
    u32,
    &'static str,
    &'static [(&'static [Tier], &'static [&'static str])],
);

pub const CHAIN_LAYOUT: [ChainShape; 5] = [
    (
        1,
        "Incident response escalation",
        &[
            (&[T2Edge], &["UC-12"]),
            (&[T3Cloud], &["UC-01", "UC-02"]),
            (&[T3Cloud], &["UC-07"]),
            (&[T1Vehicle, T2Edge], &["UC-09"]),
        ],
    ),
    (
        2,
        "Model update governance",
        &[
            (&[T3Cloud], &["UC-09", "UC-11"]),
            (&[T3Cloud], &["UC-07"]),
            (&[T2Edge], &["UC-10"]),
            (&[T1Vehicle], &["UC-09"]),
        ],
    ),
    (
        3,
        "Data quality pipeline",
        &[
            (&[T2Edge], &["UC-03"]),
            (&[T3Cloud], &["UC-04"]),
            (&[T3Cloud], &["UC-01"]),
            (&[T2Edge], &["UC-10"]),
        ],
    ),
    (
        4,
        "Oversight coordination",
        &[
            (&[T1Vehicle], &["UC-05"]),
            (&[T2Edge], &["UC-06"]),
            (&[T3Cloud], &["UC-07", "UC-02"]),
        ],
    ),
    (
        5,
        "Supplier propagation",
        &[
            (&[T3Cloud], &["UC-11"]),
            (&[T3Cloud], &["UC-07"]),
            (&[T2Edge], &["UC-09"]),
            (&[T1Vehicle], &["UC-10"]),
        ],
    ),
];
