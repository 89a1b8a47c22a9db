//! Per-framework coverage.

use serde::{Deserialize, Serialize};

use super::ActivationReport;
use crate::catalog::{Framework, KnowledgeBase};
use crate::fixed::Fixed1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameworkCoverage {
    pub framework: Framework,
    pub name: String,
    pub scoped_total: usize,
    pub covered: usize,
    pub coverage_pct: Fixed1,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageReport {
    /// In ISO, EU, NIST order.
    pub frameworks: Vec<FrameworkCoverage>,
    /// Unweighted mean of the three exact ratios.
    #[serde(rename = "average")]
    pub average_pct: Fixed1,
}

impl CoverageReport {
    pub fn get(&self, framework: Framework) -> Option<&FrameworkCoverage> {
        self.frameworks.iter().find(|f| f.framework == framework)
    }
}

/// An obligation counts as covered iff an active control references it.
pub fn compute_coverage(kb: &KnowledgeBase, activation: &ActivationReport) -> CoverageReport {
    let mut scoped = [0usize; 3];
    let mut covered = [0usize; 3];
    for o in kb.obligations() {
        let i = o.framework.index();
        scoped[i] += 1;
        if kb
            .controls_covering(&o.id)
            .any(|uc| activation.is_active(&uc.id))
        {
            covered[i] += 1;
        }
    }

    let frameworks = Framework::ALL
        .iter()
        .map(|&fw| {
            let i = fw.index();
            FrameworkCoverage {
                framework: fw,
                name: fw.display_name().to_string(),
                scoped_total: scoped[i],
                covered: covered[i],
                coverage_pct: Fixed1::percent(covered[i] as u64, scoped[i] as u64),
            }
        })
        .collect();

    // mean of c_i/s_i over a common denominator; empty frameworks count as 0
    let dens: Vec<i128> = scoped.iter().map(|&s| s.max(1) as i128).collect();
    let common: i128 = dens.iter().product();
    let num: i128 = (0..3)
        .map(|i| covered[i] as i128 * (common / dens[i]))
        .sum();
    let average_pct = Fixed1::from_ratio(num * 100, common * 3);

    CoverageReport {
        frameworks,
        average_pct,
    }
}
