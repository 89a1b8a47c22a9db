//! Obligation-to-control consolidation per governance domain.

use serde::{Deserialize, Serialize};

use crate::catalog::{GovernanceDomain, KnowledgeBase};
use crate::fixed::Fixed;

/// Integer percentage.
pub type Fixed0 = Fixed<0>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsolidationRow {
    /// Domain code, or `"total"` for the grand-total row.
    pub domain: String,
    pub name: String,
    pub iso: usize,
    pub eu: usize,
    pub nist: usize,
    pub total: usize,
    pub uc_count: usize,
    pub ratio_pct: Fixed0,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsolidationReport {
    /// D1..D8 in order.
    pub domains: Vec<ConsolidationRow>,
    pub totals: ConsolidationRow,
}

/// `(1 - controls / obligations) x 100`; zero when a domain has no obligations.
pub fn consolidation_ratio(uc_count: usize, obligations: usize) -> Fixed0 {
    Fixed0::from_ratio(
        (obligations as i128 - uc_count as i128) * 100,
        obligations as i128,
    )
}

fn row(domain: String, name: String, counts: [usize; 3], uc_count: usize) -> ConsolidationRow {
    let total = counts.iter().sum();
    ConsolidationRow {
        domain,
        name,
        iso: counts[0],
        eu: counts[1],
        nist: counts[2],
        total,
        uc_count,
        ratio_pct: consolidation_ratio(uc_count, total),
    }
}

pub fn consolidation_analysis(kb: &KnowledgeBase) -> ConsolidationReport {
    let mut grand = [0usize; 3];
    let domains = GovernanceDomain::ALL
        .iter()
        .map(|&d| {
            let mut counts = [0usize; 3];
            for o in kb.obligations().iter().filter(|o| o.domain == d) {
                counts[o.framework.index()] += 1;
                grand[o.framework.index()] += 1;
            }
            let ucs = kb.controls().iter().filter(|c| c.domain == d).count();
            row(d.code().into(), d.name().into(), counts, ucs)
        })
        .collect();
    ConsolidationReport {
        domains,
        totals: row("total".into(), "Total".into(), grand, kb.controls().len()),
    }
}
