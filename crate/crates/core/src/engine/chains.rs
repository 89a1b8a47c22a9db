//! Cross-tier evidence chains.
//!
//! A step lists one or more alternative tiers and runs at the first one the
//! deployment has. Steps with no present tier drop out. A chain is active when
//! its initiating tier is present and the surviving steps still span at least
//! two distinct tiers.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::catalog::{format_tiers, KnowledgeBase, Tier};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizedStep {
    pub tier: Tier,
    pub controls: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActiveChain {
    pub id: u32,
    pub name: String,
    pub tier_path: Vec<Tier>,
    pub steps: Vec<RealizedStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub active_chains: Vec<ActiveChain>,
    /// Chain id to the reason it does not form.
    pub inactive_chains: BTreeMap<u32, String>,
}

pub fn cross_tier_chains(kb: &KnowledgeBase, tiers: &BTreeSet<Tier>) -> ChainReport {
    let mut active_chains = Vec::new();
    let mut inactive_chains = BTreeMap::new();
    for chain in kb.chains() {
        if !tiers.contains(&chain.initiating_tier) {
            inactive_chains.insert(
                chain.id,
                format!(
                    "initiating tier {} is not present",
                    chain.initiating_tier.short()
                ),
            );
            continue;
        }
        let steps: Vec<RealizedStep> = chain
            .steps
            .iter()
            .filter_map(|s| {
                let tier = s.tiers.iter().find(|t| tiers.contains(t))?;
                Some(RealizedStep {
                    tier: *tier,
                    controls: s.controls.clone(),
                })
            })
            .collect();
        let spanned: BTreeSet<Tier> = steps.iter().map(|s| s.tier).collect();
        if spanned.len() < 2 {
            inactive_chains.insert(
                chain.id,
                format!("surviving steps span only {}", format_tiers(&spanned)),
            );
            continue;
        }
        active_chains.push(ActiveChain {
            id: chain.id,
            name: chain.name.clone(),
            tier_path: steps.iter().map(|s| s.tier).collect(),
            steps,
        });
    }
    ChainReport {
        active_chains,
        inactive_chains,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Tier::*;

    fn chains(tiers: &[Tier]) -> ChainReport {
        cross_tier_chains(
            &KnowledgeBase::bundled().unwrap(),
            &tiers.iter().copied().collect(),
        )
    }

    #[test]
    fn counts_per_footprint() {
        assert_eq!(chains(&Tier::ALL).active_chains.len(), 5);
        let transit = chains(&[T2Edge, T3Cloud]);
        assert_eq!(transit.active_chains.len(), 4);
        assert_eq!(transit.inactive_chains.keys().collect::<Vec<_>>(), [&4]);
        assert_eq!(chains(&[T2Edge]).active_chains.len(), 0);
    }

    #[test]
    fn single_tier_never_forms_a_chain() {
        for t in Tier::ALL {
            let r = chains(&[t]);
            assert!(r.active_chains.is_empty());
            assert_eq!(r.inactive_chains.len(), 5);
        }
    }

    #[test]
    fn alternative_step_takes_first_present_tier() {
        let full = chains(&Tier::ALL);
        assert_eq!(
            full.active_chains[0].tier_path,
            [T2Edge, T3Cloud, T3Cloud, T1Vehicle]
        );
        let transit = chains(&[T2Edge, T3Cloud]);
        assert_eq!(
            transit.active_chains[0].tier_path,
            [T2Edge, T3Cloud, T3Cloud, T2Edge]
        );
        // model update loses its vehicle step but still spans cloud and edge
        assert_eq!(
            transit.active_chains[1].tier_path,
            [T3Cloud, T3Cloud, T2Edge]
        );
    }
}
