//! The four bundled deployment scenarios.

use crate::descriptor::{parse_descriptor, DeploymentDescriptor};

macro_rules! scenario {
    ($file:literal) => {
        include_str!(concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/../../scenarios/",
            $file
        ))
    };
}

/// Bundled scenario: slug and YAML text, in reporting order.
pub const BUNDLED: [(&str, &str); 4] = [
    ("urban", scenario!("urban.yaml")),
    ("highway", scenario!("highway.yaml")),
    ("transit", scenario!("transit.yaml")),
    ("rural", scenario!("rural.yaml")),
];

/// Parses every bundled scenario.
pub fn bundled() -> Vec<(&'static str, DeploymentDescriptor)> {
    BUNDLED
        .iter()
        .map(|(slug, text)| {
            (
                *slug,
                parse_descriptor(text).expect("bundled scenario parses"),
            )
        })
        .collect()
}

pub fn by_slug(slug: &str) -> Option<DeploymentDescriptor> {
    BUNDLED
        .iter()
        .find(|(s, _)| *s == slug)
        .map(|(_, text)| parse_descriptor(text).expect("bundled scenario parses"))
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::catalog::Tier::*;

    #[test]
    fn shapes() {
        let all = bundled();
        let shape: Vec<(usize, usize, usize)> = all
            .iter()
            .map(|(_, d)| (d.components.len(), d.active_tiers().len(), d.owners().len()))
            .collect();
        assert_eq!(shape, [(12, 3, 3), (7, 3, 3), (5, 2, 2), (2, 1, 1)]);
        assert_eq!(all[2].1.active_tiers(), BTreeSet::from([T2Edge, T3Cloud]));
        assert_eq!(all[3].1.active_tiers(), BTreeSet::from([T2Edge]));
        assert_eq!(all[3].1.system_name, "Rural Intersection");
    }

    #[test]
    fn lookup() {
        assert!(by_slug("urban").is_some());
        assert!(by_slug("suburban").is_none());
    }
}
