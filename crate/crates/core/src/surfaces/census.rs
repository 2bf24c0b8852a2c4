//! The expected singular-fiber censuses, embedded as a data file so the
//! `fibers` diff runs self-contained.

use std::collections::BTreeMap;

use serde::Deserialize;

use super::CatalogId;

const CENSUS_JSON: &str = include_str!("../../data/fiber_census.json");

#[derive(Debug, Clone, Deserialize)]
pub struct ExpectedCensus {
    pub catalog_id: String,
    pub label: String,
    pub census: BTreeMap<String, usize>,
}

pub fn all_expected() -> Vec<ExpectedCensus> {
    serde_json::from_str(CENSUS_JSON).expect("embedded census table parses")
}

pub fn expected_census(id: CatalogId) -> Option<ExpectedCensus> {
    all_expected()
        .into_iter()
        .find(|e| e.catalog_id == id.name())
}

/// Difference computed − expected as (symbol, computed count, expected count)
/// rows, empty iff the censuses agree.
pub fn census_diff(
    computed: &BTreeMap<String, usize>,
    expected: &BTreeMap<String, usize>,
) -> Vec<(String, usize, usize)> {
    let mut keys: Vec<&String> = computed.keys().chain(expected.keys()).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .filter_map(|k| {
            let got = computed.get(k).copied().unwrap_or(0);
            let want = expected.get(k).copied().unwrap_or(0);
            (got != want).then(|| (k.clone(), got, want))
        })
        .collect()
}
