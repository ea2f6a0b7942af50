use serde::Serialize;

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct NodeStats {
    pub node: usize,
    pub bag_size: usize,
    pub states: usize,
}

/// Realized table sizes of one solve. Every node is checked against the
/// b!·2^b ceiling as its table is produced; these numbers are the evidence.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct StateStats {
    pub per_node: Vec<NodeStats>,
    pub peak_states: usize,
    pub max_bag_size: usize,
}

impl StateStats {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("stats serialize")
    }
}

/// b!·2^b; safe in u64 for b ≤ 16.
pub(crate) fn state_bound(bag_size: usize) -> u64 {
    let mut f = 1u64;
    for i in 2..=bag_size as u64 {
        f *= i;
    }
    f << bag_size
}
