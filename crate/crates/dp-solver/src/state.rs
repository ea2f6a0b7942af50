/// One dynamic-programming state at a bag: a total order on the bag vertices
/// plus the subset already matched.
///
/// Vertices are stored as slots, their positions in the sorted bag, so a bag
/// holds at most 16 vertices: the order packs one slot per nibble of a u64
/// and the matched set is a bitmask over slots. Slot masks stay comparable
/// across states of the same bag regardless of the order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BagState {
    order: u64,
    mask: u16,
    len: u8,
}

impl BagState {
    pub const fn empty() -> Self {
        BagState { order: 0, mask: 0, len: 0 }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn mask(&self) -> u16 {
        self.mask
    }

    pub(crate) fn order_key(&self) -> u64 {
        self.order
    }

    pub(crate) fn from_slots(slots: &[u8], mask: u16) -> Self {
        debug_assert!(slots.len() <= 16);
        let mut order = 0u64;
        for (pos, &s) in slots.iter().enumerate() {
            debug_assert!(s < 16);
            order |= (s as u64) << (4 * pos);
        }
        BagState { order, mask, len: slots.len() as u8 }
    }

    pub(crate) fn slots(&self) -> Vec<u8> {
        (0..self.len as usize)
            .map(|pos| (self.order >> (4 * pos) & 0xF) as u8)
            .collect()
    }

    /// Position of each slot in the order; index by slot.
    pub(crate) fn positions(&self) -> [u8; 16] {
        let mut pos = [u8::MAX; 16];
        for (p, s) in self.slots().into_iter().enumerate() {
            pos[s as usize] = p as u8;
        }
        pos
    }

    /// The order as global vertex ids, given the sorted bag.
    pub fn global_order(&self, bag: &[usize]) -> Vec<usize> {
        self.slots().into_iter().map(|s| bag[s as usize]).collect()
    }

    /// The matched vertices as sorted global ids, given the sorted bag.
    pub fn matched_globals(&self, bag: &[usize]) -> Vec<usize> {
        (0..bag.len()).filter(|&s| self.mask >> s & 1 == 1).map(|s| bag[s]).collect()
    }

    /// Builds a state from global ids; `order` must be a permutation of the
    /// bag and `matched` a subset of it.
    pub fn from_globals(order: &[usize], matched: &[usize], bag: &[usize]) -> Self {
        assert_eq!(order.len(), bag.len(), "order must cover the bag");
        let slot = |v: usize| bag.binary_search(&v).expect("vertex outside the bag") as u8;
        let slots: Vec<u8> = order.iter().map(|&v| slot(v)).collect();
        let mut mask = 0u16;
        for &v in matched {
            mask |= 1 << slot(v);
        }
        Self::from_slots(&slots, mask)
    }
}

/// Opens a zero bit at `slot`, shifting higher bits up.
pub(crate) fn mask_open_slot(mask: u16, slot: usize) -> u16 {
    let low = mask & ((1 << slot) - 1);
    low | (mask >> slot) << (slot + 1)
}

/// Drops the bit at `slot`, shifting higher bits down.
pub(crate) fn mask_drop_slot(mask: u16, slot: usize) -> u16 {
    let low = mask & ((1 << slot) - 1);
    low | (mask >> (slot + 1)) << slot
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_globals() {
        let bag = [2, 5, 7];
        let s = BagState::from_globals(&[5, 2, 7], &[2, 5], &bag);
        assert_eq!(s.global_order(&bag), vec![5, 2, 7]);
        assert_eq!(s.matched_globals(&bag), vec![2, 5]);
        assert_eq!(s.len(), 3);
    }

    #[test]
    fn mask_slot_shifts() {
        assert_eq!(mask_open_slot(0b101, 1), 0b1001);
        assert_eq!(mask_open_slot(0b11, 0), 0b110);
        assert_eq!(mask_drop_slot(0b1001, 1), 0b101);
        assert_eq!(mask_drop_slot(0b110, 0), 0b11);
    }
}
