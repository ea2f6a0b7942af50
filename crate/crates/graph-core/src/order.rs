use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("sequence is not a permutation of 0..{n}")]
    NotAPermutation { n: usize },
}

/// Total order on vertices `0..n`, stored both as a sequence and as an
/// inverse position index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexOrder {
    seq: Vec<usize>,
    pos: Vec<usize>,
}

impl VertexOrder {
    pub fn new(seq: Vec<usize>) -> Result<Self, OrderError> {
        let n = seq.len();
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in seq.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return Err(OrderError::NotAPermutation { n });
            }
            pos[v] = i;
        }
        Ok(VertexOrder { seq, pos })
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn seq(&self) -> &[usize] {
        &self.seq
    }

    pub fn position(&self, v: usize) -> usize {
        self.pos[v]
    }

    pub fn before(&self, a: usize, b: usize) -> bool {
        self.pos[a] < self.pos[b]
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.seq.iter().copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_permutations_only() {
        let pi = VertexOrder::new(vec![2, 0, 1]).unwrap();
        assert_eq!(pi.position(2), 0);
        assert!(pi.before(2, 1));
        assert!(VertexOrder::new(vec![0, 0]).is_err());
        assert!(VertexOrder::new(vec![1, 2]).is_err());
        assert!(VertexOrder::new(vec![]).unwrap().is_empty());
    }
}
