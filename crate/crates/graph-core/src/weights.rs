use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WeightError {
    #[error("weight of vertex {v} is not finite")]
    NotFinite { v: usize },
}

/// One finite real weight per vertex; weights may be negative.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightMap {
    w: Vec<f64>,
}

impl WeightMap {
    pub fn new(w: Vec<f64>) -> Result<Self, WeightError> {
        if let Some(v) = w.iter().position(|x| !x.is_finite()) {
            return Err(WeightError::NotFinite { v });
        }
        Ok(WeightMap { w })
    }

    pub fn ones(n: usize) -> Self {
        WeightMap { w: vec![1.0; n] }
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    pub fn get(&self, v: usize) -> f64 {
        self.w[v]
    }

    pub fn values(&self) -> &[f64] {
        &self.w
    }
}
