//! Timestamp-cleared index maps.
//!
//! Several algorithms keep a `visited` table over all vertices or edges that
//! must be reset between batches. Resetting by bumping an epoch counter keeps
//! the per-batch overhead proportional to the entries actually touched.

#[derive(Clone, Debug)]
pub(crate) struct EpochMap {
    stamp: Vec<u64>,
    value: Vec<usize>,
    epoch: u64,
}

impl EpochMap {
    pub fn new(len: usize) -> Self {
        EpochMap {
            stamp: vec![0; len],
            value: vec![0; len],
            epoch: 1,
        }
    }

    pub fn clear(&mut self) {
        self.epoch += 1;
    }

    pub fn get(&self, key: usize) -> Option<usize> {
        if self.stamp[key] == self.epoch {
            Some(self.value[key])
        } else {
            None
        }
    }

    pub fn set(&mut self, key: usize, value: usize) {
        self.stamp[key] = self.epoch;
        self.value[key] = value;
    }

    pub fn remove(&mut self, key: usize) {
        self.stamp[key] = 0;
    }
}
