//! Catalan numbers by the convolution recursion, memoized process-wide.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::One;

/// Exact values `C_0..=C_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalanTable {
    values: Vec<BigUint>,
}

impl CatalanTable {
    pub fn new(max: usize) -> Self {
        let mut table = CatalanTable { values: vec![BigUint::one()] };
        table.extend_to(max);
        table
    }

    fn extend_to(&mut self, max: usize) {
        while self.values.len() <= max {
            let k = self.values.len();
            let next = (0..k).map(|i| &self.values[i] * &self.values[k - 1 - i]).sum::<BigUint>();
            self.values.push(next);
        }
    }

    pub fn max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, k: usize) -> Option<&BigUint> {
        self.values.get(k)
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }
}

fn shared() -> &'static Mutex<CatalanTable> {
    static TABLE: OnceLock<Mutex<CatalanTable>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(CatalanTable::new(16)))
}

/// `C_k`.
pub fn catalan(k: usize) -> BigUint {
    let mut table = shared().lock().unwrap_or_else(|e| e.into_inner());
    table.extend_to(k);
    table.values[k].clone()
}
