//! Ordered block partitions of `{1, ..., s}` counted by type.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Type `(i_1, ..., i_k)`: `i_l` blocks of size `l`, with `sum l * i_l = s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PartitionType {
    pub s: u32,
    pub counts: Vec<u32>,
}

impl PartitionType {
    pub fn new(s: u32, counts: Vec<u32>) -> Result<Self> {
        let weight: u32 = counts.iter().enumerate().map(|(l, &i)| (l as u32 + 1) * i).sum();
        if weight != s {
            return Err(Error::Validation(format!(
                "block counts {counts:?} have weight {weight}, expected {s}"
            )));
        }
        Ok(PartitionType { s, counts })
    }

    pub fn blocks(&self) -> u32 {
        self.counts.iter().sum()
    }
}

/// All types of weight `s` with block sizes at most `k`.
pub fn partition_types(s: u32, k: usize) -> Vec<PartitionType> {
    fn rec(size: usize, k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if size > k {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for i in 0..=left / size as u32 {
            cur.push(i);
            rec(size + 1, k, left - i * size as u32, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, k, s, &mut Vec::new(), &mut out);
    out.into_iter().map(|counts| PartitionType { s, counts }).collect()
}

/// `Q^(s)_(i_1..i_k)` by the recurrence
/// `Q^(s)_i = sum_j Q^(s-j)_(i - e_j)`, `Q^(0)_0 = 1`, zero on negative indices.
pub fn block_partition_count(t: &PartitionType) -> Result<u64> {
    let t = PartitionType::new(t.s, t.counts.clone())?;
    let mut memo = HashMap::new();
    Ok(count(&t.counts, &mut memo))
}

fn count(counts: &[u32], memo: &mut HashMap<Vec<u32>, u64>) -> u64 {
    if counts.iter().all(|&c| c == 0) {
        return 1;
    }
    if let Some(&v) = memo.get(counts) {
        return v;
    }
    let mut total = 0u64;
    let mut c = counts.to_vec();
    for j in 0..c.len() {
        if c[j] > 0 {
            c[j] -= 1;
            total += count(&c, memo);
            c[j] += 1;
        }
    }
    memo.insert(counts.to_vec(), total);
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(block_partition_count(&PartitionType::new(1, vec![1]).unwrap()).unwrap(), 1);
        assert_eq!(block_partition_count(&PartitionType::new(3, vec![1, 1]).unwrap()).unwrap(), 2);
        for s in 1..8 {
            let mut counts = vec![0; 3];
            counts[0] = s;
            assert_eq!(block_partition_count(&PartitionType::new(s, counts).unwrap()).unwrap(), 1);
        }
        assert!(PartitionType::new(3, vec![1, 0]).is_err());
    }

    #[test]
    fn types_enumerated() {
        let t = partition_types(4, 2);
        assert_eq!(t.len(), 3);
        assert!(t.iter().all(|p| p.counts.len() == 2));
    }
}
