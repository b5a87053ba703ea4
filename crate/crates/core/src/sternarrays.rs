//! Stern's triangle and Stern's diatomic array.
//!
//! Entries are `u64`: the largest entry of row `n` is a Fibonacci number of
//! index about `n + 2`, and any row small enough to materialize (the entry
//! budget caps `n` far below 90) stays well inside that range.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ArrayKind {
    Triangle,
    Diatomic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowMethod {
    /// Copy every entry down and insert pairwise sums.
    Recursive,
    /// Expand `prod_{i<n} (1 + x^{2^i} + x^{2*2^i})` (triangle only).
    Product,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArrayRow {
    pub kind: ArrayKind,
    pub n: usize,
    pub entries: Vec<u64>,
}

impl ArrayRow {
    pub fn is_palindrome(&self) -> bool {
        self.entries.iter().eq(self.entries.iter().rev())
    }
}

pub fn row_len(kind: ArrayKind, n: usize) -> u128 {
    match kind {
        ArrayKind::Triangle => (1u128 << (n + 1)) - 1,
        ArrayKind::Diatomic => (1u128 << n) + 1,
    }
}

fn check_budget(kind: ArrayKind, n: usize, limits: &Limits) -> Result<()> {
    let entries = if n >= 120 {
        u128::MAX
    } else {
        row_len(kind, n)
    };
    if entries > limits.entry_budget as u128 {
        return Err(Error::RowTooLarge {
            n,
            entries,
            budget: limits.entry_budget,
        });
    }
    Ok(())
}

/// One Stern step: copies interleaved with pairwise sums. `pad` adds the
/// boundary sums against the implicit zeros outside the row (triangle rule).
fn refine(row: &[u64], pad: bool) -> Vec<u64> {
    let mut next = Vec::with_capacity(2 * row.len() + 1);
    if pad {
        next.push(row[0]);
    }
    for (i, &e) in row.iter().enumerate() {
        next.push(e);
        if let Some(&f) = row.get(i + 1) {
            next.push(e + f);
        }
    }
    if pad {
        next.push(row[row.len() - 1]);
    }
    next
}

pub fn stern_row(n: usize, kind: ArrayKind, method: RowMethod) -> Result<ArrayRow> {
    stern_row_with(n, kind, method, &Limits::default())
}

pub fn stern_row_with(
    n: usize,
    kind: ArrayKind,
    method: RowMethod,
    limits: &Limits,
) -> Result<ArrayRow> {
    check_budget(kind, n, limits)?;
    let entries = match (kind, method) {
        (ArrayKind::Triangle, RowMethod::Recursive) => {
            (0..n).fold(vec![1], |r, _| refine(&r, true))
        }
        (ArrayKind::Diatomic, _) => (0..n).fold(vec![1, 1], |r, _| refine(&r, false)),
        (ArrayKind::Triangle, RowMethod::Product) => {
            let mut coeffs = vec![1u64];
            for i in 0..n {
                let step = 1usize << i;
                let mut next = vec![0u64; coeffs.len() + 2 * step];
                for (k, &c) in coeffs.iter().enumerate() {
                    next[k] += c;
                    next[k + step] += c;
                    next[k + 2 * step] += c;
                }
                coeffs = next;
            }
            coeffs
        }
    };
    Ok(ArrayRow { kind, n, entries })
}

/// Number of partitions of `k` into parts `1, 2, 4, ..., 2^{n-1}` with each
/// part used at most twice, by direct enumeration of multiplicity vectors.
pub fn partition_count(n: usize, k: i64) -> u64 {
    assert!(n >= 1, "partition_count needs n >= 1");
    if k < 0 {
        return 0;
    }
    let mut count = 0;
    let mut mult = vec![0u8; n];
    loop {
        let total: i64 = mult
            .iter()
            .enumerate()
            .map(|(i, &m)| i64::from(m) << i)
            .sum();
        if total == k {
            count += 1;
        }
        // odometer over {0,1,2}^n
        let mut i = 0;
        loop {
            if i == n {
                return count;
            }
            if mult[i] < 2 {
                mult[i] += 1;
                break;
            }
            mult[i] = 0;
            i += 1;
        }
    }
}

/// Merges `R_0 R_1 ... R_{n-1} R_{n-1} ... R_0` (diatomic rows, shared 1s at
/// the junctions) and compares it with triangle row `n`.
pub fn concat_check(n: usize) -> Result<bool> {
    concat_check_with(n, &Limits::default())
}

pub fn concat_check_with(n: usize, limits: &Limits) -> Result<bool> {
    assert!(n >= 1, "concat_check needs n >= 1");
    let triangle = stern_row_with(n, ArrayKind::Triangle, RowMethod::Recursive, limits)?;
    let rows = (0..n)
        .map(|i| stern_row_with(i, ArrayKind::Diatomic, RowMethod::Recursive, limits))
        .collect::<Result<Vec<_>>>()?;
    let mut merged: Vec<u64> = Vec::new();
    for row in rows.iter().chain(rows.iter().rev()) {
        let skip = usize::from(!merged.is_empty());
        merged.extend_from_slice(&row.entries[skip..]);
    }
    Ok(merged == triangle.entries)
}

/// First `k` terms of the limiting sequence `b_0, b_1, ...`, read from the
/// smallest triangle row whose prefix of that length has stabilized.
/// Panics if two consecutive returned terms share a factor.
pub fn limit_prefix(k: usize) -> Result<Vec<u64>> {
    assert!(k >= 1, "limit_prefix needs k >= 1");
    let n = k.next_power_of_two().trailing_zeros() as usize;
    let row = stern_row(n, ArrayKind::Triangle, RowMethod::Recursive)?;
    let prefix = row.entries[..k].to_vec();
    for w in prefix.windows(2) {
        assert_eq!(w[0].gcd(&w[1]), 1, "consecutive terms not coprime");
    }
    Ok(prefix)
}
