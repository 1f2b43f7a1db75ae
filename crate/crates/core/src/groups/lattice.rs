//! Integer lattices in row Hermite normal form.
//!
//! All arithmetic is overflow-checked; an overflow is reported as an error
//! instead of wrapping.

use crate::error::{Error, Result};

/// A sublattice of `Z^dim` spanned by the rows of an upper-triangular
/// integer matrix with positive pivots, entries above each pivot reduced
/// into `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    rows: Vec<Vec<i64>>,
    pivots: Vec<usize>,
}

fn overflow() -> Error {
    Error::Overflow("lattice arithmetic")
}

/// `target -= q * source`, checked.
fn sub_multiple(target: &mut [i64], source: &[i64], q: i64) -> Result<()> {
    if q == 0 {
        return Ok(());
    }
    for (t, &s) in target.iter_mut().zip(source) {
        let prod = s.checked_mul(q).ok_or_else(overflow)?;
        *t = t.checked_sub(prod).ok_or_else(overflow)?;
    }
    Ok(())
}

impl Lattice {
    pub fn new(dim: usize, generators: &[Vec<i64>]) -> Result<Self> {
        let mut m: Vec<Vec<i64>> = generators
            .iter()
            .filter(|v| v.iter().any(|&x| x != 0))
            .cloned()
            .collect();
        if let Some(v) = m.iter().find(|v| v.len() != dim) {
            return Err(Error::InvalidModel(format!(
                "lattice vector of length {} in dimension {dim}",
                v.len()
            )));
        }

        let mut pivots = Vec::new();
        let mut top = 0;
        for col in 0..dim {
            if top == m.len() {
                break;
            }
            // Euclid on the column until a single nonzero entry remains.
            loop {
                let best = (top..m.len())
                    .filter(|&r| m[r][col] != 0)
                    .min_by_key(|&r| m[r][col].unsigned_abs());
                let Some(best) = best else { break };
                m.swap(top, best);
                let mut done = true;
                for r in top + 1..m.len() {
                    if m[r][col] != 0 {
                        let q = m[r][col] / m[top][col];
                        let (head, tail) = m.split_at_mut(r);
                        sub_multiple(&mut tail[0], &head[top], q)?;
                        if tail[0][col] != 0 {
                            done = false;
                        }
                    }
                }
                if done {
                    break;
                }
            }
            if m[top][col] == 0 {
                continue;
            }
            if m[top][col] < 0 {
                for x in m[top].iter_mut() {
                    *x = x.checked_neg().ok_or_else(overflow)?;
                }
            }
            let p = m[top][col];
            for r in 0..top {
                let q = m[r][col].div_euclid(p);
                let (head, tail) = m.split_at_mut(top);
                sub_multiple(&mut head[r], &tail[0], q)?;
            }
            pivots.push(col);
            top += 1;
        }
        m.truncate(top);
        Ok(Lattice {
            dim,
            rows: m,
            pivots,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Canonical representative of `v + L`: pivot coordinates reduced into
    /// `[0, pivot)`.
    pub fn reduce(&self, v: &[i64]) -> Result<Vec<i64>> {
        let mut v = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let q = v[c].div_euclid(row[c]);
            sub_multiple(&mut v, row, q)?;
        }
        Ok(v)
    }

    pub fn contains(&self, v: &[i64]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(|&x| x == 0))
    }

    /// Coefficients of `v` in the row basis, or `None` if `v` is not in the
    /// lattice.
    pub fn coordinates(&self, v: &[i64]) -> Result<Option<Vec<i64>>> {
        let mut v = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.rank());
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if v[c] % row[c] != 0 {
                return Ok(None);
            }
            let q = v[c] / row[c];
            sub_multiple(&mut v, row, q)?;
            coeffs.push(q);
        }
        Ok(v.iter().all(|&x| x == 0).then_some(coeffs))
    }

    /// `[Z^dim : L]` when the lattice has full rank: the product of the
    /// pivots. `None` when the rank is deficient.
    pub fn index(&self) -> Result<Option<u64>> {
        if self.rank() < self.dim {
            return Ok(None);
        }
        let mut det: u64 = 1;
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            det = det.checked_mul(row[c] as u64).ok_or_else(overflow)?;
        }
        Ok(Some(det))
    }
}
