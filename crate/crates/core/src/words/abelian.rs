use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::Presentation;
use crate::scalar::Scalar;

/// `Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with `1 < d_1 | d_2 | ... | d_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Abelianization {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl Abelianization {
    pub fn free(rank: usize) -> Self {
        Abelianization { free_rank: rank, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for Abelianization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Abelianization of a finite presentation via the Smith normal form of
/// its exponent-sum matrix (one row per relator, one column per generator).
pub fn abelianization(p: &Presentation) -> Abelianization {
    let gens = p.generators().len();
    let rows: Vec<Vec<BigInt>> = p
        .relators()
        .iter()
        .map(|r| {
            let mut row = vec![BigInt::zero(); gens];
            for l in r.letters() {
                row[l.gen.index()] += BigInt::from(l.exp);
            }
            row
        })
        .collect();
    let diag = smith_diagonal(rows, gens);
    Abelianization {
        free_rank: gens - diag.len(),
        torsion: diag.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

/// Nonzero invariant factors of an integer matrix, positive and in
/// divisibility order. `cols` is needed when there are no rows.
pub fn smith_diagonal<I: Scalar>(mut a: Vec<Vec<I>>, cols: usize) -> Vec<I> {
    let rows = a.len();
    debug_assert!(a.iter().all(|r| r.len() == cols));
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: smallest nonzero absolute value in the trailing block.
        let Some((pi, pj)) = min_entry(&a, t) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let v = a[t][j].clone() * q.clone();
                    a[i][j] = a[i][j].clone() - v;
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = row[t].clone() * q.clone();
                    row[j] = row[j].clone() - v;
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // Row and column cleared; enforce divisibility of the block.
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !(a[i][j].clone() % a[t][t].clone()).is_zero());
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            let v = a[i][j].clone();
                            a[t][j] = a[t][j].clone() + v;
                        }
                        continue;
                    }
                }
            }
            // Re-pivot on the smallest remaining entry in row/column t.
            let (mut bi, mut bj) = (t, t);
            for i in t..rows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[bi][bj].abs() {
                    (bi, bj) = (i, t);
                }
            }
            for j in t..cols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[bi][bj].abs() {
                    (bi, bj) = (t, j);
                }
            }
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

fn min_entry<I: Scalar>(a: &[Vec<I>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if v.is_zero() {
                continue;
            }
            if best.map_or(true, |(bi, bj)| v.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}
