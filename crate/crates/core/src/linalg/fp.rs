//! Linear algebra over the prime field `F_l`.

use crate::arith::inv_mod;

/// Row-reduces in place and returns the rank. Entries must lie in `[0, l)`.
pub fn rank_mod(m: &mut [Vec<u64>], l: u64) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let inv = inv_mod(m[r][c], l).expect("nonzero element of a prime field");
        for x in m[r].iter_mut() {
            *x = *x * inv % l;
        }
        let prow = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, &p) in row.iter_mut().zip(&prow) {
                    *x = (*x + (l - f) * p) % l;
                }
            }
        }
        r += 1;
    }
    r
}

/// Rank of the span of the given vectors.
pub fn span_rank(vectors: &[Vec<u64>], l: u64) -> usize {
    let mut m: Vec<Vec<u64>> = vectors.iter().map(|v| v.iter().map(|x| x % l).collect()).collect();
    rank_mod(&mut m, l)
}
