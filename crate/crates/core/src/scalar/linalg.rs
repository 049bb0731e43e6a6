//! Exact Gaussian elimination over Q.

use num_traits::Zero;

use super::rational::Rational;

/// Rank of a matrix given by rows.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c).is_some_and(|x| !x.is_zero())) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in r + 1..rows.len() {
            let x = rows[i].get(c).cloned().unwrap_or_default();
            if x.is_zero() {
                continue;
            }
            let f = x / &pivot;
            for j in c..cols {
                let v = rows[r].get(j).cloned().unwrap_or_default() * &f;
                if j < rows[i].len() {
                    rows[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}
