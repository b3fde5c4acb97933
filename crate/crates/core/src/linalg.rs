//! Exact linear algebra over GF(q^3).

use crate::field::{Elem, Field};

/// Rank of a dense matrix by Gaussian elimination.
pub fn rank<const C: usize>(field: &Field, mut rows: Vec<[Elem; C]>) -> usize {
    let mut rank = 0;
    for col in 0..C {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = field.inv(rows[rank][col]).expect("pivot is nonzero");
        let pivot_row = rows[rank].map(|x| field.mul(x, inv));
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col];
            for c in col..C {
                row[c] = field.sub(row[c], field.mul(factor, pivot_row[c]));
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

pub fn rank3(field: &Field, m: [[Elem; 3]; 3]) -> usize {
    rank(field, m.to_vec())
}

/// Determinant by cofactor expansion along the first row.
pub fn det3(field: &Field, m: [[Elem; 3]; 3]) -> Elem {
    let f = field;
    let minor = |a: Elem, b: Elem, c: Elem, d: Elem| f.sub(f.mul(a, d), f.mul(b, c));
    let t0 = f.mul(m[0][0], minor(m[1][1], m[1][2], m[2][1], m[2][2]));
    let t1 = f.mul(m[0][1], minor(m[1][0], m[1][2], m[2][0], m[2][2]));
    let t2 = f.mul(m[0][2], minor(m[1][0], m[1][1], m[2][0], m[2][1]));
    f.add(f.sub(t0, t1), t2)
}
