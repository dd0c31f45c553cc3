//! Dense exact Gaussian elimination over a [`Field`].

use crate::field::Field;

/// Row-reduces `m` in place to reduced row echelon form and returns the
/// pivot column of each nonzero row.
pub fn rref<F: Field>(m: &mut [Vec<F>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("pivot is nonzero");
        for v in m[r].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (v, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *v = v.clone() - p.clone() * factor.clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// A nonzero `c` with `sum_j c[j] * columns[j] = 0`, if the columns are
/// dependent. All columns must have equal length.
pub fn kernel_vector<F: Field>(columns: &[Vec<F>]) -> Option<Vec<F>> {
    let n = columns.len();
    let dim = columns.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<F>> = (0..dim).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
    let pivots = if dim == 0 { Vec::new() } else { rref(&mut m) };
    let free = (0..n).find(|c| !pivots.contains(c))?;
    let mut out = vec![F::zero(); n];
    out[free] = F::one();
    for (row, &pc) in pivots.iter().enumerate() {
        out[pc] = -m[row][free].clone();
    }
    Some(out)
}

/// Solves `a * x = b` where `a` is given by rows. Returns one solution.
pub fn solve<F: Field>(a: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let n = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![F::zero(); n];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = m[row][n].clone();
    }
    Some(x)
}
