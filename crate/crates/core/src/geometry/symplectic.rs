//! Integer symplectic reduction of an antisymmetric Gram matrix.

use super::GeometryError;

/// Integer row vector of coefficients over a fixed basis.
pub type Coefficients = Vec<i64>;

fn pairing(gram: &[Vec<i64>], x: &[i64], y: &[i64]) -> i64 {
    let mut total = 0;
    for (i, &xi) in x.iter().enumerate() {
        if xi == 0 {
            continue;
        }
        for (j, &yj) in y.iter().enumerate() {
            total += xi * gram[i][j] * yj;
        }
    }
    total
}

fn axpy(y: &mut [i64], a: i64, x: &[i64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

/// Finds pairs `(a_i, b_i)` with `a_i . b_j = delta_ij` and
/// `a_i . a_j = b_i . b_j = 0`, as coefficient vectors over the basis whose
/// Gram matrix is `gram`.
///
/// The first remaining vector is always taken as `a_i`; its partner is
/// produced by Euclidean reduction among the others, choosing the smallest
/// absolute pairing and the smallest index on ties. Fails when the form is
/// not unimodular.
pub fn symplectic_reduction(
    gram: &[Vec<i64>],
) -> Result<Vec<(Coefficients, Coefficients)>, GeometryError> {
    let n = gram.len();
    for (i, row) in gram.iter().enumerate() {
        if row.len() != n || row[i] != 0 || (0..n).any(|j| row[j] != -gram[j][i]) {
            return Err(GeometryError::NotAntisymmetric);
        }
    }
    let mut remaining: Vec<Coefficients> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    let mut pairs = Vec::with_capacity(n / 2);

    while !remaining.is_empty() {
        let a = remaining.remove(0);
        let partner = loop {
            let values: Vec<i64> = remaining.iter().map(|r| pairing(gram, &a, r)).collect();
            let pivot = values
                .iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .min_by_key(|(i, &v)| (v.abs(), *i))
                .map(|(i, _)| i)
                .ok_or(GeometryError::NotUnimodular)?;
            let pv = values[pivot];
            let mut reduced_any = false;
            let pivot_vec = remaining[pivot].clone();
            for (j, r) in remaining.iter_mut().enumerate() {
                if j != pivot && values[j] != 0 {
                    axpy(r, -(values[j] / pv), &pivot_vec);
                    reduced_any = true;
                }
            }
            if !reduced_any {
                if pv.abs() != 1 {
                    return Err(GeometryError::NotUnimodular);
                }
                let mut b = remaining.remove(pivot);
                if pv < 0 {
                    b.iter_mut().for_each(|x| *x = -*x);
                }
                break b;
            }
        };
        for u in remaining.iter_mut() {
            let uw = pairing(gram, u, &partner);
            let uv = pairing(gram, u, &a);
            axpy(u, -uw, &a);
            axpy(u, uv, &partner);
        }
        pairs.push((a, partner));
    }
    Ok(pairs)
}
