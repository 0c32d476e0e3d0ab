use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::linalg::integer_nullspace;

/// Octonionic 3-form: value +1 on each listed ordering (1-based).
pub const G2_TRIPLES: [[usize; 3]; 7] =
    [[1, 2, 3], [1, 4, 5], [1, 7, 6], [2, 4, 6], [2, 5, 7], [3, 4, 7], [3, 6, 5]];

fn phi() -> [[[i64; 7]; 7]; 7] {
    let mut p = [[[0i64; 7]; 7]; 7];
    for t in G2_TRIPLES {
        let [a, b, c] = t.map(|i| i - 1);
        for (x, y, z, s) in [(a, b, c, 1), (b, c, a, 1), (c, a, b, 1), (b, a, c, -1), (a, c, b, -1), (c, b, a, -1)] {
            p[x][y][z] = s;
        }
    }
    p
}

/// The 35×49 system `X_a^d φ_dbc + X_b^d φ_adc + X_c^d φ_abd = 0`,
/// one row per `a < b < c`, unknown `X_a^d` in column `7a + d`.
pub fn g2_constraints() -> Vec<Vec<BigRational>> {
    let p = phi();
    let mut rows = Vec::with_capacity(35);
    for a in 0..7 {
        for b in a + 1..7 {
            for c in b + 1..7 {
                let mut row = vec![0i64; 49];
                for d in 0..7 {
                    row[a * 7 + d] += p[d][b][c];
                    row[b * 7 + d] += p[a][d][c];
                    row[c * 7 + d] += p[a][b][d];
                }
                rows.push(row.into_iter().map(|v| BigRational::from_integer(v.into())).collect());
            }
        }
    }
    rows
}

/// Primitive integer basis of the derivation algebra of φ, flattened
/// row-major as 7×7 matrices.
pub fn g2_nullspace() -> &'static [Vec<i64>] {
    static CELL: OnceLock<Vec<Vec<i64>>> = OnceLock::new();
    CELL.get_or_init(|| {
        integer_nullspace(&g2_constraints(), 49)
            .into_iter()
            .map(|v| v.iter().map(|x| x.to_i64().expect("small integer")).collect())
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::linalg::rref;
    use num_traits::Zero;

    fn is_antisymmetric(v: &[i64]) -> bool {
        (0..7).all(|a| (0..7).all(|d| v[a * 7 + d] == -v[d * 7 + a]))
    }

    #[test]
    fn nullspace_has_dimension_fourteen() {
        let mut rows = g2_constraints();
        assert_eq!(rows.len(), 35);
        let rank = rref(&mut rows).len();
        assert_eq!(49 - rank, 14);
        assert_eq!(g2_nullspace().len(), 14);
    }

    #[test]
    fn basis_is_antisymmetric_and_solves_system() {
        let rows = g2_constraints();
        for v in g2_nullspace() {
            assert!(is_antisymmetric(v));
            for row in &rows {
                let s: BigRational = row.iter().zip(v).map(|(r, x)| r * BigRational::from_integer((*x).into())).sum();
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn phi_is_alternating() {
        let p = phi();
        let nonzero = p.iter().flatten().flatten().filter(|v| **v != 0).count();
        assert_eq!(nonzero, 42);
        assert_eq!(p[0][1][2], 1);
        assert_eq!(p[0][5][6], -1);
    }
}
