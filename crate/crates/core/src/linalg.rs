//! Exact rank of rational matrices via fraction-free (Bareiss) elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rank over the rationals. Rows are cleared to integers (rank is
/// invariant under row scaling), then eliminated fraction-free: every
/// division below is exact by Sylvester's determinant identity.
pub fn rank_fraction_free(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| clear_denominators(r)).collect();
    let nrows = m.len();
    let ncols = m.iter().map(Vec::len).max().unwrap_or(0);
    if nrows == 0 || ncols == 0 {
        return 0;
    }

    let mut rank = 0;
    let mut prev = BigInt::one();
    let mut pivot_row = 0;
    for col in 0..ncols {
        let Some(found) = (pivot_row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, found);
        for i in pivot_row + 1..nrows {
            for j in col + 1..ncols {
                let num = &m[pivot_row][col] * &m[i][j] - &m[i][col] * &m[pivot_row][j];
                debug_assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                m[i][j] = num / &prev;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[pivot_row][col].clone();
        rank += 1;
        pivot_row += 1;
        if pivot_row == nrows {
            break;
        }
    }
    rank
}

fn clear_denominators(row: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in row {
        if !x.is_zero() {
            lcm = lcm.lcm(&x.denom().abs());
        }
    }
    row.iter()
        .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_rational;

    fn row(entries: &[&str]) -> Vec<BigRational> {
        entries.iter().map(|s| parse_rational(s).unwrap()).collect()
    }

    #[test]
    fn simple_ranks() {
        assert_eq!(rank_fraction_free(&[]), 0);
        assert_eq!(rank_fraction_free(&[row(&["0", "0"])]), 0);
        assert_eq!(
            rank_fraction_free(&[row(&["1", "0"]), row(&["0", "1"])]),
            2
        );
        // dependent rows
        assert_eq!(
            rank_fraction_free(&[row(&["1", "2"]), row(&["2", "4"]), row(&["1/2", "1"])]),
            1
        );
    }

    #[test]
    fn worked_tangent_rows() {
        // the three evaluated fields at z=1, a=(-2,1,1): rank 3
        let rows = [
            row(&["1", "-1", "-2", "0"]),
            row(&["0", "0", "-1", "1"]),
            row(&["0", "-1", "1", "0"]),
        ];
        assert_eq!(rank_fraction_free(&rows), 3);
    }

    #[test]
    fn rank_with_denominators_and_zero_columns() {
        let rows = [
            row(&["0", "1/3", "0", "2/5"]),
            row(&["0", "1/6", "0", "1/5"]),
            row(&["0", "0", "0", "7"]),
        ];
        // second row is half the first; third independent
        assert_eq!(rank_fraction_free(&rows), 2);
    }
}
