//! Exact linear algebra over Z and Q: modular row selection and fraction-free
//! Gauss–Jordan elimination.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::slots::{mulmod, powmod};
use super::Rational;

/// Sparse integer row: `(column, coefficient)` pairs.
pub type SparseRow = Vec<(usize, i64)>;

/// Indices of a maximal subset of rows that is linearly independent modulo `p`.
///
/// Rows independent modulo a prime are independent over Q, so the returned
/// rows have full rank over Q; the rank over Q can only exceed the count if
/// `p` is unlucky.
pub fn independent_rows_mod_p(rows: &[SparseRow], ncols: usize, p: u64) -> Vec<usize> {
    let mut basis: Vec<Option<Vec<u64>>> = vec![None; ncols];
    let mut chosen = Vec::new();
    let mut seen = HashSet::new();
    let mut rank = 0;
    for (idx, row) in rows.iter().enumerate() {
        if rank == ncols {
            break;
        }
        if row.is_empty() || !seen.insert(row.clone()) {
            continue;
        }
        let mut dense = vec![0u64; ncols];
        for &(c, v) in row {
            dense[c] = (dense[c] + v.rem_euclid(p as i64) as u64) % p;
        }
        let mut lead = None;
        for c in 0..ncols {
            if dense[c] == 0 {
                continue;
            }
            match &basis[c] {
                Some(b) => {
                    let f = dense[c];
                    for k in c..ncols {
                        if b[k] != 0 {
                            dense[k] = (dense[k] + p - mulmod(f, b[k], p)) % p;
                        }
                    }
                }
                None => {
                    lead = Some(c);
                    break;
                }
            }
        }
        if let Some(c) = lead {
            let inv = powmod(dense[c], p - 2, p);
            for x in dense.iter_mut().skip(c) {
                *x = mulmod(*x, inv, p);
            }
            // Keep only the leading segment reduced; later pivots are handled lazily.
            basis[c] = Some(dense);
            chosen.push(idx);
            rank += 1;
        }
    }
    chosen
}

/// Reduced row echelon form computed fraction-free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    /// Rows of the integer matrix `d · R` where `R` is the rational RREF.
    pub rows: Vec<Vec<BigInt>>,
    /// Common denominator `d > 0` (the last pivot of the elimination).
    pub denom: BigInt,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

/// Fraction-free Gauss–Jordan elimination of an integer matrix.
///
/// Every intermediate entry is a minor of the input, so all divisions are exact.
pub fn fraction_free_rref(mut m: Vec<Vec<BigInt>>, ncols: usize) -> Rref {
    let nrows = m.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(pr) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let piv = m[r][c].clone();
        for i in 0..nrows {
            if i == r {
                continue;
            }
            let f = m[i][c].clone();
            for j in 0..ncols {
                let v = &piv * &m[i][j] - &f * &m[r][j];
                m[i][j] = v / &prev;
            }
        }
        // Row r itself is rescaled implicitly: it already holds minors of order r+1.
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    // Pivot rows computed at earlier steps were not rescaled; bring them to the final pivot.
    let mut denom = prev;
    if denom.is_negative() {
        denom = -denom;
        for row in m.iter_mut() {
            for x in row.iter_mut() {
                *x = -&*x;
            }
        }
    }
    let rows = m
        .into_iter()
        .zip(&pivots)
        .map(|(row, &c)| {
            let lead = row[c].clone();
            if lead == denom {
                row
            } else {
                row.into_iter().map(|x| x * &denom / &lead).collect()
            }
        })
        .collect();
    Rref {
        rows,
        denom,
        pivots,
        ncols,
    }
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Rational nullspace basis, one vector per free column, with a 1 in that column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let free: Vec<usize> = (0..self.ncols)
            .filter(|c| !self.pivots.contains(c))
            .collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.ncols];
                v[f] = Rational::one();
                for (row, &pc) in self.rows.iter().zip(&self.pivots) {
                    if !row[f].is_zero() {
                        v[pc] = -Rational::new(row[f].clone(), self.denom.clone());
                    }
                }
                v
            })
            .collect()
    }

    /// Rational entries of the reduced matrix.
    pub fn to_rational(&self) -> Vec<Vec<Rational>> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| Rational::new(x.clone(), self.denom.clone()))
                    .collect()
            })
            .collect()
    }
}

/// RREF of a rational matrix, by clearing denominators row by row.
pub fn rational_rref(m: &[Vec<Rational>], ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let ints: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            let d = Rational::common_denominator(row);
            row.iter().map(|x| x.numer() * (&d / x.denom())).collect()
        })
        .collect();
    let r = fraction_free_rref(ints, ncols);
    (r.to_rational(), r.pivots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_rref(mut m: Vec<Vec<Rational>>, ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
        let mut r = 0;
        let mut piv = vec![];
        for c in 0..ncols {
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].recip().unwrap();
            m[r] = m[r].iter().map(|x| x * &inv).collect();
            for i in 0..m.len() {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for j in 0..ncols {
                        let d = &f * &m[r][j];
                        m[i][j] -= &d;
                    }
                }
            }
            piv.push(c);
            r += 1;
            if r == m.len() {
                break;
            }
        }
        m.truncate(r);
        (m, piv)
    }

    #[test]
    fn matches_naive_elimination() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let nr = rng.gen_range(1..6);
            let nc = rng.gen_range(1..7);
            let m: Vec<Vec<Rational>> = (0..nr)
                .map(|_| {
                    (0..nc)
                        .map(|_| Rational::from(rng.gen_range(-3i64..=3)))
                        .collect()
                })
                .collect();
            let (a, pa) = rational_rref(&m, nc);
            let (b, pb) = naive_rref(m.clone(), nc);
            assert_eq!(pa, pb);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn nullspace_annihilates() {
        let m = vec![vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, -1, 2]];
        let ints = m
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let r = fraction_free_rref(ints, 4);
        assert_eq!(r.rank(), 2);
        let ns = r.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            for row in &m {
                let s: Rational = row
                    .iter()
                    .zip(&v)
                    .map(|(&a, b)| b * &Rational::from(a))
                    .sum();
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn modular_selection_skips_dependent_rows() {
        let rows: Vec<SparseRow> = vec![
            vec![(0, 1), (1, 1)],
            vec![(0, 2), (1, 2)],
            vec![(1, 1), (2, 1)],
            vec![(0, 1), (2, -1)],
            vec![],
        ];
        let sel = independent_rows_mod_p(&rows, 3, 1_000_003);
        assert_eq!(sel, vec![0, 2]);
    }
}
