//! Exact matrix rank over GF(2), GF(p) and the rationals.
//!
//! Matrices arrive as sparse rows of small integer coefficients, which is the
//! shape of simplicial boundary maps.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::field::FieldSpec;

/// Row-sparse integer matrix.
#[derive(Clone, Debug, Default)]
pub struct SparseMatrix {
    pub ncols: usize,
    pub rows: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn new(ncols: usize) -> Self {
        SparseMatrix { ncols, rows: Vec::new() }
    }

    pub fn push_row(&mut self, row: Vec<(usize, i64)>) {
        debug_assert!(row.iter().all(|&(c, _)| c < self.ncols));
        self.rows.push(row);
    }

    pub fn rank(&self, field: FieldSpec) -> usize {
        if self.rows.is_empty() || self.ncols == 0 {
            return 0;
        }
        match field {
            FieldSpec::Prime(2) => rank_gf2(self),
            FieldSpec::Prime(p) => rank_mod_p(self, p as u64),
            FieldSpec::Rationals => rank_rational(self),
        }
    }
}

fn rank_gf2(m: &SparseMatrix) -> usize {
    let words = m.ncols.div_ceil(64);
    // pivots[c] holds a reduced row whose lowest set column is c
    let mut pivots: Vec<Option<Vec<u64>>> = vec![None; m.ncols];
    let mut rank = 0;
    for row in &m.rows {
        let mut bits = vec![0u64; words];
        for &(c, v) in row {
            if v & 1 != 0 {
                bits[c / 64] ^= 1 << (c % 64);
            }
        }
        while let Some(w) = bits.iter().position(|&x| x != 0) {
            let c = w * 64 + bits[w].trailing_zeros() as usize;
            match &pivots[c] {
                Some(p) => {
                    for (b, q) in bits[w..].iter_mut().zip(&p[w..]) {
                        *b ^= q;
                    }
                }
                None => {
                    pivots[c] = Some(bits);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn rank_mod_p(m: &SparseMatrix, p: u64) -> usize {
    let inv = |a: u64| pow_mod(a, p - 2, p);
    let mut pivots: Vec<Option<Vec<u64>>> = vec![None; m.ncols];
    let mut rank = 0;
    for row in &m.rows {
        let mut dense = vec![0u64; m.ncols];
        for &(c, v) in row {
            dense[c] = (dense[c] + v.rem_euclid(p as i64) as u64) % p;
        }
        let mut start = 0;
        while let Some(off) = dense[start..].iter().position(|&x| x != 0) {
            let c = start + off;
            match &pivots[c] {
                Some(pr) => {
                    // pivot rows are normalized to leading coefficient 1
                    let f = dense[c];
                    for j in c..m.ncols {
                        if pr[j] != 0 {
                            dense[j] = (dense[j] + p - f * pr[j] % p) % p;
                        }
                    }
                    start = c + 1;
                }
                None => {
                    let s = inv(dense[c]);
                    for x in dense[c..].iter_mut() {
                        *x = *x * s % p;
                    }
                    pivots[c] = Some(dense);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

trait Exact: Clone {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// `(a * d - b * c) / prev`, exact by the Bareiss identity.
    fn step(a: &Self, d: &Self, b: &Self, c: &Self, prev: &Self) -> Option<Self>;
}

impl Exact for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn step(a: &Self, d: &Self, b: &Self, c: &Self, prev: &Self) -> Option<Self> {
        let x = a.checked_mul(*d)?.checked_sub(b.checked_mul(*c)?)?;
        Some(x / prev)
    }
}

impl Exact for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn step(a: &Self, d: &Self, b: &Self, c: &Self, prev: &Self) -> Option<Self> {
        Some((a * d - b * c) / prev)
    }
}

/// Fraction-free (Bareiss) echelon form; `None` on machine overflow.
fn bareiss_rank<T: Exact>(m: &SparseMatrix) -> Option<usize> {
    let mut a: Vec<Vec<T>> = m
        .rows
        .iter()
        .map(|row| {
            let mut dense = vec![T::from_i64(0); m.ncols];
            for &(c, v) in row {
                dense[c] = T::from_i64(v);
            }
            dense
        })
        .collect();
    a.retain(|r| r.iter().any(|x| !x.is_zero()));
    let nrows = a.len();
    let mut prev = T::from_i64(1);
    let mut r = 0;
    for col in 0..m.ncols {
        if r == nrows {
            break;
        }
        let Some(piv) = (r..nrows).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(r, piv);
        let (top, rest) = a.split_at_mut(r + 1);
        let pr = &top[r];
        for row in rest.iter_mut() {
            let lead = row[col].clone();
            for j in col + 1..m.ncols {
                row[j] = T::step(&pr[col], &row[j], &lead, &pr[j], &prev)?;
            }
            row[col] = T::from_i64(0);
        }
        prev = pr[col].clone();
        r += 1;
    }
    Some(r)
}

fn rank_rational(m: &SparseMatrix) -> usize {
    bareiss_rank::<i128>(m).unwrap_or_else(|| {
        bareiss_rank::<BigInt>(m).expect("bignum elimination cannot overflow")
    })
}

/// Absolute value of a bignum determinant by Bareiss; used in tests.
#[cfg(test)]
fn det_bigint(rows: &[Vec<i64>]) -> BigInt {
    use num_traits::Signed;
    let n = rows.len();
    let mut a: Vec<Vec<BigInt>> =
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    let mut prev = BigInt::from(1);
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !Zero::is_zero(&a[i][k])) else { return BigInt::zero() };
        a.swap(k, p);
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    prev.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn dense(rows: &[Vec<i64>]) -> SparseMatrix {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = SparseMatrix::new(ncols);
        for r in rows {
            m.push_row(r.iter().enumerate().filter(|p| *p.1 != 0).map(|(c, &v)| (c, v)).collect());
        }
        m
    }

    #[test]
    fn characteristic_dependence() {
        // det = 2: full rank over Q and GF(3), rank drops over GF(2)
        let m = dense(&[vec![1, 1], vec![1, -1]]);
        assert_eq!(m.rank(FieldSpec::Rationals), 2);
        assert_eq!(m.rank(FieldSpec::Prime(3)), 2);
        assert_eq!(m.rank(FieldSpec::GF2), 1);
    }

    #[test]
    fn zero_and_empty() {
        assert_eq!(SparseMatrix::new(3).rank(FieldSpec::Rationals), 0);
        assert_eq!(dense(&[vec![0, 0], vec![0, 0]]).rank(FieldSpec::GF2), 0);
    }

    /// Rank oracle via maximal nonzero minors, small matrices only.
    fn rank_by_minors(rows: &[Vec<i64>], p: Option<i64>) -> usize {
        let nr = rows.len();
        let nc = rows[0].len();
        let nz = |d: BigInt| match p {
            None => !Zero::is_zero(&d),
            Some(p) => !Zero::is_zero(&(d % BigInt::from(p))),
        };
        for k in (1..=nr.min(nc)).rev() {
            for rs in 0u32..1 << nr {
                if rs.count_ones() as usize != k {
                    continue;
                }
                for cs in 0u32..1 << nc {
                    if cs.count_ones() as usize != k {
                        continue;
                    }
                    let sub: Vec<Vec<i64>> = (0..nr)
                        .filter(|i| rs >> i & 1 == 1)
                        .map(|i| (0..nc).filter(|j| cs >> j & 1 == 1).map(|j| rows[i][j]).collect())
                        .collect();
                    if nz(det_bigint(&sub)) {
                        return k;
                    }
                }
            }
        }
        0
    }

    #[test]
    fn agrees_with_minor_oracle() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let nr = rng.gen_range(1..=5);
            let nc = rng.gen_range(1..=5);
            let rows: Vec<Vec<i64>> =
                (0..nr).map(|_| (0..nc).map(|_| rng.gen_range(-2..=2)).collect()).collect();
            let m = dense(&rows);
            assert_eq!(m.rank(FieldSpec::Rationals), rank_by_minors(&rows, None));
            assert_eq!(m.rank(FieldSpec::GF2), rank_by_minors(&rows, Some(2)));
            assert_eq!(m.rank(FieldSpec::Prime(5)), rank_by_minors(&rows, Some(5)));
        }
    }

    #[test]
    fn overflow_falls_back_to_bignum() {
        // Entries of size 2^40 overflow i128 after a few Bareiss steps.
        let big = 1i64 << 40;
        let rows: Vec<Vec<i64>> = (0..6)
            .map(|i| (0..6).map(|j| if i == j { big + i as i64 } else { (i * 7 + j * 3) as i64 + 1 }).collect())
            .collect();
        let m = dense(&rows);
        assert!(bareiss_rank::<i128>(&m).is_none());
        assert_eq!(m.rank(FieldSpec::Rationals), 6);
    }
}
