//! Exact rank and null-space basis over the rationals.
//!
//! Rows are first scaled to primitive integer vectors, then reduced by
//! fraction-free Gauss–Jordan elimination: each update is
//! `row_i ← (a/g)·row_i − (b/g)·row_r` followed by division by the row
//! content, so entries stay integral and small.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::Matrix;
use crate::Rational;

/// Which matrix a kernel basis belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelSource {
    /// `ker 𝓘`, vectors over hyperedges; dimension `m_H`.
    Incidence,
    /// `ker 𝓘ᵀ`, vectors over vertices; dimension `m_V`.
    IncidenceTranspose,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelBasis {
    pub source: KernelSource,
    pub rank: usize,
    /// Number of columns of the source matrix.
    pub columns: usize,
    /// One vector per free column, in increasing free-column order.
    pub basis: Vec<Vec<Rational>>,
}

impl KernelBasis {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Reduced row echelon data: primitive integer rows and their pivot columns.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    cols: usize,
}

fn content(row: &[BigInt]) -> BigInt {
    row.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

fn make_primitive(row: &mut [BigInt]) {
    let g = content(row);
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

fn integer_rows(a: &Matrix<Rational>) -> Vec<Vec<BigInt>> {
    (0..a.rows())
        .map(|i| {
            let r = a.row(i);
            let lcm = r.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            let mut out: Vec<BigInt> = r.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
            make_primitive(&mut out);
            out
        })
        .collect()
}

fn reduce(mut rows: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        // smallest nonzero pivot keeps the numbers down
        let Some(p) = (r..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by(|&i, &j| rows[i][c].abs().cmp(&rows[j][c].abs()))
        else {
            continue;
        };
        rows.swap(r, p);
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -&*x;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let a = &pivot_row[c];
            let b = row[c].clone();
            let g = a.gcd(&b);
            let (fa, fb) = (a / &g, &b / &g);
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = &fa * &*x - &fb * y;
            }
            make_primitive(row);
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    Echelon { rows, pivots, cols }
}

impl Echelon {
    fn kernel(&self) -> Vec<Vec<Rational>> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&j| !is_pivot[j])
            .map(|free| {
                let mut x = vec![Rational::zero(); self.cols];
                x[free] = Rational::one();
                for (row, &pc) in self.rows.iter().zip(&self.pivots) {
                    x[pc] = -Rational::new(row[free].clone(), row[pc].clone());
                }
                x
            })
            .collect()
    }
}

/// Rank over `ℚ` and a kernel basis in reduced-echelon parametrization.
pub fn exact_rank_and_kernel(a: &Matrix<Rational>) -> KernelBasis {
    let ech = reduce(integer_rows(a), a.cols());
    KernelBasis { source: KernelSource::Other, rank: ech.pivots.len(), columns: a.cols(), basis: ech.kernel() }
}

/// Rank over `ℚ` of an integer matrix.
pub fn exact_rank(a: &Matrix<i32>) -> usize {
    let rows = (0..a.rows()).map(|i| a.row(i).iter().map(|&x| BigInt::from(x)).collect()).collect();
    reduce(rows, a.cols()).pivots.len()
}
