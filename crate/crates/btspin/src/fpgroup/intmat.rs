//! Dense integer matrices and Smith normal form.
//!
//! Entries are arbitrary-precision: the unimodular transforms of a Smith
//! reduction grow far faster than the input (double-exponentially in the
//! worst case), so fixed-width integers overflow already on small dense
//! matrices.

use std::fmt;

use num_bigint::BigInt;

/// Row-major dense integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::from(0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::from(1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        assert!(rows.iter().all(|row| row.len() == c));
        IntMat {
            rows: r,
            cols: c,
            data: rows.iter().flatten().map(|&v| BigInt::from(v)).collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, rhs: &IntMat) -> IntMat {
        assert_eq!(self.cols, rhs.rows);
        let mut out = IntMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let s = self[(i, k)].clone();
                if s == BigInt::from(0) {
                    continue;
                }
                for j in 0..rhs.cols {
                    let add = &s * &rhs[(k, j)];
                    out[(i, j)] += add;
                }
            }
        }
        out
    }

    /// Exact determinant by fraction-free elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::from(1);
        }
        let mut a = self.clone();
        let mut sign = BigInt::from(1);
        let mut prev = BigInt::from(1);
        for k in 0..n - 1 {
            if a[(k, k)] == BigInt::from(0) {
                let Some(p) = (k + 1..n).find(|&i| a[(i, k)] != BigInt::from(0)) else {
                    return BigInt::from(0);
                };
                for j in 0..n {
                    let tmp = a[(k, j)].clone();
                    a[(k, j)] = a[(p, j)].clone();
                    a[(p, j)] = tmp;
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[(i, j)] = (&a[(k, k)] * &a[(i, j)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                }
                a[(i, k)] = BigInt::from(0);
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// row[i] += q * row[k]
    fn add_row(&mut self, i: usize, k: usize, q: &BigInt) {
        for c in 0..self.cols {
            let v = &self[(k, c)] * q;
            self[(i, c)] += v;
        }
    }

    /// col[j] += q * col[k]
    fn add_col(&mut self, j: usize, k: usize, q: &BigInt) {
        for r in 0..self.rows {
            let v = &self[(r, k)] * q;
            self[(r, j)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -self[(i, c)].clone();
            self[(i, c)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = BigInt;

    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Display for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Smith normal form `s = u * m * v` with unimodular `u`, `v` and the
/// diagonal of `s` nonnegative with each entry dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf {
    pub s: IntMat,
    pub u: IntMat,
    pub v: IntMat,
}

impl Snf {
    /// Nonzero diagonal entries, in chain order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let t = self.s.nrows().min(self.s.ncols());
        (0..t)
            .map(|i| self.s[(i, i)].clone())
            .take_while(|d| *d != BigInt::from(0))
            .collect()
    }
}

fn min_nonzero_from(m: &IntMat, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in k..m.nrows() {
        for j in k..m.ncols() {
            if m[(i, j)] == BigInt::from(0) {
                continue;
            }
            match best {
                Some((bi, bj)) if m[(bi, bj)].magnitude() <= m[(i, j)].magnitude() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

fn div_floor(a: &BigInt, b: &BigInt) -> BigInt {
    let q = a / b;
    if &(&q * b) != a && (a < &BigInt::from(0)) != (b < &BigInt::from(0)) {
        q - 1
    } else {
        q
    }
}

/// Computes the Smith normal form of an integer matrix.
pub fn smith_normal_form(m: &IntMat) -> Snf {
    let zero = BigInt::from(0);
    let mut s = m.clone();
    let mut u = IntMat::identity(m.nrows());
    let mut v = IntMat::identity(m.ncols());
    let t = m.nrows().min(m.ncols());

    for k in 0..t {
        'pivot: loop {
            let Some((pi, pj)) = min_nonzero_from(&s, k) else {
                break 'pivot;
            };
            s.swap_rows(k, pi);
            u.swap_rows(k, pi);
            s.swap_cols(k, pj);
            v.swap_cols(k, pj);

            // Clear the pivot column.
            let mut dirty = false;
            for i in k + 1..s.nrows() {
                if s[(i, k)] != zero {
                    let q = -div_floor(&s[(i, k)], &s[(k, k)]);
                    s.add_row(i, k, &q);
                    u.add_row(i, k, &q);
                    if s[(i, k)] != zero {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue 'pivot;
            }
            // Clear the pivot row.
            for j in k + 1..s.ncols() {
                if s[(k, j)] != zero {
                    let q = -div_floor(&s[(k, j)], &s[(k, k)]);
                    s.add_col(j, k, &q);
                    v.add_col(j, k, &q);
                    if s[(k, j)] != zero {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue 'pivot;
            }
            // Enforce divisibility of the remaining block.
            let p = s[(k, k)].clone();
            let mut fixed = false;
            'scan: for i in k + 1..s.nrows() {
                for j in k + 1..s.ncols() {
                    if &s[(i, j)] % &p != zero {
                        let one = BigInt::from(1);
                        s.add_row(k, i, &one);
                        u.add_row(k, i, &one);
                        fixed = true;
                        break 'scan;
                    }
                }
            }
            if fixed {
                continue 'pivot;
            }
            break 'pivot;
        }
        if s[(k, k)] < zero {
            s.negate_row(k);
            u.negate_row(k);
        }
        if s[(k, k)] == zero {
            break;
        }
    }
    Snf { s, u, v }
}
