use std::fmt;

use num_traits::{One, Zero};

use super::{Field, Poly, Rational};

/// Dense row-major matrix over a field. Linear maps act on column vectors,
/// so column `j` holds the image of the `j`-th basis vector.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
    zero: F,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize, zero: &F) -> Self {
        let z = zero.zero_like();
        Matrix { rows, cols, data: vec![z.clone(); rows * cols], zero: z }
    }

    pub fn identity(n: usize, zero: &F) -> Self {
        let mut m = Self::zeros(n, n, zero);
        for i in 0..n {
            m.data[i * n + i] = zero.one_like();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>, zero: &F) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: r, cols: c, data, zero: zero.zero_like() }
    }

    pub fn from_cols(cols: Vec<Vec<F>>, nrows: usize, zero: &F) -> Self {
        let mut m = Self::zeros(nrows, cols.len(), zero);
        for (j, col) in cols.into_iter().enumerate() {
            assert_eq!(col.len(), nrows);
            for (i, x) in col.into_iter().enumerate() {
                m.data[i * m.cols + j] = x;
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn zero_elem(&self) -> &F {
        &self.zero
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: F) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, &self.zero);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut r = Self::zeros(self.rows, o.cols, &self.zero);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero_elem() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero_elem() {
                        continue;
                    }
                    let idx = i * r.cols + j;
                    r.data[idx] = r.data[idx].clone() + &(a.clone() * b);
                }
            }
        }
        r
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = self.zero.clone();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero_elem() && !b.is_zero_elem() {
                        acc = acc + &(a.clone() * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.rows, v.len());
        let mut out = vec![self.zero.clone(); self.cols];
        for (i, a) in v.iter().enumerate() {
            if a.is_zero_elem() {
                continue;
            }
            for (j, b) in self.row(i).iter().enumerate() {
                if !b.is_zero_elem() {
                    out[j] = out[j].clone() + &(a.clone() * b);
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.clone() + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data, zero: self.zero.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.clone() - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data, zero: self.zero.clone() }
    }

    pub fn scale(&self, c: &F) -> Self {
        let data = self.data.iter().map(|a| a.clone() * c).collect();
        Matrix { rows: self.rows, cols: self.cols, data, zero: self.zero.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero_elem())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Block of rows `r0..r1` and columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        let mut m = Self::zeros(r1 - r0, c1 - c0, &self.zero);
        for i in r0..r1 {
            for j in c0..c1 {
                m.set(i - r0, j - c0, self.get(i, j).clone());
            }
        }
        m
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self.get(i, c).is_zero_elem()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = self.get(r, c).inv();
            for j in c..cols {
                let idx = r * cols + j;
                if !self.data[idx].is_zero_elem() {
                    self.data[idx] = self.data[idx].clone() * &inv;
                }
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero_elem() {
                    continue;
                }
                for j in c..cols {
                    let b = &self.data[r * cols + j];
                    if b.is_zero_elem() {
                        continue;
                    }
                    let t = f.clone() * b;
                    let idx = i * cols + j;
                    self.data[idx] = self.data[idx].clone() - &t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : M v = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let (r, piv) = self.rref();
        let mut is_piv = vec![false; self.cols];
        for &p in &piv {
            is_piv[p] = true;
        }
        let mut out = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_piv[c]) {
            let mut v = vec![self.zero.clone(); self.cols];
            v[f] = self.zero.one_like();
            for (i, &p) in piv.iter().enumerate() {
                v[p] = -r.get(i, f).clone();
            }
            out.push(v);
        }
        out
    }

    /// Basis of `{v : v M = 0}` (left kernel).
    pub fn left_kernel(&self) -> Vec<Vec<F>> {
        self.transpose().kernel()
    }

    /// Solve `self * X = rhs`; `None` if inconsistent.
    pub fn solve(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.rows, rhs.rows);
        let n = self.cols;
        let mut aug = Self::zeros(self.rows, n + rhs.cols, &self.zero);
        for i in 0..self.rows {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                aug.set(i, n + j, rhs.get(i, j).clone());
            }
        }
        let piv = aug.rref_in_place();
        if piv.iter().any(|&p| p >= n) {
            return None;
        }
        let mut x = Self::zeros(n, rhs.cols, &self.zero);
        for (i, &p) in piv.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(p, j, aug.get(i, n + j).clone());
            }
        }
        Some(x)
    }

    /// Characteristic polynomial `det(x I - M)`.
    pub fn charpoly(&self) -> Poly<F> {
        F::charpoly_hook(self).unwrap_or_else(|| self.charpoly_hessenberg())
    }

    /// Characteristic polynomial via Hessenberg reduction over `F`.
    pub fn charpoly_hessenberg(&self) -> Poly<F> {
        assert!(self.is_square(), "charpoly of a non-square matrix");
        let n = self.rows;
        let one = self.zero.one_like();
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h.get(i, m - 1).is_zero_elem()) else {
                continue;
            };
            if i != m {
                for j in 0..n {
                    h.data.swap(i * n + j, m * n + j);
                }
                for j in 0..n {
                    h.data.swap(j * n + i, j * n + m);
                }
            }
            let piv = h.get(m, m - 1).inv();
            for i in m + 1..n {
                let u = h.get(i, m - 1).clone() * &piv;
                if u.is_zero_elem() {
                    continue;
                }
                for j in 0..n {
                    let t = u.clone() * h.get(m, j);
                    let idx = i * n + j;
                    h.data[idx] = h.data[idx].clone() - &t;
                }
                for j in 0..n {
                    let t = u.clone() * h.get(j, i);
                    let idx = j * n + m;
                    h.data[idx] = h.data[idx].clone() + &t;
                }
            }
        }
        let x = Poly::from_coeffs(vec![self.zero.clone(), one.clone()]);
        let mut p: Vec<Poly<F>> = vec![Poly::constant(one)];
        for m in 1..=n {
            let mut pm = x.sub(&Poly::constant(h.get(m - 1, m - 1).clone())).mul(&p[m - 1]);
            let mut t = self.zero.one_like();
            for i in (1..m).rev() {
                t = t * h.get(i, i - 1);
                if t.is_zero_elem() {
                    break;
                }
                let c = h.get(i - 1, m - 1).clone() * &t;
                if !c.is_zero_elem() {
                    pm = pm.sub(&p[i - 1].scale(&c));
                }
            }
            p.push(pm);
        }
        p.pop().unwrap()
    }

    /// `f(M)` for a rational polynomial `f`.
    pub fn eval_poly(&self, f: &Poly<Rational>) -> Self {
        assert!(self.is_square());
        let n = self.rows;
        let mut acc = Self::zeros(n, n, &self.zero);
        for c in f.coeffs().iter().rev() {
            acc = acc.mul(self);
            let cf = self.zero.from_rational_like(c);
            for i in 0..n {
                let idx = i * n + i;
                acc.data[idx] = acc.data[idx].clone() + &cf;
            }
        }
        acc
    }

    /// `f(M)` for a polynomial with coefficients in the matrix field.
    pub fn eval_poly_field(&self, f: &Poly<F>) -> Self {
        let n = self.rows;
        let mut acc = Self::zeros(n, n, &self.zero);
        for c in f.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                let idx = i * n + i;
                acc.data[idx] = acc.data[idx].clone() + c;
            }
        }
        acc
    }

    pub fn map<G: Field>(&self, zero: &G, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect(), zero: zero.zero_like() }
    }

    pub fn commutes_with(&self, o: &Self) -> bool {
        self.mul(o) == o.mul(self)
    }
}

impl Matrix<Rational> {
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&a| super::q(a)).collect()).collect(), &Rational::zero())
    }

    pub fn zeros_q(rows: usize, cols: usize) -> Self {
        Self::zeros(rows, cols, &Rational::zero())
    }

    pub fn identity_q(n: usize) -> Self {
        Self::identity(n, &Rational::zero())
    }

    pub fn scalar_q(n: usize, c: Rational) -> Self {
        Self::identity_q(n).scale(&c)
    }

    pub fn is_scalar(&self, c: &Rational) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| if i == j { self.get(i, j) == c } else { self.get(i, j).is_zero() }))
    }

    pub fn is_identity(&self) -> bool {
        self.is_scalar(&Rational::one())
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_string()).collect()).collect();
        let w = cells.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
        for row in cells {
            write!(f, "[")?;
            for (j, c) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{c:>w$}")?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}
