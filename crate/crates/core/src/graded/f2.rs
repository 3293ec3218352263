use std::fmt;

/// Dense matrix over the field with two elements.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<bool>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        F2Matrix { rows, cols, data: vec![false; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged F2 matrix");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, x % 2 == 1);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        self.data[i * self.cols + j] = v;
    }

    pub fn toggle(&mut self, i: usize, j: usize) {
        let k = i * self.cols + j;
        self.data[k] = !self.data[k];
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| !x)
    }

    pub fn column(&self, j: usize) -> Vec<bool> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// `self * rhs`; panics on inner dimension mismatch.
    pub fn mul(&self, rhs: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, rhs.rows, "F2 matrix product shape mismatch");
        let mut out = F2Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    for j in 0..rhs.cols {
                        if rhs.get(k, j) {
                            out.toggle(i, j);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &F2Matrix) -> F2Matrix {
        assert_eq!(self.shape(), rhs.shape(), "F2 matrix sum shape mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a ^ b).collect();
        F2Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn apply(&self, v: &[bool]) -> Vec<bool> {
        assert_eq!(v.len(), self.cols, "F2 vector length mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).fold(false, |acc, j| acc ^ (self.get(i, j) & v[j])))
            .collect()
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = F2Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Row echelon form together with the pivot columns.
    fn echelon(&self) -> (F2Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c)) else {
                continue;
            };
            m.swap_rows(r, p);
            for i in 0..m.rows {
                if i != r && m.get(i, c) {
                    m.add_row(r, i);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// row[dst] += row[src]
    fn add_row(&mut self, src: usize, dst: usize) {
        for j in 0..self.cols {
            if self.get(src, j) {
                self.toggle(dst, j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// A basis of the kernel, as column vectors.
    pub fn kernel_basis(&self) -> Vec<Vec<bool>> {
        let (e, pivots) = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![false; self.cols];
                v[f] = true;
                for (row, &pc) in pivots.iter().enumerate() {
                    if e.get(row, f) {
                        v[pc] = true;
                    }
                }
                v
            })
            .collect()
    }

    /// Some `x` with `self * x = b`, if the system is consistent.
    pub fn solve(&self, b: &[bool]) -> Option<Vec<bool>> {
        assert_eq!(b.len(), self.rows, "F2 right-hand side length mismatch");
        let mut aug = F2Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let (e, pivots) = aug.echelon();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![false; self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = e.get(row, self.cols);
        }
        Some(x)
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2[{}x{}](", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ";")?;
            }
            for j in 0..self.cols {
                write!(f, "{}", u8::from(self.get(i, j)))?;
            }
        }
        write!(f, ")")
    }
}
