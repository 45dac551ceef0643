//! Dense complex matrices, just enough linear algebra for model evaluation:
//! multiply, Kronecker product, conjugate transpose, inversion, deviation.

use crate::error::EvalError;
use num_complex::Complex64;
use std::fmt;

pub type C = Complex64;

#[derive(Clone, Debug, PartialEq)]
pub struct CMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<C>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat { rows, cols, data: vec![C::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C::new(1.0, 0.0);
        }
        m
    }

    /// The 1×1 matrix holding a scalar.
    pub fn scalar(z: C) -> Self {
        CMat { rows: 1, cols: 1, data: vec![z] }
    }

    pub fn from_rows(rows: Vec<Vec<C>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        CMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> C) -> Self {
        let mut m = CMat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, rhs: &CMat) -> Result<CMat, EvalError> {
        if self.cols != rhs.rows {
            return Err(EvalError::ShapeMismatch(format!(
                "{}×{} · {}×{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = CMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn kron(&self, rhs: &CMat) -> CMat {
        let mut out = CMat::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for p in 0..rhs.rows {
                    for q in 0..rhs.cols {
                        out[(i * rhs.rows + p, j * rhs.cols + q)] = a * rhs[(p, q)];
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, z: C) -> CMat {
        CMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * z).collect() }
    }

    /// Gauss–Jordan inverse with partial pivoting.
    pub fn inverse(&self) -> Result<CMat, EvalError> {
        if !self.is_square() {
            return Err(EvalError::ShapeMismatch(format!(
                "inverse of non-square {}×{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = CMat::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&i, &j| a[(i, col)].norm().total_cmp(&a[(j, col)].norm()))
                .unwrap();
            if a[(pivot, col)].norm() < 1e-300 {
                return Err(EvalError::Singular(format!("pivot {col}")));
            }
            if pivot != col {
                for j in 0..n {
                    a.data.swap(col * n + j, pivot * n + j);
                    inv.data.swap(col * n + j, pivot * n + j);
                }
            }
            let p = a[(col, col)];
            for j in 0..n {
                a[(col, j)] /= p;
                inv[(col, j)] /= p;
            }
            for i in 0..n {
                if i == col {
                    continue;
                }
                let f = a[(i, col)];
                if f.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    let (aj, ij) = (a[(col, j)], inv[(col, j)]);
                    a[(i, j)] -= f * aj;
                    inv[(i, j)] -= f * ij;
                }
            }
        }
        Ok(inv)
    }

    /// Largest entrywise absolute difference; `f64::INFINITY` on shape mismatch.
    pub fn max_abs_diff(&self, other: &CMat) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &CMat, eps: f64) -> bool {
        self.max_abs_diff(other) < eps
    }

    pub fn entries(&self) -> &[C] {
        &self.data
    }
}

impl std::ops::Index<(usize, usize)> for CMat {
    type Output = C;
    fn index(&self, (i, j): (usize, usize)) -> &C {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C {
        &mut self.data[i * self.cols + j]
    }
}

/// Format a complex number as `re+imi` with 12 significant digits,
/// dropping vanishing parts (`1`, `-2.5i`, `0`).
pub fn fmt_complex(z: C) -> String {
    let fmt_f = |x: f64| {
        let s = format!("{:.*}", 12usize.saturating_sub(1), FloatSig(x));
        s
    };
    struct FloatSig(f64);
    impl fmt::Display for FloatSig {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            let prec = f.precision().unwrap_or(11);
            let s = format!("{:.*e}", prec, self.0);
            // Re-render from scientific to plain decimal when reasonable.
            let v: f64 = s.parse().unwrap();
            if v == 0.0 {
                return write!(f, "0");
            }
            let mag = v.abs().log10().floor() as i32;
            if (-4..12).contains(&mag) {
                let decimals = (11 - mag).max(0) as usize;
                let mut out = format!("{v:.decimals$}");
                if out.contains('.') {
                    while out.ends_with('0') {
                        out.pop();
                    }
                    if out.ends_with('.') {
                        out.pop();
                    }
                }
                write!(f, "{out}")
            } else {
                write!(f, "{v:e}")
            }
        }
    }
    let (re, im) = (z.re, z.im);
    let re0 = format!("{:.12e}", re).parse::<f64>().unwrap() == 0.0 || re == 0.0;
    let im0 = format!("{:.12e}", im).parse::<f64>().unwrap() == 0.0 || im == 0.0;
    // Treat ~1e-12-relative noise as zero only if exactly zero; callers round.
    match (re0, im0) {
        (true, true) => "0".to_string(),
        (false, true) => fmt_f(re),
        (true, false) => format!("{}i", fmt_f(im)),
        (false, false) => {
            if im < 0.0 {
                format!("{}-{}i", fmt_f(re), fmt_f(-im))
            } else {
                format!("{}+{}i", fmt_f(re), fmt_f(im))
            }
        }
    }
}

impl fmt::Display for CMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", fmt_complex(self[(i, j)]))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trip() {
        let q = 1.3;
        let m = CMat::from_rows(vec![
            vec![C::new(q, 0.0), C::new(0.0, 0.0)],
            vec![C::new(1.0, 2.0), C::new(0.0, -1.0)],
        ]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().approx_eq(&CMat::identity(2), 1e-12));
        assert!(inv.mul(&m).unwrap().approx_eq(&CMat::identity(2), 1e-12));
    }

    #[test]
    fn kron_shapes_and_values() {
        let a = CMat::from_rows(vec![vec![C::new(2.0, 0.0)]]);
        let b = CMat::identity(3);
        let k = a.kron(&b);
        assert_eq!((k.rows, k.cols), (3, 3));
        assert!(k.approx_eq(&b.scale(C::new(2.0, 0.0)), 1e-15));
    }

    #[test]
    fn complex_formatting() {
        assert_eq!(fmt_complex(C::new(1.0, 0.0)), "1");
        assert_eq!(fmt_complex(C::new(0.0, -2.5)), "-2.5i");
        assert_eq!(fmt_complex(C::new(0.0, 0.0)), "0");
        assert_eq!(fmt_complex(C::new(1.5, 0.25)), "1.5+0.25i");
        assert_eq!(fmt_complex(C::new(1.0 / 3.0, 0.0)), "0.333333333333");
    }
}
