//! Small dense linear algebra: complex LU determinant, one-sided Jacobi SVD,
//! symmetric Jacobi eigenvalues and an exact rational determinant.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::{Complex, Real};

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<T> {
    n: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![Complex::new(T::zero(), T::zero()); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex::new(T::one(), T::zero());
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                data.push(f(r, c));
            }
        }
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        Self::from_fn(n, |r, c| {
            let mut acc = Complex::new(T::zero(), T::zero());
            for j in 0..n {
                acc = acc + self[(r, j)] * other[(j, c)];
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        (0..self.n)
            .map(|r| {
                let mut acc = Complex::new(T::zero(), T::zero());
                for (c, x) in v.iter().enumerate() {
                    acc = acc + self[(r, c)] * *x;
                }
                acc
            })
            .collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |r, c| self[(c, r)].conj())
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, z| m.max(z.norm()))
    }

    /// Determinant by LU factorization with partial pivoting.
    pub fn determinant(&self) -> Complex<T> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = Complex::new(T::one(), T::zero());
        for col in 0..n {
            let mut piv = col;
            let mut best = a[col * n + col].norm();
            for r in col + 1..n {
                let v = a[r * n + col].norm();
                if v > best {
                    best = v;
                    piv = r;
                }
            }
            if best == T::zero() {
                return Complex::new(T::zero(), T::zero());
            }
            if piv != col {
                for c in 0..n {
                    a.swap(col * n + c, piv * n + c);
                }
                det = -det;
            }
            let p = a[col * n + col];
            det = det * p;
            for r in col + 1..n {
                let f = a[r * n + col] / p;
                if f.norm() == T::zero() {
                    continue;
                }
                for c in col + 1..n {
                    let t = a[col * n + c];
                    a[r * n + c] = a[r * n + c] - f * t;
                }
            }
        }
        det
    }

    /// Singular value decomposition by one-sided Jacobi rotations.
    pub fn svd(&self) -> Svd<T> {
        jacobi_svd(self)
    }
}

impl<T> std::ops::Index<(usize, usize)> for CMatrix<T> {
    type Output = Complex<T>;
    fn index(&self, (r, c): (usize, usize)) -> &Complex<T> {
        &self.data[r * self.n + c]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for CMatrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[r * self.n + c]
    }
}

/// Singular values in ascending order with the matching right singular vectors.
#[derive(Debug, Clone)]
pub struct Svd<T> {
    pub values: Vec<T>,
    /// `vectors[i]` is the right singular vector belonging to `values[i]`.
    pub vectors: Vec<Vec<Complex<T>>>,
}

impl<T: Real> Svd<T> {
    pub fn largest(&self) -> T {
        self.values.last().copied().unwrap_or_else(T::zero)
    }

    fn cutoff(&self, rel_tol: T) -> T {
        rel_tol * self.largest().max(T::one())
    }

    /// Right singular vectors whose singular value is below `rel_tol` times
    /// the larger of one and the largest singular value. The floor of one
    /// keeps a matrix that vanishes entirely (all of `I - S D(k)` on a single
    /// loop) from having an empty null space.
    pub fn null_space(&self, rel_tol: T) -> Vec<Vec<Complex<T>>> {
        let cut = self.cutoff(rel_tol);
        self.values
            .iter()
            .zip(&self.vectors)
            .filter(|(s, _)| **s <= cut)
            .map(|(_, v)| v.clone())
            .collect()
    }

    pub fn null_dimension(&self, rel_tol: T) -> usize {
        let cut = self.cutoff(rel_tol);
        self.values.iter().filter(|s| **s <= cut).count()
    }
}

fn jacobi_svd<T: Real>(m: &CMatrix<T>) -> Svd<T> {
    let n = m.n;
    // Work column-major: cols[j] is column j of A, v[j] column j of V.
    let mut cols: Vec<Vec<Complex<T>>> = (0..n).map(|c| (0..n).map(|r| m[(r, c)]).collect()).collect();
    let zero = Complex::new(T::zero(), T::zero());
    let mut v: Vec<Vec<Complex<T>>> = (0..n)
        .map(|c| {
            let mut col = vec![zero; n];
            col[c] = Complex::new(T::one(), T::zero());
            col
        })
        .collect();
    let eps = T::epsilon();
    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (alpha, beta, gamma) = {
                    let (cp, cq) = (&cols[p], &cols[q]);
                    let mut a = T::zero();
                    let mut b = T::zero();
                    let mut g = zero;
                    for i in 0..n {
                        a += cp[i].norm_sqr();
                        b += cq[i].norm_sqr();
                        g = g + cp[i].conj() * cq[i];
                    }
                    (a, b, g)
                };
                let gnorm = gamma.norm();
                if gnorm == T::zero() || gnorm <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / gnorm; // e^{i phi}
                let zeta = (beta - alpha) / (T::lit(2.0) * gnorm);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                let pc = phase.conj();
                for mat in [&mut cols, &mut v] {
                    for i in 0..n {
                        let ap = mat[p][i];
                        let aq = mat[q][i] * pc;
                        mat[p][i] = ap * c - aq * s;
                        mat[q][i] = ap * s + aq * c;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut pairs: Vec<(T, Vec<Complex<T>>)> = cols
        .iter()
        .zip(v)
        .map(|(c, vc)| (c.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt(), vc))
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
    let (values, vectors) = pairs.into_iter().unzip();
    Svd { values, vectors }
}

/// Eigenvalues of a real symmetric matrix (row-major, `n × n`) by cyclic Jacobi, ascending.
pub fn symmetric_eigenvalues<T: Real>(a: &[T], n: usize) -> Vec<T> {
    assert_eq!(a.len(), n * n);
    let mut m = a.to_vec();
    for _sweep in 0..100 {
        let mut off = T::zero();
        let mut diag = T::zero();
        for r in 0..n {
            for c in 0..n {
                if r == c {
                    diag += m[r * n + c] * m[r * n + c];
                } else {
                    off += m[r * n + c] * m[r * n + c];
                }
            }
        }
        if off <= T::epsilon() * T::epsilon() * diag || off == T::zero() {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq == T::zero() {
                    continue;
                }
                let theta = (m[q * n + q] - m[p * n + p]) / (T::lit(2.0) * apq);
                let t = theta.signum() / (theta.abs() + (T::one() + theta * theta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = m[k * n + p];
                    let akq = m[k * n + q];
                    m[k * n + p] = c * akp - s * akq;
                    m[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = m[p * n + k];
                    let aqk = m[q * n + k];
                    m[p * n + k] = c * apk - s * aqk;
                    m[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<T> = (0..n).map(|i| m[i * n + i]).collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    ev
}

/// Exact determinant of a rational matrix given as `(row, col, num, den)` entries.
pub fn rational_determinant(n: usize, entries: &[(usize, usize, i64, i64)]) -> BigRational {
    let mut a = vec![BigRational::zero(); n * n];
    for &(r, c, num, den) in entries {
        a[r * n + c] = BigRational::new(BigInt::from(num), BigInt::from(den));
    }
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            for c in 0..n {
                a.swap(col * n + c, piv * n + c);
            }
            det = -det;
        }
        let p = a[col * n + col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r * n + col].is_zero() {
                continue;
            }
            let f = &a[r * n + col] / &p;
            for c in col..n {
                let t = &f * &a[col * n + c];
                a[r * n + c] -= t;
            }
        }
    }
    det
}

/// Sign of an exact rational as `-1`, `0` or `1`.
pub fn rational_sign(x: &BigRational) -> i64 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}
