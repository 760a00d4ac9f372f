//! Prime fields F_p with p < 2³¹ and dense linear algebra over them.

use serde::Serialize;

use super::GeometryError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeFieldSpec {
    p: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeFieldSpec {
    pub fn new(p: u64) -> Result<Self, GeometryError> {
        if p <= 3 || p >= 1 << 31 || !is_prime(p) {
            return Err(GeometryError::NotPrime(p));
        }
        Ok(PrimeFieldSpec { p })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    pub fn from_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    /// Scales so the first nonzero coordinate is 1; `None` for the zero vector.
    pub fn normalize(&self, v: &[u64]) -> Option<Vec<u64>> {
        let lead = *v.iter().find(|&&x| x != 0)?;
        let li = self.inv(lead);
        Some(v.iter().map(|&x| self.mul(x, li)).collect())
    }

    pub fn dot(&self, a: &[u64], b: &[u64]) -> u64 {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| (acc + x * y) % self.p)
    }

    /// Σ cᵢ vᵢ.
    pub fn combine(&self, coeffs: &[u64], vectors: &[Vec<u64>]) -> Vec<u64> {
        let n = vectors.first().map_or(0, Vec::len);
        let mut out = vec![0; n];
        for (c, v) in coeffs.iter().zip(vectors) {
            for (o, x) in out.iter_mut().zip(v) {
                *o = (*o + c * x) % self.p;
            }
        }
        out
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&self, m: &mut [Vec<u64>]) -> Vec<usize> {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(r, pr);
            let inv = self.inv(m[r][c]);
            for x in m[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == r || row[c] == 0 {
                    continue;
                }
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row).skip(c) {
                    *x = self.sub(*x, self.mul(f, y));
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, m: &[Vec<u64>]) -> usize {
        let mut m = m.to_vec();
        self.rref(&mut m).len()
    }

    /// Basis of {x : M x = 0}, one vector per free column, in column order.
    pub fn kernel(&self, m: &[Vec<u64>], cols: usize) -> Vec<Vec<u64>> {
        let mut m = m.to_vec();
        let pivots = self.rref(&mut m);
        let mut is_pivot = vec![false; cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![0; cols];
                v[f] = 1;
                for (r, &c) in pivots.iter().enumerate() {
                    v[c] = self.neg(m[r][f]);
                }
                v
            })
            .collect()
    }

    /// Coordinates of `v` in the span of `basis`, if it lies there.
    pub fn solve_in_span(&self, basis: &[Vec<u64>], v: &[u64]) -> Option<Vec<u64>> {
        let k = basis.len();
        // columns: basis vectors then v
        let mut m: Vec<Vec<u64>> = (0..v.len())
            .map(|i| basis.iter().map(|b| b[i]).chain(std::iter::once(v[i])).collect())
            .collect();
        let pivots = self.rref(&mut m);
        if pivots.contains(&k) || pivots.len() < k {
            return None;
        }
        Some((0..k).map(|r| m[r][k]).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(PrimeFieldSpec::new(10007).is_ok());
        assert!(PrimeFieldSpec::new(31).is_ok());
        assert_eq!(PrimeFieldSpec::new(6), Err(GeometryError::NotPrime(6)));
        assert!(PrimeFieldSpec::new(3).is_err());
        assert!(PrimeFieldSpec::new(2147483647).is_ok());
        assert!(PrimeFieldSpec::new(2147483659).is_err());
    }

    #[test]
    fn kernel_and_rank() {
        let f = PrimeFieldSpec::new(7).unwrap();
        let m = vec![vec![1, 2, 3], vec![2, 4, 6]];
        assert_eq!(f.rank(&m), 1);
        let k = f.kernel(&m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            for row in &m {
                assert_eq!(f.dot(row, v), 0);
            }
        }
    }

    #[test]
    fn normalize_and_solve() {
        let f = PrimeFieldSpec::new(11).unwrap();
        assert_eq!(f.normalize(&[0, 3, 6]), Some(vec![0, 1, 2]));
        assert_eq!(f.normalize(&[0, 0]), None);
        let basis = vec![vec![1, 0, 1], vec![0, 1, 1]];
        assert_eq!(f.solve_in_span(&basis, &[2, 3, 5]), Some(vec![2, 3]));
        assert_eq!(f.solve_in_span(&basis, &[0, 0, 1]), None);
    }
}
