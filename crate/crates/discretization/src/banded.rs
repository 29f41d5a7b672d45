use crate::error::DiscError;

/// Square band matrix in LAPACK-style column storage, with room for the
/// fill-in produced by partial pivoting.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedMatrix {
    n: usize,
    kl: usize,
    ku: usize,
    // upper bandwidth after pivoting
    ku2: usize,
    ld: usize,
    ab: Vec<f64>,
}

impl BandedMatrix {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        let ku2 = ku + kl;
        let ld = kl + ku2 + 1;
        Self { n, kl, ku, ku2, ld, ab: vec![0.0; ld * n] }
    }

    /// Build from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(n: usize, triplets: &[(usize, usize, f64)]) -> Result<Self, DiscError> {
        let mut kl = 0;
        let mut ku = 0;
        for &(r, c, _) in triplets {
            if r >= n || c >= n {
                return Err(DiscError::OutOfBand { row: r, col: c });
            }
            if r > c {
                kl = kl.max(r - c);
            } else {
                ku = ku.max(c - r);
            }
        }
        let mut m = Self::zeros(n, kl, ku);
        for &(r, c, v) in triplets {
            m.add(r, c, v)?;
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bandwidths(&self) -> (usize, usize) {
        (self.kl, self.ku)
    }

    #[inline]
    fn slot(&self, r: usize, c: usize) -> Option<usize> {
        if r + self.ku2 < c || r > c + self.kl {
            None
        } else {
            Some(c * self.ld + self.ku2 + r - c)
        }
    }

    pub fn add(&mut self, r: usize, c: usize, v: f64) -> Result<(), DiscError> {
        if r + self.ku < c || r > c + self.kl {
            return Err(DiscError::OutOfBand { row: r, col: c });
        }
        let s = self.slot(r, c).ok_or(DiscError::OutOfBand { row: r, col: c })?;
        self.ab[s] += v;
        Ok(())
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.slot(r, c).map_or(0.0, |s| self.ab[s])
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.n];
        for c in 0..self.n {
            let lo = c.saturating_sub(self.ku);
            let hi = (c + self.kl).min(self.n - 1);
            for (r, yr) in y.iter_mut().enumerate().take(hi + 1).skip(lo) {
                *yr += self.ab[c * self.ld + self.ku2 + r - c] * x[c];
            }
        }
        y
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|r| (0..self.n).map(|c| self.get(r, c)).collect()).collect()
    }

    /// LU factorization with partial pivoting.
    pub fn factor(mut self) -> Result<BandedLu, DiscError> {
        let n = self.n;
        let mut piv = vec![0usize; n];
        for j in 0..n {
            let km = self.kl.min(n - 1 - j);
            let col = j * self.ld + self.ku2;
            let mut p = 0;
            let mut best = self.ab[col].abs();
            for t in 1..=km {
                let v = self.ab[col + t].abs();
                if v > best {
                    best = v;
                    p = t;
                }
            }
            piv[j] = j + p;
            if best == 0.0 || !best.is_finite() {
                return Err(DiscError::Singular(j));
            }
            let last = (j + self.ku2).min(n - 1);
            if p != 0 {
                for c in j..=last {
                    let a = c * self.ld + self.ku2 + j - c;
                    self.ab.swap(a, a + p);
                }
            }
            let d = self.ab[col];
            for t in 1..=km {
                self.ab[col + t] /= d;
            }
            for c in j + 1..=last {
                let base = c * self.ld + self.ku2 + j - c;
                let a = self.ab[base];
                if a != 0.0 {
                    for t in 1..=km {
                        self.ab[base + t] -= self.ab[col + t] * a;
                    }
                }
            }
        }
        Ok(BandedLu { m: self, piv })
    }
}

/// Factors of a [`BandedMatrix`], reusable for many right-hand sides.
#[derive(Debug, Clone)]
pub struct BandedLu {
    m: BandedMatrix,
    piv: Vec<usize>,
}

impl BandedLu {
    pub fn n(&self) -> usize {
        self.m.n
    }

    pub fn solve_in_place(&self, b: &mut [f64]) -> Result<(), DiscError> {
        let m = &self.m;
        let n = m.n;
        if b.len() != n {
            return Err(DiscError::Dimension { expected: n, got: b.len() });
        }
        for j in 0..n {
            b.swap(j, self.piv[j]);
            let km = m.kl.min(n - 1 - j);
            let col = j * m.ld + m.ku2;
            let bj = b[j];
            if bj != 0.0 {
                for t in 1..=km {
                    b[j + t] -= m.ab[col + t] * bj;
                }
            }
        }
        for j in (0..n).rev() {
            let col = j * m.ld + m.ku2;
            b[j] /= m.ab[col];
            let bj = b[j];
            let lo = j.saturating_sub(m.ku2);
            for i in lo..j {
                b[i] -= m.ab[col - (j - i)] * bj;
            }
        }
        Ok(())
    }

    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>, DiscError> {
        let mut x = b.to_vec();
        self.solve_in_place(&mut x)?;
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::{DMatrix, DVector};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_band(n: usize, kl: usize, ku: usize, seed: u64, weak_diag: bool) -> Vec<(usize, usize, f64)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut t = Vec::new();
        for r in 0..n {
            for c in r.saturating_sub(kl)..(r + ku + 1).min(n) {
                let mut v: f64 = rng.random_range(-1.0..1.0);
                if r == c && weak_diag {
                    v *= 1e-3;
                }
                t.push((r, c, v));
            }
        }
        t
    }

    #[test]
    fn matches_dense_solve_with_pivoting() {
        for (n, kl, ku, seed) in [(7, 2, 1, 1), (40, 5, 3, 2), (60, 1, 7, 3), (25, 6, 6, 4)] {
            let t = random_band(n, kl, ku, seed, true);
            let m = BandedMatrix::from_triplets(n, &t).unwrap();
            let dense = DMatrix::from_fn(n, n, |r, c| m.get(r, c));
            let b: Vec<f64> = (0..n).map(|i| (i as f64 * 0.37).sin()).collect();
            let x = m.clone().factor().unwrap().solve(&b).unwrap();
            let want = dense.lu().solve(&DVector::from_vec(b.clone())).unwrap();
            for i in 0..n {
                assert!((x[i] - want[i]).abs() <= 1e-9 * want.amax().max(1.0), "n={n} i={i}");
            }
            let r = m.matvec(&x);
            for i in 0..n {
                assert!((r[i] - b[i]).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn singular_is_reported() {
        let t = vec![(0, 0, 1.0), (1, 0, 1.0), (0, 1, 1.0), (1, 1, 1.0)];
        let m = BandedMatrix::from_triplets(2, &t).unwrap();
        assert!(matches!(m.factor(), Err(DiscError::Singular(_))));
    }

    #[test]
    fn out_of_band_rejected() {
        let mut m = BandedMatrix::zeros(5, 1, 1);
        assert!(m.add(4, 0, 1.0).is_err());
        assert!(m.add(1, 0, 1.0).is_ok());
    }
}
