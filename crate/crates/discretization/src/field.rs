use std::io::Write;

use crate::error::DiscError;

/// Cell averages `(P, U, V)` stored column by column: index `(i * ny + j) * 3 + k`.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimitiveField {
    pub nx: usize,
    pub ny: usize,
    pub data: Vec<f64>,
}

impl PrimitiveField {
    pub fn zeros(nx: usize, ny: usize) -> Self {
        Self { nx, ny, data: vec![0.0; nx * ny * 3] }
    }

    pub fn from_vec(nx: usize, ny: usize, data: Vec<f64>) -> Result<Self, DiscError> {
        if data.len() != nx * ny * 3 {
            return Err(DiscError::Dimension { expected: nx * ny * 3, got: data.len() });
        }
        Ok(Self { nx, ny, data })
    }

    #[inline]
    pub fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.ny + j) * 3 + k
    }

    pub fn get(&self, i: usize, j: usize) -> [f64; 3] {
        let b = self.idx(i, j, 0);
        [self.data[b], self.data[b + 1], self.data[b + 2]]
    }

    pub fn set(&mut self, i: usize, j: usize, w: [f64; 3]) {
        let b = self.idx(i, j, 0);
        self.data[b..b + 3].copy_from_slice(&w);
    }

    /// The `3 * ny` values of column `i`.
    pub fn column(&self, i: usize) -> &[f64] {
        &self.data[i * self.ny * 3..(i + 1) * self.ny * 3]
    }

    pub fn columns(&self, i0: usize, i1: usize) -> &[f64] {
        &self.data[i0 * self.ny * 3..i1 * self.ny * 3]
    }

    pub fn columns_mut(&mut self, i0: usize, i1: usize) -> &mut [f64] {
        &mut self.data[i0 * self.ny * 3..i1 * self.ny * 3]
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data.iter().zip(&other.data).fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    /// Rows `i, j, P, U, V`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), DiscError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["i", "j", "P", "U", "V"])?;
        for i in 0..self.nx {
            for j in 0..self.ny {
                let [p, u, v] = self.get(i, j);
                w.write_record([i.to_string(), j.to_string(), format!("{p:e}"), format!("{u:e}"), format!("{v:e}")])?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_has_one_row_per_cell() {
        let mut f = PrimitiveField::zeros(2, 3);
        f.set(1, 2, [1.0, 2.0, 3.0]);
        let mut buf = Vec::new();
        f.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 7);
        assert!(text.lines().last().unwrap().starts_with("1,2,1e0,2e0,3e0"));
    }
}
