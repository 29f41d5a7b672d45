use euler_core::{characteristic_basis, flux_split, LinearizationState, Matrix3, Vector3};
use nalgebra::DMatrix;

use crate::banded::{BandedLu, BandedMatrix};
use crate::error::DiscError;
use crate::field::PrimitiveField;
use crate::grid::{Grid, YClosure};
use crate::states::StateField;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    West,
    East,
}

impl Side {
    fn name(self) -> &'static str {
        match self {
            Side::West => "west",
            Side::East => "east",
        }
    }

    fn normal(self) -> [f64; 2] {
        match self {
            Side::West => [-1.0, 0.0],
            Side::East => [1.0, 0.0],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SideKind {
    /// Characteristic ghost state `W = 0`.
    Outer,
    /// Extra unknowns: the trace state `G` seen by the edge flux, closed by
    /// the outgoing characteristics of the adjacent cell plus caller-supplied
    /// conditions for the incoming ones.
    Trace,
}

/// Unknown numbering for a strip of columns `i0..i1`: west trace block,
/// then cells column by column, then east trace block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StripLayout {
    pub i0: usize,
    pub i1: usize,
    pub ny: usize,
    pub west: SideKind,
    pub east: SideKind,
}

impl StripLayout {
    pub fn ncols(&self) -> usize {
        self.i1 - self.i0
    }

    pub fn n_cells(&self) -> usize {
        self.ncols() * self.ny * 3
    }

    fn west_len(&self) -> usize {
        match self.west {
            SideKind::Outer => 0,
            SideKind::Trace => 3 * self.ny,
        }
    }

    pub fn len(&self) -> usize {
        let east = match self.east {
            SideKind::Outer => 0,
            SideKind::Trace => 3 * self.ny,
        };
        self.west_len() + self.n_cells() + east
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Global column `i`, row `j`, component `k`.
    pub fn cell(&self, i: usize, j: usize, k: usize) -> usize {
        self.west_len() + ((i - self.i0) * self.ny + j) * 3 + k
    }

    pub fn cells_range(&self) -> std::ops::Range<usize> {
        self.west_len()..self.west_len() + self.n_cells()
    }

    pub fn trace(&self, side: Side, j: usize, k: usize) -> usize {
        match side {
            Side::West => 3 * j + k,
            Side::East => self.west_len() + self.n_cells() + 3 * j + k,
        }
    }

    pub fn kind(&self, side: Side) -> SideKind {
        match side {
            Side::West => self.west,
            Side::East => self.east,
        }
    }
}

/// Indices (in the `(u - c, u, u + c)` ordering along `+x`) of the
/// characteristics leaving the strip through `side`.
fn outgoing(basis_speeds: &[f64; 3], side: Side) -> Vec<usize> {
    (0..3)
        .filter(|&k| match side {
            Side::West => basis_speeds[k] < 0.0,
            Side::East => basis_speeds[k] > 0.0,
        })
        .collect()
}

/// Number of conditions a trace side needs, for a state with `0 < u < c`.
pub fn incoming_count(side: Side) -> usize {
    match side {
        Side::West => 2,
        Side::East => 1,
    }
}

/// Rows of the left eigenvectors (along `+x`) of the characteristics entering
/// through `side`, as `ny x 3ny` operators on a trace block. These give the
/// incoming-characteristic transmission conditions.
pub fn incoming_characteristic_ops(states: &StateField, side: Side) -> Result<Vec<DMatrix<f64>>, DiscError> {
    let ny = states.ny();
    let mut ops = vec![DMatrix::zeros(ny, 3 * ny); incoming_count(side)];
    for j in 0..ny {
        let s = states.row(j);
        s.require_outflow().map_err(|source| DiscError::BadCell { row: j, source })?;
        let b = characteristic_basis(s, [1.0, 0.0]).map_err(|source| DiscError::BadCell { row: j, source })?;
        let out = outgoing(&b.speeds, side);
        let inc: Vec<usize> = (0..3).filter(|k| !out.contains(k)).collect();
        for (p, &k) in inc.iter().enumerate() {
            let l = b.left_row(k);
            for c in 0..3 {
                ops[p][(j, 3 * j + c)] = l[c];
            }
        }
    }
    Ok(ops)
}

pub struct OperatorBuilder<'a> {
    grid: &'a Grid,
    states: &'a StateField,
    layout: StripLayout,
    west_ops: Vec<DMatrix<f64>>,
    east_ops: Vec<DMatrix<f64>>,
}

impl<'a> OperatorBuilder<'a> {
    /// Strip of columns `i0..i1`. Sides on the physical boundary start closed
    /// by the outer closure; interior sides must be given trace conditions.
    pub fn new(grid: &'a Grid, states: &'a StateField, i0: usize, i1: usize) -> Result<Self, DiscError> {
        if states.ny() != grid.ny {
            return Err(DiscError::Dimension { expected: grid.ny, got: states.ny() });
        }
        if i0 >= i1 || i1 > grid.nx {
            return Err(DiscError::Grid(format!("bad strip {i0}..{i1} for nx = {}", grid.nx)));
        }
        let layout = StripLayout { i0, i1, ny: grid.ny, west: SideKind::Outer, east: SideKind::Outer };
        Ok(Self { grid, states, layout, west_ops: Vec::new(), east_ops: Vec::new() })
    }

    fn is_physical(&self, side: Side) -> bool {
        match side {
            Side::West => self.layout.i0 == 0,
            Side::East => self.layout.i1 == self.grid.nx,
        }
    }

    pub fn apply_outer_bc(mut self, side: Side) -> Result<Self, DiscError> {
        if !self.is_physical(side) {
            return Err(DiscError::NotPhysical(side.name()));
        }
        match side {
            Side::West => {
                self.layout.west = SideKind::Outer;
                self.west_ops.clear();
            }
            Side::East => {
                self.layout.east = SideKind::Outer;
                self.east_ops.clear();
            }
        }
        Ok(self)
    }

    /// Open `side` as a trace side closed by `ops` (each `ny x 3ny`, acting on the trace block).
    pub fn with_trace(mut self, side: Side, ops: Vec<DMatrix<f64>>) -> Result<Self, DiscError> {
        let ny = self.grid.ny;
        if ops.len() != incoming_count(side) {
            return Err(DiscError::TraceRows { side: side.name(), expected: incoming_count(side), got: ops.len() });
        }
        for op in &ops {
            if op.nrows() != ny || op.ncols() != 3 * ny {
                return Err(DiscError::Dimension { expected: ny * 3 * ny, got: op.nrows() * op.ncols() });
            }
        }
        match side {
            Side::West => {
                self.layout.west = SideKind::Trace;
                self.west_ops = ops;
            }
            Side::East => {
                self.layout.east = SideKind::Trace;
                self.east_ops = ops;
            }
        }
        Ok(self)
    }

    fn split(&self, s: &LinearizationState, row: usize, n: [f64; 2]) -> Result<(Matrix3<f64>, Matrix3<f64>), DiscError> {
        let f = flux_split(s, n).map_err(|source| DiscError::BadCell { row, source })?;
        Ok((f.a_plus, f.a_minus))
    }

    pub fn triplets(&self) -> Result<Vec<(usize, usize, f64)>, DiscError> {
        for side in [Side::West, Side::East] {
            if !self.is_physical(side) && self.layout.kind(side) != SideKind::Trace {
                return Err(DiscError::TraceRows { side: side.name(), expected: incoming_count(side), got: 0 });
            }
        }
        let g = self.grid;
        let l = self.layout;
        let ny = g.ny;
        let beta = g.beta();
        let mut t = Vec::new();
        let block = |t: &mut Vec<(usize, usize, f64)>, r: usize, c: usize, m: &Matrix3<f64>, scale: f64| {
            for a in 0..3 {
                for b in 0..3 {
                    let v = m[(a, b)] * scale;
                    if v != 0.0 {
                        t.push((r + a, c + b, v));
                    }
                }
            }
        };
        for i in l.i0..l.i1 {
            for j in 0..ny {
                let s = self.states.row(j);
                let r = l.cell(i, j, 0);
                for k in 0..3 {
                    t.push((r + k, r + k, beta));
                }
                for side in [Side::East, Side::West] {
                    let (ap, am) = self.split(s, j, side.normal())?;
                    block(&mut t, r, r, &ap, 1.0 / g.dx);
                    let nbr = match side {
                        Side::East if i + 1 < l.i1 => Some(l.cell(i + 1, j, 0)),
                        Side::West if i > l.i0 => Some(l.cell(i - 1, j, 0)),
                        _ if l.kind(side) == SideKind::Trace => Some(l.trace(side, j, 0)),
                        _ => None,
                    };
                    if let Some(c) = nbr {
                        block(&mut t, r, c, &am, 1.0 / g.dx);
                    }
                }
                for (dj, n) in [(1isize, [0.0, 1.0]), (-1, [0.0, -1.0])] {
                    let jj = j as isize + dj;
                    if (0..ny as isize).contains(&jj) {
                        let jj = jj as usize;
                        let (ap, am) = self.split(&s.mean(self.states.row(jj)), j, n)?;
                        block(&mut t, r, r, &ap, 1.0 / g.dy);
                        block(&mut t, r, l.cell(i, jj, 0), &am, 1.0 / g.dy);
                    } else {
                        match g.closure {
                            YClosure::Wall => {
                                let (ap, _) = self.split(s, j, n)?;
                                block(&mut t, r, r, &ap, 1.0 / g.dy);
                            }
                            YClosure::AntiPeriodic => {
                                let jj = jj.rem_euclid(ny as isize) as usize;
                                let (ap, am) = self.split(&s.mean(self.states.row(jj)), j, n)?;
                                block(&mut t, r, r, &ap, 1.0 / g.dy);
                                block(&mut t, r, l.cell(i, jj, 0), &am, -1.0 / g.dy);
                            }
                        }
                    }
                }
            }
        }
        for side in [Side::West, Side::East] {
            if l.kind(side) != SideKind::Trace {
                continue;
            }
            let ops = match side {
                Side::West => &self.west_ops,
                Side::East => &self.east_ops,
            };
            let icell = match side {
                Side::West => l.i0,
                Side::East => l.i1 - 1,
            };
            for j in 0..ny {
                let s = self.states.row(j);
                s.require_outflow().map_err(|source| DiscError::BadCell { row: j, source })?;
                let b = characteristic_basis(s, [1.0, 0.0]).map_err(|source| DiscError::BadCell { row: j, source })?;
                let out = outgoing(&b.speeds, side);
                let base = l.trace(side, j, 0);
                for (m, &k) in out.iter().enumerate() {
                    let lrow: Vector3<f64> = b.left_row(k);
                    for c in 0..3 {
                        t.push((base + m, l.trace(side, j, c), lrow[c]));
                        t.push((base + m, l.cell(icell, j, c), -lrow[c]));
                    }
                }
                for (p, op) in ops.iter().enumerate() {
                    let r = base + out.len() + p;
                    for c in 0..3 * ny {
                        let v = op[(j, c)];
                        if v != 0.0 {
                            t.push((r, l.trace(side, 0, 0) + c, v));
                        }
                    }
                }
            }
        }
        Ok(t)
    }

    pub fn build(self) -> Result<SubdomainOperator, DiscError> {
        let t = self.triplets()?;
        let matrix = BandedMatrix::from_triplets(self.layout.len(), &t)?;
        let lu = matrix.clone().factor()?;
        let outgoing_rows = [Side::West, Side::East].map(|side| 3 - incoming_count(side));
        Ok(SubdomainOperator { layout: self.layout, matrix, lu, outgoing_rows })
    }
}

/// Values of the solved unknowns of one strip.
#[derive(Debug, Clone, PartialEq)]
pub struct StripSolution {
    pub cells: Vec<f64>,
    pub west: Option<Vec<f64>>,
    pub east: Option<Vec<f64>>,
}

/// Assembled and factorized strip operator.
#[derive(Debug, Clone)]
pub struct SubdomainOperator {
    pub layout: StripLayout,
    matrix: BandedMatrix,
    lu: BandedLu,
    outgoing_rows: [usize; 2],
}

impl SubdomainOperator {
    pub fn matrix(&self) -> &BandedMatrix {
        &self.matrix
    }

    /// Full right-hand side from a cell source (empty slice for zero) and, per
    /// trace side, one `ny`-vector per condition operator.
    pub fn rhs(&self, source: &[f64], west: &[&[f64]], east: &[&[f64]]) -> Result<Vec<f64>, DiscError> {
        let l = self.layout;
        let mut b = vec![0.0; l.len()];
        if !source.is_empty() {
            if source.len() != l.n_cells() {
                return Err(DiscError::Dimension { expected: l.n_cells(), got: source.len() });
            }
            b[l.cells_range()].copy_from_slice(source);
        }
        for (si, (side, data)) in [(Side::West, west), (Side::East, east)].into_iter().enumerate() {
            if l.kind(side) != SideKind::Trace {
                if !data.is_empty() {
                    return Err(DiscError::TraceRows { side: side.name(), expected: 0, got: data.len() });
                }
                continue;
            }
            if data.len() != incoming_count(side) {
                return Err(DiscError::TraceRows { side: side.name(), expected: incoming_count(side), got: data.len() });
            }
            let nout = self.outgoing_rows[si];
            for (p, d) in data.iter().enumerate() {
                if d.len() != l.ny {
                    return Err(DiscError::Dimension { expected: l.ny, got: d.len() });
                }
                for j in 0..l.ny {
                    b[l.trace(side, j, 0) + nout + p] = d[j];
                }
            }
        }
        Ok(b)
    }

    pub fn solve_full(&self, b: &[f64]) -> Result<Vec<f64>, DiscError> {
        self.lu.solve(b)
    }

    pub fn solve(&self, source: &[f64], west: &[&[f64]], east: &[&[f64]]) -> Result<StripSolution, DiscError> {
        let x = self.solve_full(&self.rhs(source, west, east)?)?;
        Ok(self.split_solution(&x))
    }

    pub fn split_solution(&self, x: &[f64]) -> StripSolution {
        let l = self.layout;
        let ny = l.ny;
        let trace = |side: Side| match l.kind(side) {
            SideKind::Trace => {
                let s = l.trace(side, 0, 0);
                Some(x[s..s + 3 * ny].to_vec())
            }
            SideKind::Outer => None,
        };
        StripSolution { cells: x[l.cells_range()].to_vec(), west: trace(Side::West), east: trace(Side::East) }
    }
}

/// Single-domain operator over the whole grid with outer closures on all sides.
pub fn assemble_interior(grid: &Grid, states: &StateField) -> Result<SubdomainOperator, DiscError> {
    OperatorBuilder::new(grid, states, 0, grid.nx)?.build()
}

pub fn local_solve(op: &SubdomainOperator, rhs: &PrimitiveField) -> Result<PrimitiveField, DiscError> {
    let l = op.layout;
    if l.west != SideKind::Outer || l.east != SideKind::Outer || l.i0 != 0 || l.i1 != rhs.nx || l.ny != rhs.ny {
        return Err(DiscError::Dimension { expected: l.n_cells(), got: rhs.data.len() });
    }
    let x = op.solve_full(&rhs.data)?;
    PrimitiveField::from_vec(rhs.nx, rhs.ny, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn rig(nx: usize, ny: usize, u: f64, v: f64) -> (Grid, StateField) {
        let s = LinearizationState::new(1.2, u, v, 1.1, 0.4).unwrap();
        let g = Grid::new(nx, ny, 1.0, 0.8, 2.5).unwrap();
        (g, StateField::constant(s, ny).unwrap())
    }

    #[test]
    fn interior_stencil_weights() {
        let (g, st) = rig(4, 4, 0.3, 0.2);
        let op = assemble_interior(&g, &st).unwrap();
        let s = st.row(1);
        let fx = flux_split(s, [1.0, 0.0]).unwrap();
        let fy = flux_split(s, [0.0, 1.0]).unwrap();
        let l = op.layout;
        let diag = Matrix3::identity() * g.beta() + fx.a_abs / g.dx + fy.a_abs / g.dy;
        let at = |r: usize, c: usize| Matrix3::from_fn(|a, b| op.matrix().get(r + a, c + b));
        let r = l.cell(1, 1, 0);
        assert_relative_eq!(at(r, r), diag, epsilon = 1e-12);
        assert_relative_eq!(at(r, l.cell(2, 1, 0)), fx.a_minus / g.dx, epsilon = 1e-12);
        assert_relative_eq!(at(r, l.cell(0, 1, 0)), -fx.a_plus / g.dx, epsilon = 1e-12);
        assert_relative_eq!(at(r, l.cell(1, 2, 0)), fy.a_minus / g.dy, epsilon = 1e-12);
        assert_relative_eq!(at(r, l.cell(1, 0, 0)), -fy.a_plus / g.dy, epsilon = 1e-12);
    }

    #[test]
    fn west_boundary_row_drops_only_the_neighbour() {
        let (g, st) = rig(4, 4, 0.3, 0.2);
        let op = assemble_interior(&g, &st).unwrap();
        let l = op.layout;
        let r0 = l.cell(0, 2, 0);
        let r1 = l.cell(1, 2, 0);
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(op.matrix().get(r0 + a, r0 + b), op.matrix().get(r1 + a, r1 + b));
            }
        }
    }

    #[test]
    fn interface_side_is_not_physical() {
        let (g, st) = rig(4, 3, 0.3, 0.0);
        let b = OperatorBuilder::new(&g, &st, 0, 2).unwrap();
        assert!(matches!(b.apply_outer_bc(Side::East), Err(DiscError::NotPhysical("east"))));
        let b = OperatorBuilder::new(&g, &st, 0, 2).unwrap();
        assert!(b.build().is_err());
    }

    #[test]
    fn classical_trace_rows_reproduce_neighbour_flux() {
        // A trace closed by the neighbour's incoming characteristics gives
        // the same edge flux as the single-domain operator.
        let (g, st) = rig(4, 3, 0.3, 0.1);
        let ops = incoming_characteristic_ops(&st, Side::East).unwrap();
        let left = OperatorBuilder::new(&g, &st, 0, 2).unwrap().with_trace(Side::East, ops).unwrap().build().unwrap();
        let whole = assemble_interior(&g, &st).unwrap();
        let mut x = vec![0.0; 36];
        for (n, v) in x.iter_mut().enumerate() {
            *v = ((n * 7 + 3) % 11) as f64 / 11.0 - 0.4;
        }
        let f = whole.matrix().matvec(&x);
        let nbr: Vec<f64> = x[18..27].to_vec();
        let inc = incoming_characteristic_ops(&st, Side::East).unwrap();
        let d: Vec<f64> = (&inc[0] * nalgebra::DVector::from_column_slice(&nbr)).iter().copied().collect();
        let sol = left.solve(&f[..18], &[], &[&d]).unwrap();
        for (a, b) in sol.cells.iter().zip(&x[..18]) {
            assert_relative_eq!(a, b, epsilon = 1e-12);
        }
    }
}
