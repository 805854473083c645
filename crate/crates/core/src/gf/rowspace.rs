//! Row-echelon subspace accumulators shared by spinning, the chopper, and
//! quotient construction.

use super::matrix::FieldMatrix;
use super::scalar::invm;
use super::vector::FieldVector;

/// A growing row space kept in echelon form (rows ordered by pivot column,
/// pivots normalized to 1). Supports membership reduction and incremental
/// insertion; no back-elimination is performed, reduction just sweeps rows
/// in pivot order.
#[derive(Clone, Debug)]
pub struct RowSpace {
    p: u8,
    width: usize,
    rows: Vec<FieldVector>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(p: u8, width: usize) -> Self {
        RowSpace { p, width, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[FieldVector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn reduce_in_place(&self, v: &mut FieldVector) {
        for (row, &pivot) in self.rows.iter().zip(&self.pivots) {
            let c = v.get(pivot);
            if c != 0 {
                v.sub_scaled(row, c);
            }
        }
    }

    pub fn reduce(&self, v: &FieldVector) -> FieldVector {
        let mut out = v.clone();
        self.reduce_in_place(&mut out);
        out
    }

    pub fn contains(&self, v: &FieldVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Insert a vector; returns true if it enlarged the span.
    pub fn insert(&mut self, v: &FieldVector) -> bool {
        debug_assert_eq!(v.len(), self.width);
        let mut red = self.reduce(v);
        let Some(pivot) = red.first_nonzero() else {
            return false;
        };
        let lead = red.get(pivot);
        if lead != 1 {
            red.scale(invm(lead, self.p));
        }
        let pos = self.pivots.partition_point(|&c| c < pivot);
        self.pivots.insert(pos, pivot);
        self.rows.insert(pos, red);
        true
    }

    /// The rows as a dim × width matrix.
    pub fn to_matrix(&self) -> FieldMatrix {
        FieldMatrix::from_rows(self.p, self.width, &self.rows)
    }
}

/// Coordinate solver for an arbitrary (independent) spanning set: answers
/// "express v in the given basis", tracking how each echelon row was formed.
pub struct SubspaceSolver {
    space: RowSpace,
    /// transform[i] = coordinates of space.rows[i] in the original basis.
    transform: Vec<FieldVector>,
    nbasis: usize,
    p: u8,
}

impl SubspaceSolver {
    /// Build from an independent spanning list; returns None if the list is
    /// linearly dependent.
    pub fn from_basis(p: u8, width: usize, basis: &[FieldVector]) -> Option<Self> {
        let mut solver = SubspaceSolver {
            space: RowSpace::new(p, width),
            transform: Vec::new(),
            nbasis: basis.len(),
            p,
        };
        for (i, b) in basis.iter().enumerate() {
            debug_assert_eq!(b.len(), width);
            let mut red = b.clone();
            let mut coords = FieldVector::unit(p, basis.len(), i);
            for (row, (&pivot, track)) in solver
                .space
                .rows
                .iter()
                .zip(solver.space.pivots.iter().zip(&solver.transform))
            {
                let c = red.get(pivot);
                if c != 0 {
                    red.sub_scaled(row, c);
                    coords.sub_scaled(track, c);
                }
            }
            let pivot = red.first_nonzero()?;
            let lead = red.get(pivot);
            if lead != 1 {
                let inv = invm(lead, p);
                red.scale(inv);
                coords.scale(inv);
            }
            let pos = solver.space.pivots.partition_point(|&c| c < pivot);
            solver.space.pivots.insert(pos, pivot);
            solver.space.rows.insert(pos, red);
            solver.transform.insert(pos, coords);
        }
        Some(solver)
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Coordinates of v in the original basis, or None if v is outside the
    /// spanned subspace.
    pub fn coords(&self, v: &FieldVector) -> Option<Vec<u8>> {
        let mut red = v.clone();
        let mut coords = FieldVector::zeros(self.p, self.nbasis);
        for (row, (&pivot, track)) in
            self.space.rows.iter().zip(self.space.pivots.iter().zip(&self.transform))
        {
            let c = red.get(pivot);
            if c != 0 {
                red.sub_scaled(row, c);
                coords.sub_scaled(track, c);
            }
        }
        if !red.is_zero() {
            return None;
        }
        // coords currently holds −(coefficients); negate entry-wise.
        let p = self.p;
        Some((0..self.nbasis).map(|i| (p - coords.get(i) % p) % p).collect())
    }

    pub fn contains(&self, v: &FieldVector) -> bool {
        self.space.contains(v)
    }

    pub fn pivots(&self) -> &[usize] {
        self.space.pivots()
    }
}
