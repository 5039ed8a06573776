//! Linear subspaces of Q(ζ_L)^n in canonical form.
//!
//! A `Subspace` stores an RREF basis with zero rows dropped, so two subspaces
//! are equal as sets exactly when their representations are equal. That makes
//! `Subspace` directly usable as a hash key for memoization.

use super::{dot, CycloNum, Matrix};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    conductor: u32,
    /// rank × ambient, canonical RREF, no zero rows.
    basis: Matrix,
}

/// Result of slicing a subspace by one hyperplane.
pub enum CapResult {
    /// The functional vanishes on the whole subspace.
    Unchanged,
    /// Proper intersection, one dimension lower (possibly the zero space).
    Lower(Subspace),
}

impl Subspace {
    pub fn from_rows(ambient: usize, conductor: u32, rows: Vec<Vec<CycloNum>>) -> Self {
        if rows.is_empty() {
            return Self::zero_space(ambient, conductor);
        }
        let m = Matrix::from_rows(rows, ambient, conductor);
        let (rank, r) = m.rref();
        let kept: Vec<Vec<CycloNum>> = (0..rank).map(|i| r.row_vec(i)).collect();
        Subspace {
            ambient,
            conductor,
            basis: Matrix::from_rows(kept, ambient, conductor),
        }
    }

    pub fn full(ambient: usize, conductor: u32) -> Self {
        Subspace {
            ambient,
            conductor,
            basis: Matrix::identity(ambient, conductor),
        }
    }

    pub fn zero_space(ambient: usize, conductor: u32) -> Self {
        Subspace {
            ambient,
            conductor,
            basis: Matrix::zero(0, ambient, conductor),
        }
    }

    /// {v : M v = 0}, canonicalized.
    pub fn kernel_of(m: &Matrix) -> Self {
        let raw = m.kernel_raw();
        Self::from_rows(m.cols(), m.conductor(), raw)
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn is_zero_space(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    fn pivot_col(&self, row: usize) -> usize {
        (0..self.ambient)
            .find(|&j| !self.basis.at(row, j).is_zero())
            .expect("basis rows are nonzero")
    }

    /// Membership test by reduction against the RREF basis.
    pub fn contains(&self, v: &[CycloNum]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut v = v.to_vec();
        for row in 0..self.dim() {
            let p = self.pivot_col(row);
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone();
            for j in p..self.ambient {
                let t = &factor * self.basis.at(row, j);
                v[j] -= &t;
            }
        }
        v.iter().all(|e| e.is_zero())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    /// Basis (as matrix rows) of the annihilator {c : ⟨c, v⟩ = 0 ∀ v ∈ self}
    /// with respect to the standard dot product.
    pub fn annihilator(&self) -> Vec<Vec<CycloNum>> {
        if self.dim() == 0 {
            return (0..self.ambient)
                .map(|i| {
                    let mut e = vec![CycloNum::zero(self.conductor); self.ambient];
                    e[i] = CycloNum::one(self.conductor);
                    e
                })
                .collect();
        }
        self.basis.kernel_raw()
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        assert_eq!(self.conductor, other.conductor);
        let mut constraints = self.annihilator();
        constraints.extend(other.annihilator());
        if constraints.is_empty() {
            return Subspace::full(self.ambient, self.conductor);
        }
        let m = Matrix::from_rows(constraints, self.ambient, self.conductor);
        Subspace::kernel_of(&m)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut rows: Vec<Vec<CycloNum>> = (0..self.dim()).map(|i| self.basis.row_vec(i)).collect();
        rows.extend((0..other.dim()).map(|i| other.basis.row_vec(i)));
        Subspace::from_rows(self.ambient, self.conductor, rows)
    }

    /// Intersect with the hyperplane {v : ⟨f, v⟩ = 0}.
    ///
    /// Stays canonical and costs one elimination step instead of a full
    /// annihilator round trip; this is the hot path of the flats recursion.
    pub fn cap_hyperplane(&self, f: &[CycloNum]) -> CapResult {
        assert_eq!(f.len(), self.ambient);
        let vals: Vec<CycloNum> = (0..self.dim())
            .map(|i| dot(self.basis.row(i), f))
            .collect();
        let Some(pivot) = vals.iter().position(|v| !v.is_zero()) else {
            return CapResult::Unchanged;
        };
        let pinv = vals[pivot].inv().expect("nonzero pivot value");
        let mut rows = Vec::with_capacity(self.dim() - 1);
        for i in 0..self.dim() {
            if i == pivot {
                continue;
            }
            if vals[i].is_zero() {
                rows.push(self.basis.row_vec(i));
            } else {
                let c = &vals[i] * &pinv;
                let mut row = self.basis.row_vec(i);
                for (j, e) in row.iter_mut().enumerate() {
                    let t = &c * self.basis.at(pivot, j);
                    *e -= &t;
                }
                rows.push(row);
            }
        }
        CapResult::Lower(Subspace::from_rows(self.ambient, self.conductor, rows))
    }

    pub fn lift(&self, conductor: u32) -> Subspace {
        Subspace {
            ambient: self.ambient,
            conductor,
            basis: self.basis.lift(conductor),
        }
    }

    /// Rows of the basis as vectors.
    pub fn basis_rows(&self) -> Vec<Vec<CycloNum>> {
        (0..self.dim()).map(|i| self.basis.row_vec(i)).collect()
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Deterministic syntactic order (dimension, then basis entries); used only
/// for reproducible tie-breaking.
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim()
            .cmp(&other.dim())
            .then_with(|| {
                for i in 0..self.dim() {
                    for j in 0..self.ambient {
                        let c = self.basis.at(i, j).cmp(other.basis.at(i, j));
                        if c != Ordering::Equal {
                            return c;
                        }
                    }
                }
                Ordering::Equal
            })
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace dim {} of {}: {:?}", self.dim(), self.ambient, self.basis)
    }
}
