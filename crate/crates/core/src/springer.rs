//! Invariant-polynomial models for the classical types and the two
//! characterizations of membership in V(b): vanishing of every fundamental
//! invariant whose degree b does not divide, versus exhibiting an explicit
//! eigenvector equation w·x = ζ_b·x.
//!
//! Type A_r lives on the sum-zero subspace of r+1 coordinates with pairing
//! half the standard dot; type B_n on n coordinates with the standard dot;
//! type D_n on n coordinates with half the standard dot. Every other type
//! exposes only the quadratic invariant Q(x) = B(x,x).

use crate::cyclo::{lcm_conductor, rat, CycloNum, Matrix, Rational};
use crate::error::{Error, Result};
use crate::rootsys::{build_root_system, RootSystem, TypeLabel};
use crate::wgroup::GroupEnumeration;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Model {
    /// Sum-zero coordinates, pairing half the standard dot (type A).
    SumZero,
    /// Full coordinate space, standard dot (type B).
    Standard,
    /// Full coordinate space, half the standard dot (type D).
    Half,
    /// Root-basis coordinates with the Gram pairing (no full invariant set).
    RootBasis,
}

pub struct InvariantSet {
    label: TypeLabel,
    model: Model,
    model_dim: usize,
    rank: usize,
    conductor: u32,
    /// Degrees of the available invariants, in evaluator order.
    degrees: Vec<u32>,
    full: bool,
    /// Root-basis coordinates to model coordinates (columns are the model
    /// images of the simple roots).
    emb: Matrix,
    /// Model coordinates back to root-basis coordinates; on the model
    /// subspace this is a two-sided inverse of emb.
    to_root: Matrix,
    gram: Matrix,
}

/// The invariant model for a type: full fundamental invariants for A/B/D,
/// the quadratic invariant alone for everything else.
pub fn invariant_polynomials(label: TypeLabel) -> Result<InvariantSet> {
    let sys = build_root_system(label)?;
    let n = sys.rank();
    let cond = sys.conductor();
    match label {
        TypeLabel::A(_) => {
            let dim = n + 1;
            let mut emb = Matrix::zero(dim, n, 1);
            for j in 0..n {
                *emb.at_mut(j, j) = CycloNum::from_int(1, 1);
                *emb.at_mut(j + 1, j) = CycloNum::from_int(1, -1);
            }
            let mut to_root = Matrix::zero(n, dim, 1);
            for j in 0..n {
                for k in 0..=j {
                    *to_root.at_mut(j, k) = CycloNum::from_int(1, 1);
                }
            }
            Ok(InvariantSet {
                label,
                model: Model::SumZero,
                model_dim: dim,
                rank: n,
                conductor: 1,
                degrees: (2..=dim as u32).collect(),
                full: true,
                emb,
                to_root,
                gram: sys.gram().clone(),
            })
        }
        TypeLabel::B(_) => {
            // sqrt(2) = z8 - z8^3 at conductor 8; the short root keeps unit
            // length under the standard dot.
            let sqrt2 = {
                let z = CycloNum::zeta(8);
                &z - &z.pow(3)
            };
            let inv_sqrt2 = sqrt2.scale(&rat(1, 2));
            let mut emb = Matrix::zero(n, n, 8);
            for j in 0..n - 1 {
                *emb.at_mut(j, j) = inv_sqrt2.clone();
                *emb.at_mut(j + 1, j) = -&inv_sqrt2;
            }
            *emb.at_mut(n - 1, n - 1) = CycloNum::one(8);
            let to_root = emb.inverse().expect("simple roots are a basis");
            Ok(InvariantSet {
                label,
                model: Model::Standard,
                model_dim: n,
                rank: n,
                conductor: 8,
                degrees: (1..=n as u32).map(|k| 2 * k).collect(),
                full: true,
                emb,
                to_root,
                gram: sys.gram().clone(),
            })
        }
        TypeLabel::D(_) => {
            let mut emb = Matrix::zero(n, n, 1);
            for j in 0..n - 1 {
                *emb.at_mut(j, j) = CycloNum::from_int(1, 1);
                *emb.at_mut(j + 1, j) = CycloNum::from_int(1, -1);
            }
            *emb.at_mut(n - 2, n - 1) = CycloNum::from_int(1, 1);
            *emb.at_mut(n - 1, n - 1) = CycloNum::from_int(1, 1);
            let to_root = emb.inverse().expect("simple roots are a basis");
            let mut degrees: Vec<u32> = (1..n as u32).map(|k| 2 * k).collect();
            degrees.push(n as u32);
            Ok(InvariantSet {
                label,
                model: Model::Half,
                model_dim: n,
                rank: n,
                conductor: 1,
                degrees,
                full: true,
                emb,
                to_root,
                gram: sys.gram().clone(),
            })
        }
        _ => Ok(InvariantSet {
            label,
            model: Model::RootBasis,
            model_dim: n,
            rank: n,
            conductor: cond,
            degrees: vec![2],
            full: false,
            emb: Matrix::identity(n, cond),
            to_root: Matrix::identity(n, cond),
            gram: sys.gram().clone(),
        }),
    }
}

impl InvariantSet {
    pub fn label(&self) -> TypeLabel {
        self.label
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn model_dim(&self) -> usize {
        self.model_dim
    }

    /// Whether the full fundamental invariant set is available.
    pub fn is_full(&self) -> bool {
        self.full
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn to_model_coords(&self, y: &[CycloNum]) -> Result<Vec<CycloNum>> {
        if y.len() != self.rank {
            return Err(Error::Dimension(format!(
                "expected {} root coordinates, got {}",
                self.rank,
                y.len()
            )));
        }
        let l = lcm_conductor(self.conductor, y[0].conductor());
        let y: Vec<CycloNum> = y.iter().map(|c| c.lift(l)).collect();
        Ok(self.emb.lift(l).matvec(&y))
    }

    pub fn to_root_coords(&self, x: &[CycloNum]) -> Result<Vec<CycloNum>> {
        self.check_model_point(x)?;
        let l = lcm_conductor(self.conductor, x[0].conductor());
        let x: Vec<CycloNum> = x.iter().map(|c| c.lift(l)).collect();
        Ok(self.to_root.lift(l).matvec(&x))
    }

    fn check_model_point(&self, x: &[CycloNum]) -> Result<()> {
        if x.len() != self.model_dim {
            return Err(Error::Dimension(format!(
                "expected {} model coordinates, got {}",
                self.model_dim,
                x.len()
            )));
        }
        if self.model == Model::SumZero {
            let mut s = CycloNum::zero(x[0].conductor());
            for c in x {
                s = &s + c;
            }
            if !s.is_zero() {
                return Err(Error::Precondition(
                    "type A model coordinates must sum to zero".into(),
                ));
            }
        }
        Ok(())
    }

    /// The number of available invariant evaluators.
    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// Exact value of the i-th invariant at a model point.
    pub fn evaluate(&self, i: usize, x: &[CycloNum]) -> Result<CycloNum> {
        self.check_model_point(x)?;
        if i >= self.degrees.len() {
            return Err(Error::QuadraticOnly(self.label.to_string()));
        }
        let cond = x[0].conductor();
        match self.model {
            Model::SumZero => {
                // Power sum of degree degrees[i].
                let d = self.degrees[i] as i64;
                let mut s = CycloNum::zero(cond);
                for c in x {
                    s = &s + &c.pow(d);
                }
                Ok(s)
            }
            Model::Standard => Ok(elementary_symmetric_of_squares(x, i + 1)),
            Model::Half => {
                if i + 1 < self.model_dim {
                    Ok(elementary_symmetric_of_squares(x, i + 1))
                } else {
                    let mut p = CycloNum::one(cond);
                    for c in x {
                        p = &p * c;
                    }
                    Ok(p)
                }
            }
            Model::RootBasis => Ok(self.quadratic(x)?),
        }
    }

    /// Q(x) = B(x, x) in the model's pairing.
    pub fn quadratic(&self, x: &[CycloNum]) -> Result<CycloNum> {
        self.check_model_point(x)?;
        let cond = x[0].conductor();
        match self.model {
            Model::SumZero | Model::Half => {
                let mut s = CycloNum::zero(cond);
                for c in x {
                    s = &s + &(c * c);
                }
                Ok(s.scale(&rat(1, 2)))
            }
            Model::Standard => {
                let mut s = CycloNum::zero(cond);
                for c in x {
                    s = &s + &(c * c);
                }
                Ok(s)
            }
            Model::RootBasis => {
                let l = lcm_conductor(self.gram.conductor(), cond);
                let x: Vec<CycloNum> = x.iter().map(|c| c.lift(l)).collect();
                let gx = self.gram.lift(l).matvec(&x);
                Ok(crate::cyclo::dot(&x, &gx))
            }
        }
    }

    /// Membership in V(b) by Springer's criterion: every invariant whose
    /// degree b does not divide must vanish at x.
    pub fn in_vb_by_invariants(&self, x: &[CycloNum], b: u32) -> Result<bool> {
        if !self.full {
            return Err(Error::QuadraticOnly(self.label.to_string()));
        }
        for (i, &d) in self.degrees.iter().enumerate() {
            if d % b != 0 && !self.evaluate(i, x)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn elementary_symmetric_of_squares(x: &[CycloNum], k: usize) -> CycloNum {
    let cond = x[0].conductor();
    let mut e = vec![CycloNum::zero(cond); k + 1];
    e[0] = CycloNum::one(cond);
    for c in x {
        let sq = c * c;
        for j in (1..=k).rev() {
            let t = &e[j - 1] * &sq;
            e[j] = &e[j] + &t;
        }
    }
    e.pop().unwrap()
}

/// Membership in V(b) by exhibiting a witness: some w with w·x = ζ_b·x.
/// The point is given in model coordinates and converted through the
/// invariant set's embedding.
pub fn in_vb_by_search(
    g: &GroupEnumeration,
    inv: &InvariantSet,
    x: &[CycloNum],
    b: u32,
) -> Result<Option<u32>> {
    let y = inv.to_root_coords(x)?;
    in_vb_by_search_root(g, &y, b)
}

/// As in_vb_by_search, for a point already in root-basis coordinates.
pub fn in_vb_by_search_root(
    g: &GroupEnumeration,
    y: &[CycloNum],
    b: u32,
) -> Result<Option<u32>> {
    let sys = g.system();
    let l = lcm_conductor(lcm_conductor(sys.conductor(), y[0].conductor()), b);
    let z = CycloNum::root_of_unity(l, b)?;
    let y: Vec<CycloNum> = y.iter().map(|c| c.lift(l)).collect();
    let zy: Vec<CycloNum> = y.iter().map(|c| c * &z).collect();
    for id in 0..g.len() as u32 {
        if g.matrix(id).lift(l).matvec(&y) == zy {
            return Ok(Some(id));
        }
    }
    Ok(None)
}

/// The rank bound on stabilizers of isotropic vectors: if x ≠ 0 and
/// Q(x) = 0 in a group of rank > 2, the subsystem Φ_x spans at most an
/// (n−2)-dimensional space.
pub fn quadratic_rank_check(sys: &RootSystem, y: &[CycloNum]) -> Result<bool> {
    if y.iter().all(CycloNum::is_zero) {
        return Err(Error::ZeroVector);
    }
    if sys.rank() <= 2 {
        return Err(Error::Precondition(
            "the rank bound needs n > 2".into(),
        ));
    }
    let l = lcm_conductor(sys.conductor(), y[0].conductor());
    let y: Vec<CycloNum> = y.iter().map(|c| c.lift(l)).collect();
    let q = crate::cyclo::dot(&y, &sys.gram().lift(l).matvec(&y));
    if !q.is_zero() {
        return Err(Error::Precondition(
            "the rank bound applies to Q-null vectors only".into(),
        ));
    }
    let mut phi = crate::rootsys::RootSet::empty();
    for r in 0..sys.num_pairs() {
        if sys.pairing_with_root(r, &y).is_zero() {
            phi.insert(r);
            phi.insert(sys.neg_index(r));
        }
    }
    Ok(sys.subsystem_rank(&phi) <= sys.rank() - 2)
}

/// The codimension-one lemma behind the rank bound: a nonzero vector
/// B-orthogonal to the complexification of a real hyperplane has Q(x) ≠ 0.
/// Returns None when the given rows do not span a hyperplane.
pub fn real_hyperplane_orthogonal_has_nonzero_q(
    sys: &RootSystem,
    rows: &[Vec<Rational>],
) -> Option<bool> {
    let n = sys.rank();
    let cond = sys.conductor();
    let a: Vec<Vec<CycloNum>> = rows
        .iter()
        .map(|r| r.iter().map(|q| CycloNum::from_rational(cond, q.clone())).collect())
        .collect();
    let constraints: Vec<Vec<CycloNum>> = a.iter().map(|r| sys.gram().matvec(r)).collect();
    let m = Matrix::from_rows(constraints, n, cond);
    let kernel = m.kernel_raw();
    if kernel.len() != 1 {
        return None;
    }
    let x = &kernel[0];
    let q = crate::cyclo::dot(x, &sys.gram().matvec(x));
    Some(!q.is_zero())
}
