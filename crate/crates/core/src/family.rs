//! Closed-form eigenvector constructions in the classical types, used as
//! oracles against the flats-based minimization. A witness for V(b) takes k
//! blocks of coordinates (α_j, ζ_b·α_j, …, ζ_b^{b−1}·α_j) padded with zeros;
//! an explicit coordinate permutation cycles each block and realizes the
//! eigenvalue ζ_b. Making the block values collide ("the degenerate witness")
//! maximizes the stabilizer, and in type A the resulting root count
//! b·k(k−1) + (n−kb)(n−kb−1) is provably the maximum over V(b).

use crate::cyclo::{lcm_conductor, normalize_conductor, CycPoly, CycloNum};
use crate::error::{Error, Result};
use crate::rootsys::TypeLabel;

#[derive(Clone, Debug)]
pub struct ClassicalWitness {
    label: TypeLabel,
    b: u32,
    k: usize,
    alphas: Vec<CycloNum>,
    vector: Vec<CycloNum>,
    /// Number of model coordinates (n for the S_n/B_n/D_n models).
    n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredictedStabilizer {
    pub shape: String,
    pub root_count: usize,
}

fn block_vector(n: usize, b: u32, k: usize, alphas: &[CycloNum]) -> Result<Vec<CycloNum>> {
    if b < 2 {
        return Err(Error::Precondition("the block construction needs b > 1".into()));
    }
    if k == 0 || alphas.len() != k {
        return Err(Error::Precondition(format!(
            "expected k = {} nonzero block values, got {}",
            k,
            alphas.len()
        )));
    }
    if k * b as usize > n {
        return Err(Error::Precondition(format!(
            "k·b = {} blocks do not fit in {} coordinates",
            k * b as usize,
            n
        )));
    }
    if alphas.iter().any(CycloNum::is_zero) {
        return Err(Error::Precondition("block values must be nonzero".into()));
    }
    let mut l = normalize_conductor(b);
    for a in alphas {
        l = lcm_conductor(l, a.conductor());
    }
    let z = CycloNum::root_of_unity(l, b)?;
    let mut vector = Vec::with_capacity(n);
    for a in alphas {
        let mut cur = a.lift(l);
        for _ in 0..b {
            vector.push(cur.clone());
            cur = &cur * &z;
        }
    }
    vector.resize(n, CycloNum::zero(l));
    Ok(vector)
}

/// The type A_{n−1} witness: the model multiset {ζ_bⁱ·α_j} padded with
/// n − kb zeros. The coordinate sum vanishes because each block sums to
/// α_j·(1 + ζ + ⋯ + ζ^{b−1}) = 0.
pub fn construct_eigenvector_a(
    n: usize,
    b: u32,
    k: usize,
    alphas: &[CycloNum],
) -> Result<ClassicalWitness> {
    if n < 2 {
        return Err(Error::Precondition("type A needs n ≥ 2 coordinates".into()));
    }
    let vector = block_vector(n, b, k, alphas)?;
    Ok(ClassicalWitness {
        label: TypeLabel::A((n - 1) as u8),
        b,
        k,
        alphas: alphas.to_vec(),
        vector,
        n,
    })
}

/// The same block construction inside the B_n coordinate model; the cycling
/// permutation is a signless element of W(B_n).
pub fn construct_eigenvector_b(
    n: usize,
    b: u32,
    k: usize,
    alphas: &[CycloNum],
) -> Result<ClassicalWitness> {
    if n < 2 {
        return Err(Error::Precondition("type B needs n ≥ 2".into()));
    }
    let vector = block_vector(n, b, k, alphas)?;
    Ok(ClassicalWitness {
        label: TypeLabel::B(n as u8),
        b,
        k,
        alphas: alphas.to_vec(),
        vector,
        n,
    })
}

/// The block construction inside the D_n coordinate model (pure permutations
/// flip no signs, so the cycling element lies in W(D_n)).
pub fn construct_eigenvector_d(
    n: usize,
    b: u32,
    k: usize,
    alphas: &[CycloNum],
) -> Result<ClassicalWitness> {
    if n < 4 {
        return Err(Error::Precondition("type D needs n ≥ 4".into()));
    }
    let vector = block_vector(n, b, k, alphas)?;
    Ok(ClassicalWitness {
        label: TypeLabel::D(n as u8),
        b,
        k,
        alphas: alphas.to_vec(),
        vector,
        n,
    })
}

impl ClassicalWitness {
    pub fn label(&self) -> TypeLabel {
        self.label
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn alphas(&self) -> &[CycloNum] {
        &self.alphas
    }

    /// Model coordinates of the witness.
    pub fn vector(&self) -> &[CycloNum] {
        &self.vector
    }

    /// The coordinate permutation π with (w·x)_i = x_{π(i)} that cycles each
    /// block and fixes the zero tail, so that w·x = ζ_b·x.
    pub fn witness_permutation(&self) -> Vec<usize> {
        let b = self.b as usize;
        let mut perm: Vec<usize> = (0..self.n).collect();
        for j in 0..self.k {
            for t in 0..b {
                perm[j * b + t] = j * b + (t + 1) % b;
            }
        }
        perm
    }

    /// Π over coordinates of (X − x_i).
    pub fn characteristic_product(&self) -> CycPoly {
        let l = self.vector[0].conductor();
        let mut p = CycPoly::new(l, vec![CycloNum::one(l)]);
        for c in &self.vector {
            let linear = CycPoly::new(l, vec![-c, CycloNum::one(l)]);
            p = p.mul(&linear);
        }
        p
    }

    /// The sparse closed form X^{n−kb}·Π_j (X^b − α_j^b) the coordinates are
    /// the roots of.
    pub fn predicted_polynomial(&self) -> CycPoly {
        let l = self.vector[0].conductor();
        let b = self.b as usize;
        let mut p = CycPoly::new(l, vec![CycloNum::one(l)]);
        for a in &self.alphas {
            let mut coeffs = vec![CycloNum::zero(l); b + 1];
            coeffs[0] = -&a.lift(l).pow(b as i64);
            coeffs[b] = CycloNum::one(l);
            p = p.mul(&CycPoly::new(l, coeffs));
        }
        let shift = self.n - self.k * b;
        let mut coeffs = vec![CycloNum::zero(l); shift];
        coeffs.extend_from_slice(p.coeffs());
        CycPoly::new(l, coeffs)
    }
}

fn shape_string(factors: Vec<String>) -> String {
    if factors.is_empty() {
        "1".to_string()
    } else {
        factors.join(" × ")
    }
}

/// Root count and isomorphism type of the stabilizer of the degenerate
/// witness (all block values equal). For type A this is the proven maximum
/// over V(b); for B and D it is the value realized by the signless block
/// pattern and serves as a lower-bound cross-check.
pub fn predicted_max_stabilizer(
    label: TypeLabel,
    n: usize,
    b: u32,
    k: usize,
) -> Result<PredictedStabilizer> {
    if b < 2 || k == 0 || k * b as usize > n {
        return Err(Error::Precondition(format!(
            "need b > 1 and 1 ≤ k ≤ n/b, got b = {b}, k = {k}, n = {n}"
        )));
    }
    let bu = b as usize;
    let m = n - k * bu;
    let mut factors = Vec::new();
    match label {
        TypeLabel::A(_) => {
            if k >= 2 {
                factors.push(format!("(S_{k})^{b}"));
            }
            if m >= 2 {
                factors.push(format!("S_{m}"));
            }
            Ok(PredictedStabilizer {
                shape: shape_string(factors),
                root_count: bu * k * (k - 1) + m * (m.max(1) - 1),
            })
        }
        TypeLabel::B(_) | TypeLabel::D(_) => {
            // For even b the value classes pair up v ↔ −v and the plus-type
            // roots between paired classes glue two S_k factors into an
            // S_{2k}; for odd b no value is the negative of another.
            let block_count = if b % 2 == 0 {
                if k >= 1 {
                    factors.push(format!("(S_{})^{}", 2 * k, b / 2));
                }
                bu * k * (2 * k - 1)
            } else {
                if k >= 2 {
                    factors.push(format!("(S_{k})^{b}"));
                }
                bu * k * (k - 1)
            };
            let tail_count = if matches!(label, TypeLabel::B(_)) {
                if m >= 1 {
                    factors.push(format!("W(B_{m})"));
                }
                2 * m * m
            } else {
                if m >= 2 {
                    factors.push(format!("W(D_{m})"));
                }
                2 * m * (m.max(1) - 1)
            };
            Ok(PredictedStabilizer {
                shape: shape_string(factors),
                root_count: block_count + tail_count,
            })
        }
        _ => Err(Error::UnsupportedType(format!(
            "no closed-form stabilizer prediction for {label}"
        ))),
    }
}

/// The degenerate witness realizing the predicted count: every block value
/// equal to 1.
pub fn degenerate_witness(label: TypeLabel, n: usize, b: u32, k: usize) -> Result<ClassicalWitness> {
    let ones = vec![CycloNum::one(1); k];
    match label {
        TypeLabel::A(_) => construct_eigenvector_a(n, b, k, &ones),
        TypeLabel::B(_) => construct_eigenvector_b(n, b, k, &ones),
        TypeLabel::D(_) => construct_eigenvector_d(n, b, k, &ones),
        _ => Err(Error::UnsupportedType(format!(
            "no block witnesses for {label}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::rat_int;
    use crate::eigenstab::{self, FlatScan};
    use crate::springer::{in_vb_by_search, in_vb_by_search_root, invariant_polynomials};
    use crate::wgroup::{GroupEnumeration, DEFAULT_CAP};

    fn int(k: i64) -> CycloNum {
        CycloNum::from_int(1, k)
    }

    #[test]
    fn the_minus_pair_example() {
        let w = construct_eigenvector_a(4, 2, 1, &[int(3)]).unwrap();
        let expect: Vec<CycloNum> = [3, -3, 0, 0].iter().map(|&v| int(v)).collect();
        assert_eq!(w.vector(), &expect[..]);
        assert_eq!(w.witness_permutation(), vec![1, 0, 2, 3]);
    }

    #[test]
    fn two_blocks_of_three() {
        let w = construct_eigenvector_a(6, 3, 2, &[int(1), int(2)]).unwrap();
        let z = CycloNum::root_of_unity(3, 3).unwrap();
        let z2 = &z * &z;
        let expect = vec![
            CycloNum::one(3),
            z.clone(),
            z2.clone(),
            CycloNum::from_int(3, 2),
            z.scale(&rat_int(2)),
            z2.scale(&rat_int(2)),
        ];
        assert_eq!(w.vector(), &expect[..]);
    }

    #[test]
    fn the_full_block_witness_is_a_regular_coxeter_eigenvector() {
        let g = GroupEnumeration::build(TypeLabel::A(2), DEFAULT_CAP).unwrap();
        let inv = invariant_polynomials(TypeLabel::A(2)).unwrap();
        let w = construct_eigenvector_a(3, 3, 1, &[int(1)]).unwrap();
        let id = in_vb_by_search(&g, &inv, w.vector(), 3)
            .unwrap()
            .expect("the cycle is a group element");
        assert_eq!(g.order_of(id), 3);
        let y = inv.to_root_coords(w.vector()).unwrap();
        let pt = eigenstab::EigenVectorPoint::new(TypeLabel::A(2), y);
        assert_eq!(eigenstab::n_of(g.system(), &pt).unwrap().n_value, 6, "regular");
    }

    #[test]
    fn permutation_realizes_the_eigenvalue() {
        for (n, b, k, alphas) in [
            (4usize, 2u32, 1usize, vec![int(3)]),
            (6, 3, 2, vec![int(1), int(2)]),
            (7, 2, 3, vec![int(1), int(1), int(5)]),
            (8, 4, 2, vec![int(2), -&int(1)]),
        ] {
            let w = construct_eigenvector_a(n, b, k, &alphas).unwrap();
            let perm = w.witness_permutation();
            let l = w.vector()[0].conductor();
            let z = CycloNum::root_of_unity(l, b).unwrap();
            let moved: Vec<CycloNum> = perm.iter().map(|&p| w.vector()[p].clone()).collect();
            let scaled: Vec<CycloNum> = w.vector().iter().map(|c| c * &z).collect();
            assert_eq!(moved, scaled, "n={n} b={b} k={k}");
            let sum = w
                .vector()
                .iter()
                .fold(CycloNum::zero(l), |acc, c| &acc + c);
            assert!(sum.is_zero(), "coordinates sum to zero");
        }
    }

    #[test]
    fn witnesses_are_genuine_members_of_vb() {
        let a3 = GroupEnumeration::build(TypeLabel::A(3), DEFAULT_CAP).unwrap();
        let inv_a = invariant_polynomials(TypeLabel::A(3)).unwrap();
        for (b, k, alphas) in [
            (2u32, 1usize, vec![int(1)]),
            (2, 2, vec![int(1), int(4)]),
            (4, 1, vec![int(2)]),
        ] {
            let w = construct_eigenvector_a(4, b, k, &alphas).unwrap();
            assert!(in_vb_by_search(&a3, &inv_a, w.vector(), b).unwrap().is_some());
            assert!(inv_a.in_vb_by_invariants(w.vector(), b).unwrap());
        }
        let b3 = GroupEnumeration::build(TypeLabel::B(3), DEFAULT_CAP).unwrap();
        let inv_b = invariant_polynomials(TypeLabel::B(3)).unwrap();
        for (b, k) in [(2u32, 1usize), (3, 1)] {
            let w = degenerate_witness(TypeLabel::B(3), 3, b, k).unwrap();
            assert!(in_vb_by_search(&b3, &inv_b, w.vector(), b).unwrap().is_some());
            assert!(inv_b.in_vb_by_invariants(w.vector(), b).unwrap());
        }
        let d4 = GroupEnumeration::build(TypeLabel::D(4), DEFAULT_CAP).unwrap();
        let inv_d = invariant_polynomials(TypeLabel::D(4)).unwrap();
        for (b, k) in [(2u32, 1usize), (2, 2), (4, 1), (3, 1)] {
            let w = degenerate_witness(TypeLabel::D(4), 4, b, k).unwrap();
            assert!(in_vb_by_search(&d4, &inv_d, w.vector(), b).unwrap().is_some());
        }
    }

    #[test]
    fn predicted_counts_match_the_spot_values() {
        let p = predicted_max_stabilizer(TypeLabel::A(3), 4, 2, 1).unwrap();
        assert_eq!(p.root_count, 2);
        assert_eq!(p.shape, "S_2");
        let p = predicted_max_stabilizer(TypeLabel::A(5), 6, 2, 2).unwrap();
        assert_eq!(p.root_count, 6);
        assert_eq!(p.shape, "(S_2)^2 × S_2");
        // n = bk leaves no zero tail.
        let p = predicted_max_stabilizer(TypeLabel::A(5), 6, 3, 2).unwrap();
        assert_eq!(p.root_count, 3 * 2 * 1);
        assert!(matches!(
            predicted_max_stabilizer(TypeLabel::H3, 3, 2, 1),
            Err(Error::UnsupportedType(_))
        ));
        assert!(matches!(
            predicted_max_stabilizer(TypeLabel::A(3), 4, 3, 2),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn degenerate_witnesses_realize_the_predicted_count() {
        for (label, n) in [
            (TypeLabel::A(3), 4usize),
            (TypeLabel::A(4), 5),
            (TypeLabel::A(5), 6),
            (TypeLabel::B(2), 2),
            (TypeLabel::B(3), 3),
            (TypeLabel::B(4), 4),
            (TypeLabel::D(4), 4),
            (TypeLabel::D(5), 5),
        ] {
            let sys = crate::rootsys::build_root_system(label).unwrap();
            let inv = invariant_polynomials(label).unwrap();
            for b in 2..=n as u32 {
                for k in 1..=n / b as usize {
                    let w = degenerate_witness(label, n, b, k).unwrap();
                    let y = inv.to_root_coords(w.vector()).unwrap();
                    let pt = eigenstab::EigenVectorPoint::new(label, y);
                    let n_val = eigenstab::n_of(&sys, &pt).unwrap().n_value;
                    let stab = sys.num_roots() - n_val;
                    let predicted = predicted_max_stabilizer(label, n, b, k).unwrap();
                    assert_eq!(
                        stab, predicted.root_count,
                        "{label} n={n} b={b} k={k} ({})",
                        predicted.shape
                    );
                }
            }
        }
    }

    #[test]
    fn type_a_predictions_attain_the_minimum_over_vb() {
        for (label, n) in [(TypeLabel::A(2), 3usize), (TypeLabel::A(3), 4)] {
            let g = GroupEnumeration::build(label, DEFAULT_CAP).unwrap();
            let mut scan = FlatScan::new(g.system());
            let num_roots = g.system().num_roots();
            let rank = g.system().rank();
            for b in 2..=n as u32 {
                let record = eigenstab::min_n_direct(&g, b, &mut scan).unwrap();
                let best: usize = (1..=n / b as usize)
                    .map(|k| {
                        predicted_max_stabilizer(label, n, b, k)
                            .unwrap()
                            .root_count
                    })
                    .max()
                    .unwrap();
                assert_eq!(record.min_n, Some(num_roots - best), "{label} b={b}");
                // Every witness satisfies the rank bound N ≥ b·(n−1).
                for k in 1..=n / b as usize {
                    let w = degenerate_witness(label, n, b, k).unwrap();
                    let y = invariant_polynomials(label)
                        .unwrap()
                        .to_root_coords(w.vector())
                        .unwrap();
                    assert!(in_vb_by_search_root(&g, &y, b).unwrap().is_some());
                    let pt = eigenstab::EigenVectorPoint::new(label, y);
                    let n_val = eigenstab::n_of(g.system(), &pt).unwrap().n_value;
                    assert!(n_val >= b as usize * rank, "{label} b={b} k={k}");
                }
            }
        }
    }

    #[test]
    fn the_characteristic_product_is_the_sparse_closed_form() {
        let w = construct_eigenvector_a(6, 3, 2, &[int(1), int(2)]).unwrap();
        let expanded = w.characteristic_product();
        let predicted = w.predicted_polynomial();
        assert_eq!(expanded.coeffs(), predicted.coeffs());
        assert_eq!(expanded.degree(), Some(6));
        // Only the powers X^{n−ib} survive.
        for (i, c) in expanded.coeffs().iter().enumerate() {
            if !c.is_zero() {
                assert_eq!((6 - i) % 3, 0, "coefficient at X^{i}");
            }
        }
        let w = construct_eigenvector_a(7, 2, 2, &[int(3), -&int(1)]).unwrap();
        assert_eq!(
            w.characteristic_product().coeffs(),
            w.predicted_polynomial().coeffs()
        );
    }

    #[test]
    fn block_preconditions_are_enforced() {
        assert!(matches!(
            construct_eigenvector_a(4, 1, 1, &[int(1)]),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            construct_eigenvector_a(4, 3, 2, &[int(1), int(2)]),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            construct_eigenvector_a(4, 2, 1, &[int(0)]),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            construct_eigenvector_a(4, 2, 2, &[int(1)]),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            construct_eigenvector_d(3, 2, 1, &[int(1)]),
            Err(Error::Precondition(_))
        ));
    }
}
