//! Eigenspaces Ω(w,ζ), stabilizer root subsystems Φ_x, and the exact minimum
//! of N(x) = |Φ| − |Φ_x| over the eigenspace union V(b).
//!
//! The minimum over a single eigenspace E is computed by walking the flats of
//! the root-hyperplane arrangement restricted to E: every nonzero x ∈ E lies
//! in the flat F_x = E ∩ ⋂{α^⊥ : α ∈ Φ_x}, whose set of orthogonal roots is
//! exactly Φ_x, and the recursion provably reaches F_x by cutting one wall at
//! a time. Flats are memoized globally by their canonical row echelon basis,
//! so conjugate eigenspaces share most of the work.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::cyclo::subspace::CapResult;
use crate::cyclo::{lcm_conductor, CycloNum, Subspace};
use crate::error::{Error, Result};
use crate::rootsys::{RootSet, RootSystem, TypeLabel};
use crate::wgroup::GroupEnumeration;

/// A point of V ⊗ C in root-basis coordinates, optionally tagged with the
/// eigenspace it came from.
#[derive(Clone, Debug)]
pub struct EigenVectorPoint {
    pub label: TypeLabel,
    pub coordinates: Vec<CycloNum>,
    /// (element id, b) when the point was drawn from Ω(w, ζ_b).
    pub provenance: Option<(u32, u32)>,
}

impl EigenVectorPoint {
    pub fn new(label: TypeLabel, coordinates: Vec<CycloNum>) -> Self {
        EigenVectorPoint {
            label,
            coordinates,
            provenance: None,
        }
    }

    pub fn with_provenance(label: TypeLabel, coordinates: Vec<CycloNum>, w: u32, b: u32) -> Self {
        EigenVectorPoint {
            label,
            coordinates,
            provenance: Some((w, b)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(CycloNum::is_zero)
    }
}

/// Conjugating data exhibiting a stabilizer as a standard parabolic:
/// w · W_I · w⁻¹ = W_x.
#[derive(Clone, Debug)]
pub struct ParabolicWitness {
    pub conjugator: u32,
    pub simple_subset: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct StabilizerReport {
    pub x: EigenVectorPoint,
    pub phi_x: RootSet,
    /// N(x) = |Φ| − |Φ_x|.
    pub n_value: usize,
    /// |W_x| when the group was scanned.
    pub group_order: Option<u64>,
    /// Whether the reflections in Φ_x generate all of W_x (scan only).
    pub reflections_generate: Option<bool>,
    pub parabolic_witness: Option<ParabolicWitness>,
}

/// One (type, b) row of the main verification: the exact minimum of N over
/// V(b) against the bound b·n, with a witness flat attaining it.
#[derive(Clone, Debug)]
pub struct VerificationRecord {
    pub label: TypeLabel,
    pub b: u32,
    pub v_b_nonempty: bool,
    pub min_n: Option<usize>,
    pub bound: usize,
    pub equality: bool,
    pub witness_flat: Option<Subspace>,
    pub witness_phi: Option<RootSet>,
    pub elements_scanned: usize,
}

/// Ω(w, ζ_b): the kernel of w − ζ_b over Q(ζ_L), L = lcm of the base
/// conductor and b.
pub fn eigenspace(g: &GroupEnumeration, w: u32, b: u32) -> Subspace {
    let sys = g.system();
    let l = lcm_conductor(sys.conductor(), b);
    let z = CycloNum::root_of_unity(l, b).expect("lcm conductor admits b");
    let m = g.matrix(w).lift(l);
    Subspace::kernel_of(&m.sub_scalar_identity(&z))
}

/// Roots orthogonal to an entire subspace. For generic x in the subspace this
/// is exactly Φ_x, since a finite union of proper kernels cannot cover E.
pub fn orthogonal_roots(sys: &RootSystem, e: &Subspace) -> RootSet {
    let mut out = RootSet::empty();
    for r in 0..sys.num_pairs() {
        let vanishes = (0..e.dim()).all(|i| sys.pairing_with_root(r, e.basis().row(i)).is_zero());
        if vanishes {
            out.insert(r);
            out.insert(sys.neg_index(r));
        }
    }
    out
}

/// Φ_x and N(x) by direct pairing of x against every root, no group scan.
pub fn n_of(sys: &RootSystem, x: &EigenVectorPoint) -> Result<StabilizerReport> {
    if x.is_zero() {
        return Err(Error::ZeroVector);
    }
    let mut phi = RootSet::empty();
    for r in 0..sys.num_pairs() {
        if sys.pairing_with_root(r, &x.coordinates).is_zero() {
            phi.insert(r);
            phi.insert(sys.neg_index(r));
        }
    }
    Ok(StabilizerReport {
        x: x.clone(),
        n_value: sys.num_roots() - phi.count(),
        phi_x: phi,
        group_order: None,
        reflections_generate: None,
        parabolic_witness: None,
    })
}

/// Full stabilizer report: W_x by scanning the enumeration, the check that
/// the reflections in Φ_x generate it, and a parabolic witness found by
/// matching Φ_x against conjugates of standard subsystems.
pub fn stabilizer(g: &GroupEnumeration, x: &EigenVectorPoint) -> Result<StabilizerReport> {
    let sys = g.system();
    let mut report = n_of(sys, x)?;
    let l = x.coordinates[0].conductor();

    let mut fixed: Vec<u32> = (0..g.len() as u32)
        .into_par_iter()
        .filter(|&id| g.matrix(id).lift(l).matvec(&x.coordinates) == x.coordinates)
        .collect();
    fixed.sort_unstable();
    report.group_order = Some(fixed.len() as u64);

    let gens: Vec<u32> = report
        .phi_x
        .iter()
        .filter(|&r| r < sys.num_pairs())
        .map(|r| g.reflection_id(r))
        .collect();
    report.reflections_generate = Some(g.subgroup_closure(&gens) == fixed);

    let n = sys.rank();
    'subsets: for mask in 0u32..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let seed: RootSet = subset.iter().copied().collect();
        let phi_i = sys.subsystem_closure(&seed);
        if phi_i.count() != report.phi_x.count() {
            continue;
        }
        for w in 0..g.len() as u32 {
            let p = g.full_perm(w);
            let mapped: RootSet = phi_i.iter().map(|r| p[r] as usize).collect();
            if mapped == report.phi_x {
                report.parabolic_witness = Some(ParabolicWitness {
                    conjugator: w,
                    simple_subset: subset,
                });
                break 'subsets;
            }
        }
    }
    Ok(report)
}

/// Memoized recursion over the flats of the root arrangement inside
/// eigenspaces. One instance may serve many eigenspaces; every distinct flat
/// is analyzed once.
pub struct FlatScan<'a> {
    system: &'a RootSystem,
    functionals: HashMap<u32, Vec<Vec<CycloNum>>>,
    visited: HashMap<Subspace, RootSet>,
    best: HashMap<Subspace, (usize, Subspace)>,
}

impl<'a> FlatScan<'a> {
    pub fn new(system: &'a RootSystem) -> Self {
        FlatScan {
            system,
            functionals: HashMap::new(),
            visited: HashMap::new(),
            best: HashMap::new(),
        }
    }

    fn functionals_at(&mut self, conductor: u32) -> Vec<Vec<CycloNum>> {
        let system = self.system;
        self.functionals
            .entry(conductor)
            .or_insert_with(|| {
                (0..system.num_pairs())
                    .map(|r| {
                        system
                            .functional(r)
                            .iter()
                            .map(|c| c.lift(conductor))
                            .collect()
                    })
                    .collect()
            })
            .clone()
    }

    /// Largest |Φ_F| over all flats F of the arrangement inside e, with a
    /// flat attaining it. min N over nonzero x ∈ e is |Φ| minus this.
    pub fn max_orth_over(&mut self, e: &Subspace) -> Result<(usize, Subspace)> {
        if e.is_zero_space() {
            return Err(Error::EmptyEigenspace);
        }
        let funcs = self.functionals_at(e.conductor());
        Ok(self.visit(e, &funcs))
    }

    fn visit(&mut self, e: &Subspace, funcs: &[Vec<CycloNum>]) -> (usize, Subspace) {
        if let Some(hit) = self.best.get(e) {
            return hit.clone();
        }
        let mut orth = RootSet::empty();
        for (r, f) in funcs.iter().enumerate() {
            let vanishes = (0..e.dim()).all(|i| crate::cyclo::dot(e.basis().row(i), f).is_zero());
            if vanishes {
                orth.insert(r);
                orth.insert(self.system.neg_index(r));
            }
        }
        let mut best = (orth.count(), e.clone());
        for (r, f) in funcs.iter().enumerate() {
            if orth.contains(r) {
                continue;
            }
            if let CapResult::Lower(sub) = e.cap_hyperplane(f) {
                if !sub.is_zero_space() {
                    let child = self.visit(&sub, funcs);
                    if child.0 > best.0 {
                        best = child;
                    }
                }
            }
        }
        self.visited.insert(e.clone(), orth);
        self.best.insert(e.clone(), best.clone());
        best
    }

    /// The orthogonal root set recorded for a visited flat.
    pub fn orth_of(&self, flat: &Subspace) -> Option<&RootSet> {
        self.visited.get(flat)
    }

    /// Every flat analyzed so far with its orthogonal root set. Flats are
    /// visited for every nonzero point of every scanned eigenspace, so the
    /// counts here are the complete set of realizable |Φ_x| values.
    pub fn visited_flats(&self) -> impl Iterator<Item = (&Subspace, &RootSet)> {
        self.visited.iter()
    }
}

/// Exact minimum of N over one eigenspace.
pub fn min_n_over_eigenspace(
    scan: &mut FlatScan,
    e: &Subspace,
) -> Result<(usize, Subspace, RootSet)> {
    let (orth, flat) = scan.max_orth_over(e)?;
    let phi = scan.orth_of(&flat).expect("witness flat was visited").clone();
    Ok((scan.system.num_roots() - orth, flat, phi))
}

/// Ids of all elements admitting a primitive b-th root of unity eigenvalue.
pub fn admitting_ids(g: &GroupEnumeration, b: u32) -> Vec<u32> {
    (0..g.len() as u32)
        .into_par_iter()
        .filter(|&id| g.charpoly(id).admits(b))
        .collect()
}

/// Exact minimum of N over V(b) = ⋃_w Ω(w, ζ_b), given the ids of the
/// admitting elements. Emptiness of V(b) is cross-checked against degree
/// divisibility; a mismatch is a theorem failure, not an input error.
pub fn min_n(
    g: &GroupEnumeration,
    b: u32,
    admitting: &[u32],
    scan: &mut FlatScan,
) -> Result<VerificationRecord> {
    let sys = g.system();
    let n = sys.rank();
    let bound = b as usize * n;
    let divides_some = sys.facts().degrees.iter().any(|&d| d % b == 0);
    if admitting.is_empty() == divides_some {
        return Err(Error::TheoremViolation(format!(
            "emptiness of V({b}) disagrees with degree divisibility for {}",
            sys.label()
        )));
    }
    if admitting.is_empty() {
        return Ok(VerificationRecord {
            label: sys.label(),
            b,
            v_b_nonempty: false,
            min_n: None,
            bound,
            equality: false,
            witness_flat: None,
            witness_phi: None,
            elements_scanned: 0,
        });
    }

    let l = lcm_conductor(sys.conductor(), b);
    let z = CycloNum::root_of_unity(l, b)?;
    let spaces: Vec<Subspace> = admitting
        .par_iter()
        .map(|&id| Subspace::kernel_of(&g.matrix(id).lift(l).sub_scalar_identity(&z)))
        .collect();
    if spaces.iter().any(Subspace::is_zero_space) {
        return Err(Error::TheoremViolation(format!(
            "an element of {} admits ζ_{b} by characteristic polynomial but has trivial kernel",
            sys.label()
        )));
    }
    let mut distinct: Vec<Subspace> = spaces;
    distinct.sort();
    distinct.dedup();

    let mut best: Option<(usize, Subspace)> = None;
    for e in &distinct {
        let hit = scan.max_orth_over(e)?;
        if best.as_ref().map_or(true, |b| hit.0 > b.0) {
            best = Some(hit);
        }
    }
    let (orth, flat) = best.expect("at least one eigenspace");
    let phi = scan.orth_of(&flat).expect("witness flat was visited").clone();
    let min_n = sys.num_roots() - orth;
    Ok(VerificationRecord {
        label: sys.label(),
        b,
        v_b_nonempty: true,
        min_n: Some(min_n),
        bound,
        equality: min_n == bound,
        witness_flat: Some(flat),
        witness_phi: Some(phi),
        elements_scanned: admitting.len(),
    })
}

/// As min_n, computing the admitting set on the fly.
pub fn min_n_direct(g: &GroupEnumeration, b: u32, scan: &mut FlatScan) -> Result<VerificationRecord> {
    let ids = admitting_ids(g, b);
    min_n(g, b, &ids, scan)
}

/// For every w in the standard parabolic W_I and ζ = ζ_b with b ≥ 2, check
/// Ω(w, ζ) ⊆ span(I): the eigenspace computed inside the parabolic is already
/// the eigenspace in the full space.
pub fn check_parabolic_eigenspace_lemma(
    g: &GroupEnumeration,
    subset: &[usize],
    b: u32,
) -> Result<bool> {
    let sys = g.system();
    let n = sys.rank();
    if b < 2 {
        return Err(Error::Precondition(
            "the eigenvalue must differ from 1 (b ≥ 2)".into(),
        ));
    }
    if subset.len() >= n || subset.iter().any(|&i| i >= n) {
        return Err(Error::Precondition(
            "I must be a proper subset of the simple roots".into(),
        ));
    }
    let l = lcm_conductor(sys.conductor(), b);
    let rows: Vec<Vec<CycloNum>> = subset
        .iter()
        .map(|&i| {
            let mut row = vec![CycloNum::zero(l); n];
            row[i] = CycloNum::one(l);
            row
        })
        .collect();
    let vi = Subspace::from_rows(n, l, rows);
    let gens: Vec<u32> = subset.iter().map(|&i| g.reflection_id(i)).collect();
    for w in g.subgroup_closure(&gens) {
        if !vi.contains_subspace(&eigenspace(g, w, b)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Conjugacy-class data of one standard parabolic subsystem Φ_I. Root count,
/// rank, component types, and degrees are conjugation invariants, so the
/// standard subsets exhaust all parabolics.
#[derive(Clone, Debug)]
pub struct ParabolicClass {
    pub simple_subset: Vec<usize>,
    pub types: Vec<(TypeLabel, usize)>,
    pub rank: usize,
    pub root_count: usize,
    pub degrees: Vec<u32>,
}

/// Survey of every proper standard parabolic subsystem.
pub fn standard_parabolic_survey(sys: &RootSystem) -> Result<Vec<ParabolicClass>> {
    let n = sys.rank();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask == (1 << n) - 1 {
            continue;
        }
        let subset: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let seed: RootSet = subset.iter().copied().collect();
        let phi = sys.subsystem_closure(&seed);
        out.push(ParabolicClass {
            simple_subset: subset,
            types: sys.classify_subsystem(&phi)?,
            rank: sys.subsystem_rank(&phi),
            root_count: phi.count(),
            degrees: sys.subsystem_degrees(&phi)?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::TypeLabel;
    use crate::wgroup::DEFAULT_CAP;

    fn group(label: &str) -> GroupEnumeration {
        GroupEnumeration::build(TypeLabel::parse(label).unwrap(), DEFAULT_CAP).unwrap()
    }

    fn point(g: &GroupEnumeration, ints: &[i64]) -> EigenVectorPoint {
        let coords = ints
            .iter()
            .map(|&k| CycloNum::from_int(g.system().conductor(), k))
            .collect();
        EigenVectorPoint::new(g.system().label(), coords)
    }

    #[test]
    fn identity_eigenspace_at_b1_is_everything() {
        let g = group("A2");
        assert!(eigenspace(&g, g.identity_id(), 1).is_full());
    }

    #[test]
    fn a2_coxeter_zeta3_eigenspace_is_a_regular_line() {
        let g = group("A2");
        let c = g.coxeter_element_id();
        let e = eigenspace(&g, c, 3);
        assert_eq!(e.dim(), 1);
        assert!(orthogonal_roots(g.system(), &e).is_empty());
    }

    #[test]
    fn reflection_eigenspace_at_b2_is_its_root_line() {
        let g = group("A2");
        for &(root, id) in g.reflections() {
            let e = eigenspace(&g, id, 2);
            assert_eq!(e.dim(), 1);
            let alpha: Vec<CycloNum> = g.system().root(root).to_vec();
            assert!(e.contains(&alpha));
        }
    }

    #[test]
    fn orthogonal_roots_at_the_extremes() {
        let g = group("B2");
        let sys = g.system();
        let full = Subspace::full(2, sys.conductor());
        assert!(orthogonal_roots(sys, &full).is_empty());
        let zero = Subspace::zero_space(2, sys.conductor());
        assert_eq!(orthogonal_roots(sys, &zero).count(), sys.num_roots());
    }

    #[test]
    fn a3_wall_point_has_n_ten() {
        // In the four-coordinate model this is (c, -c, 0, 0); on the root
        // basis that is c times the first simple root.
        let g = group("A3");
        let x = point(&g, &[1, 0, 0]);
        let report = n_of(g.system(), &x).unwrap();
        assert_eq!(report.phi_x.count(), 2);
        assert_eq!(report.n_value, 10);

        let full = stabilizer(&g, &x).unwrap();
        assert_eq!(full.group_order, Some(2));
        assert_eq!(full.reflections_generate, Some(true));
        let witness = full.parabolic_witness.expect("stabilizers are parabolic");
        assert_eq!(witness.simple_subset.len(), 1);
    }

    #[test]
    fn zero_vector_is_rejected() {
        let g = group("A2");
        let x = point(&g, &[0, 0]);
        assert!(matches!(n_of(g.system(), &x), Err(Error::ZeroVector)));
    }

    #[test]
    fn regular_point_has_trivial_stabilizer() {
        let g = group("A3");
        let x = point(&g, &[1, 17, 401]);
        let report = stabilizer(&g, &x).unwrap();
        assert!(report.phi_x.is_empty());
        assert_eq!(report.n_value, 12);
        assert_eq!(report.group_order, Some(1));
        assert_eq!(report.reflections_generate, Some(true));
        let witness = report.parabolic_witness.unwrap();
        assert!(witness.simple_subset.is_empty());
    }

    #[test]
    fn a2_minima_across_b() {
        let g = group("A2");
        let mut scan = FlatScan::new(g.system());
        let r1 = min_n_direct(&g, 1, &mut scan).unwrap();
        assert_eq!(r1.min_n, Some(4));
        assert!(!r1.equality);
        let r2 = min_n_direct(&g, 2, &mut scan).unwrap();
        assert_eq!(r2.min_n, Some(6));
        assert!(!r2.equality, "6 > 4 = bn strictly");
        let r3 = min_n_direct(&g, 3, &mut scan).unwrap();
        assert_eq!(r3.min_n, Some(6));
        assert!(r3.equality, "b = h attains bn");
        let r4 = min_n_direct(&g, 4, &mut scan).unwrap();
        assert!(!r4.v_b_nonempty);
        assert_eq!(r4.min_n, None);
    }

    #[test]
    fn b2_minima_across_b() {
        let g = group("B2");
        let mut scan = FlatScan::new(g.system());
        for (b, expect) in [(1u32, Some(6)), (2, Some(6)), (4, Some(8))] {
            let r = min_n_direct(&g, b, &mut scan).unwrap();
            assert_eq!(r.min_n, expect, "B2 b={b}");
            assert_eq!(r.equality, b == 4);
        }
        assert!(!min_n_direct(&g, 3, &mut scan).unwrap().v_b_nonempty);
    }

    #[test]
    fn kostant_regularity_for_small_types() {
        for label in ["A3", "B3", "H3", "I2(5)", "G2"] {
            let g = group(label);
            let facts = g.system().facts();
            let h = facts.coxeter_number;
            let ids = admitting_ids(&g, h);
            assert!(!ids.is_empty(), "{label}: coxeter elements admit ζ_h");
            for &id in &ids {
                assert_eq!(g.order_of(id), h, "{label}: h-admitting elements have order h");
            }
            let mut scan = FlatScan::new(g.system());
            let r = min_n(&g, h, &ids, &mut scan).unwrap();
            assert_eq!(r.min_n, Some(facts.num_roots), "{label}: V(h) is regular");
            assert!(r.equality, "{label}: nh = hn");
        }
    }

    #[test]
    fn min_over_zero_subspace_is_an_error() {
        let g = group("A2");
        let mut scan = FlatScan::new(g.system());
        let zero = Subspace::zero_space(2, 1);
        assert!(matches!(
            scan.max_orth_over(&zero),
            Err(Error::EmptyEigenspace)
        ));
    }

    #[test]
    fn eigenspaces_of_a_parabolic_stay_in_its_span() {
        let g = group("A3");
        assert!(check_parabolic_eigenspace_lemma(&g, &[0, 1], 3).unwrap());
        assert!(check_parabolic_eigenspace_lemma(&g, &[0], 2).unwrap());
        assert!(check_parabolic_eigenspace_lemma(&g, &[1, 2], 2).unwrap());
        assert!(matches!(
            check_parabolic_eigenspace_lemma(&g, &[0], 1),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            check_parabolic_eigenspace_lemma(&g, &[0, 1, 2], 2),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn flat_scan_is_shared_across_eigenspaces() {
        let g = group("B3");
        let mut scan = FlatScan::new(g.system());
        let r2 = min_n_direct(&g, 2, &mut scan).unwrap();
        let visited_after_first = scan.visited_flats().count();
        let r2_again = min_n_direct(&g, 2, &mut scan).unwrap();
        assert_eq!(scan.visited_flats().count(), visited_after_first);
        assert_eq!(r2.min_n, r2_again.min_n);
        assert_eq!(r2.witness_flat, r2_again.witness_flat);
    }

    #[test]
    fn parabolic_survey_of_a3_matches_hand_count() {
        let sys = crate::rootsys::build_root_system(TypeLabel::A(3)).unwrap();
        let survey = standard_parabolic_survey(&sys).unwrap();
        assert_eq!(survey.len(), 7);
        let max_roots = survey.iter().map(|c| c.root_count).max().unwrap();
        // A2 (6 roots) beats A1 x A1 (4 roots).
        assert_eq!(max_roots, 6);
        for class in &survey {
            if class.root_count == 6 {
                assert_eq!(class.types, vec![(TypeLabel::A(2), 6)]);
                assert_eq!(class.degrees, vec![2, 3]);
            }
        }
    }
}
