//! Root systems of the finite irreducible reflection groups.
//!
//! Everything is built in root-basis coordinates: the simple roots are the
//! standard basis vectors and the geometry lives entirely in the Gram matrix
//! G with G_ii = 1 and G_ij = -cos(π/m_ij). That keeps base conductors small:
//! cos(π/m) lies in the real subfield of Q(ζ_{2m}), so simply laced types are
//! rational, B/F need ζ_8 (for √2), G_2 needs ζ_12, H_3/H_4 need ζ_5.
//!
//! All roots are normalized to squared length 1 under G, per the convention
//! that Φ consists of unit normals to the reflection hyperplanes; |Φ| is then
//! exactly twice the number of reflections.

use crate::cyclo::{lcm_conductor, rat, CycloNum, Matrix, Subspace};
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::fmt;

/// Label of a finite irreducible reflection group.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeLabel {
    A(u8),
    B(u8),
    D(u8),
    E6,
    E7,
    F4,
    G2,
    H3,
    H4,
    I2(u16),
}

/// Largest root count a `RootSet` can index. B_8 hits it exactly.
pub const MAX_ROOTS: usize = 128;

impl TypeLabel {
    /// Parse labels like `A5`, `B4`, `D6`, `E6`, `F4`, `G2`, `H3`, `H4`,
    /// `I2(7)`. Inadmissible or out-of-scale labels are rejected.
    pub fn parse(s: &str) -> Result<TypeLabel> {
        let s = s.trim();
        let bad = || Error::Parse(format!("unrecognized type label {s:?}"));
        let (family, rest) = s.split_at(s.len().min(1));
        let label = match family {
            "A" | "a" => TypeLabel::A(rest.parse().map_err(|_| bad())?),
            "B" | "b" | "C" | "c" => TypeLabel::B(rest.parse().map_err(|_| bad())?),
            "D" | "d" => TypeLabel::D(rest.parse().map_err(|_| bad())?),
            "E" | "e" => match rest {
                "6" => TypeLabel::E6,
                "7" => TypeLabel::E7,
                "8" => {
                    return Err(Error::UnsupportedType(
                        "E8 (|W| = 696729600) is out of desk scale and not supported".into(),
                    ))
                }
                _ => return Err(bad()),
            },
            "F" | "f" => match rest {
                "4" => TypeLabel::F4,
                _ => return Err(bad()),
            },
            "G" | "g" => match rest {
                "2" => TypeLabel::G2,
                _ => return Err(bad()),
            },
            "H" | "h" => match rest {
                "3" => TypeLabel::H3,
                "4" => TypeLabel::H4,
                _ => return Err(bad()),
            },
            "I" | "i" => {
                let inner = rest
                    .strip_prefix("2(")
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(bad)?;
                TypeLabel::I2(inner.parse().map_err(|_| bad())?)
            }
            _ => return Err(bad()),
        };
        label.check_admissible()?;
        Ok(label)
    }

    pub fn check_admissible(&self) -> Result<()> {
        let ok = match *self {
            TypeLabel::A(n) => (1..=8).contains(&n),
            TypeLabel::B(n) => (2..=8).contains(&n),
            TypeLabel::D(n) => (4..=8).contains(&n),
            TypeLabel::E6 | TypeLabel::E7 => true,
            TypeLabel::F4 | TypeLabel::G2 | TypeLabel::H3 | TypeLabel::H4 => true,
            TypeLabel::I2(m) => (3..=MAX_ROOTS as u16 / 2).contains(&m),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::UnsupportedType(format!(
                "{self} is not admissible (A1..A8, B2..B8, D4..D8, E6, E7, F4, G2, H3, H4, I2(3..=64))"
            )))
        }
    }

    pub fn rank(&self) -> usize {
        match *self {
            TypeLabel::A(n) | TypeLabel::B(n) | TypeLabel::D(n) => n as usize,
            TypeLabel::E6 => 6,
            TypeLabel::E7 => 7,
            TypeLabel::F4 => 4,
            TypeLabel::H4 => 4,
            TypeLabel::G2 | TypeLabel::I2(_) => 2,
            TypeLabel::H3 => 3,
        }
    }

    /// Fundamental degrees d_1 ≤ … ≤ d_n (static table; cross-validated
    /// against the enumerated group in wgroup tests).
    pub fn degrees(&self) -> Vec<u32> {
        let mut ds: Vec<u32> = match *self {
            TypeLabel::A(n) => (2..=n as u32 + 1).collect(),
            TypeLabel::B(n) => (1..=n as u32).map(|k| 2 * k).collect(),
            TypeLabel::D(n) => {
                let mut v: Vec<u32> = (1..n as u32).map(|k| 2 * k).collect();
                v.push(n as u32);
                v
            }
            TypeLabel::E6 => vec![2, 5, 6, 8, 9, 12],
            TypeLabel::E7 => vec![2, 6, 8, 10, 12, 14, 18],
            TypeLabel::F4 => vec![2, 6, 8, 12],
            TypeLabel::G2 => vec![2, 6],
            TypeLabel::H3 => vec![2, 6, 10],
            TypeLabel::H4 => vec![2, 12, 20, 30],
            TypeLabel::I2(m) => vec![2, m as u32],
        };
        ds.sort_unstable();
        ds
    }

    pub fn coxeter_number(&self) -> u32 {
        *self.degrees().last().unwrap()
    }

    pub fn group_order(&self) -> u64 {
        self.degrees().iter().map(|&d| d as u64).product()
    }

    pub fn num_roots(&self) -> usize {
        self.rank() * self.coxeter_number() as usize
    }

    /// Coxeter diagram as (i, j, m) edges with m ≥ 3; absent pairs commute.
    fn coxeter_edges(&self) -> Vec<(usize, usize, u32)> {
        let path = |n: usize| -> Vec<(usize, usize, u32)> {
            (0..n.saturating_sub(1)).map(|i| (i, i + 1, 3)).collect()
        };
        match *self {
            TypeLabel::A(n) => path(n as usize),
            TypeLabel::B(n) => {
                let n = n as usize;
                let mut e = path(n);
                e.last_mut().unwrap().2 = 4;
                e
            }
            TypeLabel::D(n) => {
                let n = n as usize;
                let mut e = path(n - 1);
                e.push((n - 3, n - 1, 3));
                e
            }
            TypeLabel::E6 => vec![(0, 2, 3), (2, 3, 3), (3, 4, 3), (4, 5, 3), (1, 3, 3)],
            TypeLabel::E7 => vec![
                (0, 2, 3),
                (2, 3, 3),
                (3, 4, 3),
                (4, 5, 3),
                (5, 6, 3),
                (1, 3, 3),
            ],
            TypeLabel::F4 => vec![(0, 1, 3), (1, 2, 4), (2, 3, 3)],
            TypeLabel::G2 => vec![(0, 1, 6)],
            TypeLabel::H3 => vec![(0, 1, 5), (1, 2, 3)],
            TypeLabel::H4 => vec![(0, 1, 5), (1, 2, 3), (2, 3, 3)],
            TypeLabel::I2(m) => vec![(0, 1, m as u32)],
        }
    }

    /// Smallest normalized conductor containing every Gram entry.
    pub fn base_conductor(&self) -> u32 {
        self.coxeter_edges()
            .iter()
            .filter(|&&(_, _, m)| m > 3)
            .fold(1, |acc, &(_, _, m)| lcm_conductor(acc, 2 * m))
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TypeLabel::A(n) => write!(f, "A{n}"),
            TypeLabel::B(n) => write!(f, "B{n}"),
            TypeLabel::D(n) => write!(f, "D{n}"),
            TypeLabel::E6 => write!(f, "E6"),
            TypeLabel::E7 => write!(f, "E7"),
            TypeLabel::F4 => write!(f, "F4"),
            TypeLabel::G2 => write!(f, "G2"),
            TypeLabel::H3 => write!(f, "H3"),
            TypeLabel::H4 => write!(f, "H4"),
            TypeLabel::I2(m) => write!(f, "I2({m})"),
        }
    }
}

impl fmt::Debug for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Static numeric facts about a group, available without construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupFacts {
    pub label: TypeLabel,
    pub rank: usize,
    pub degrees: Vec<u32>,
    pub coxeter_number: u32,
    pub order: u64,
    pub num_roots: usize,
    pub conductor: u32,
}

pub fn group_facts(label: TypeLabel) -> Result<GroupFacts> {
    label.check_admissible()?;
    Ok(GroupFacts {
        label,
        rank: label.rank(),
        degrees: label.degrees(),
        coxeter_number: label.coxeter_number(),
        order: label.group_order(),
        num_roots: label.num_roots(),
        conductor: label.base_conductor(),
    })
}

/// Set of root indices as a 128-bit bitset.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RootSet(u128);

impl RootSet {
    pub fn empty() -> Self {
        RootSet(0)
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < MAX_ROOTS);
        self.0 |= 1u128 << i;
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn union(&self, other: &RootSet) -> RootSet {
        RootSet(self.0 | other.0)
    }

    pub fn is_subset(&self, other: &RootSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..MAX_ROOTS).filter(|&i| self.contains(i))
    }
}

impl FromIterator<usize> for RootSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = RootSet::empty();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for RootSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootSet{:?}", self.iter().collect::<Vec<_>>())
    }
}

/// A root system in root-basis coordinates.
///
/// Roots are stored as one first-encountered representative per ± pair (the
/// simple roots occupy indices 0..n), followed by all negatives, so index
/// i + num_pairs is always −(index i).
pub struct RootSystem {
    label: TypeLabel,
    rank: usize,
    conductor: u32,
    gram: Matrix,
    roots: Vec<Vec<CycloNum>>,
    num_pairs: usize,
    /// functionals[i] = G·roots[i] for representatives; B(roots[i], x) is the
    /// plain dot product functionals[i]·x.
    functionals: Vec<Vec<CycloNum>>,
    /// simple_perms[i][r] = index of s_i(roots[r]).
    simple_perms: Vec<Vec<u8>>,
    index: HashMap<Vec<CycloNum>, usize>,
}

/// cos(π/m) as an exact cyclotomic, (ζ_{2m} + ζ_{2m}^{-1})/2.
fn cos_pi_over(m: u32, conductor: u32) -> Result<CycloNum> {
    match m {
        1 => Ok(CycloNum::from_int(conductor, -1)),
        2 => Ok(CycloNum::zero(conductor)),
        3 => Ok(CycloNum::from_rational(conductor, rat(1, 2))),
        _ => {
            let z = CycloNum::root_of_unity(conductor, 2 * m)?;
            let half = rat(1, 2);
            Ok((&z + &z.pow(-1)).scale(&half))
        }
    }
}

pub fn build_root_system(label: TypeLabel) -> Result<RootSystem> {
    label.check_admissible()?;
    let n = label.rank();
    let conductor = label.base_conductor();

    // Gram matrix from the Coxeter diagram.
    let mut gram = Matrix::identity(n, conductor);
    for (i, j, m) in label.coxeter_edges() {
        let c = -&cos_pi_over(m, conductor)?;
        *gram.at_mut(i, j) = c.clone();
        *gram.at_mut(j, i) = c;
    }

    // Orbit closure of the simple roots under the simple reflections:
    // s_i(v) = v - 2 B(α_i, v) α_i, which in root-basis coordinates only
    // changes coordinate i by -2(Gv)_i.
    let mut roots: Vec<Vec<CycloNum>> = Vec::new();
    let mut index: HashMap<Vec<CycloNum>, usize> = HashMap::new();
    for i in 0..n {
        let mut e = vec![CycloNum::zero(conductor); n];
        e[i] = CycloNum::one(conductor);
        index.insert(e.clone(), roots.len());
        roots.push(e);
    }
    let two = rat(2, 1);
    let mut head = 0;
    while head < roots.len() {
        let v = roots[head].clone();
        head += 1;
        for i in 0..n {
            let gv_i = crate::cyclo::dot(gram.row(i), &v);
            let mut w = v.clone();
            w[i] -= &gv_i.scale(&two);
            if !index.contains_key(&w) {
                if roots.len() == MAX_ROOTS {
                    return Err(Error::Dimension(format!(
                        "{label}: more than {MAX_ROOTS} roots"
                    )));
                }
                index.insert(w.clone(), roots.len());
                roots.push(w);
            }
        }
    }

    let expected = label.num_roots();
    if roots.len() != expected {
        return Err(Error::TheoremViolation(format!(
            "{label}: orbit closure found {} roots, |Φ| = n·h predicts {expected}",
            roots.len()
        )));
    }

    // Reorder: first-encountered representative of each ± pair, then all
    // negatives in matching order.
    let num_pairs = expected / 2;
    let mut reps: Vec<Vec<CycloNum>> = Vec::with_capacity(num_pairs);
    let mut rep_of: HashMap<Vec<CycloNum>, usize> = HashMap::new();
    for v in &roots {
        let negv: Vec<CycloNum> = v.iter().map(|c| -c).collect();
        if !rep_of.contains_key(v) && !rep_of.contains_key(&negv) {
            rep_of.insert(v.clone(), reps.len());
            reps.push(v.clone());
        }
    }
    assert_eq!(reps.len(), num_pairs, "roots do not pair up under negation");
    let mut ordered = reps;
    for i in 0..num_pairs {
        let negv: Vec<CycloNum> = ordered[i].iter().map(|c| -c).collect();
        ordered.push(negv);
    }
    let index: HashMap<Vec<CycloNum>, usize> = ordered
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), i))
        .collect();

    // Unit length under the Gram form, for every root.
    let functionals: Vec<Vec<CycloNum>> = ordered.iter().map(|v| gram.matvec(v)).collect();
    for (v, f) in ordered.iter().zip(&functionals) {
        let len = crate::cyclo::dot(f, v);
        if !len.is_one() {
            return Err(Error::TheoremViolation(format!(
                "{label}: root of squared length {len}, expected 1"
            )));
        }
    }

    // Root permutations induced by the simple reflections.
    let mut simple_perms = Vec::with_capacity(n);
    for i in 0..n {
        let mut perm = vec![0u8; ordered.len()];
        for (r, v) in ordered.iter().enumerate() {
            let gv_i = crate::cyclo::dot(gram.row(i), v);
            let mut w = v.clone();
            w[i] -= &gv_i.scale(&two);
            perm[r] = index[&w] as u8;
        }
        simple_perms.push(perm);
    }

    Ok(RootSystem {
        label,
        rank: n,
        conductor,
        gram,
        roots: ordered,
        num_pairs,
        functionals,
        simple_perms,
        index,
    })
}

impl RootSystem {
    pub fn label(&self) -> TypeLabel {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn facts(&self) -> GroupFacts {
        group_facts(self.label).expect("constructed systems are admissible")
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_pairs(&self) -> usize {
        self.num_pairs
    }

    pub fn root(&self, i: usize) -> &[CycloNum] {
        &self.roots[i]
    }

    pub fn roots(&self) -> &[Vec<CycloNum>] {
        &self.roots
    }

    /// B(roots[i], ·) as a dot-product functional.
    pub fn functional(&self, i: usize) -> &[CycloNum] {
        &self.functionals[i]
    }

    pub fn neg_index(&self, i: usize) -> usize {
        if i < self.num_pairs {
            i + self.num_pairs
        } else {
            i - self.num_pairs
        }
    }

    pub fn pair_rep(&self, i: usize) -> usize {
        if i < self.num_pairs {
            i
        } else {
            i - self.num_pairs
        }
    }

    pub fn simple_perm(&self, i: usize) -> &[u8] {
        &self.simple_perms[i]
    }

    pub fn root_index(&self, v: &[CycloNum]) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// B(roots[i], x) for an arbitrary vector at a conductor the base field
    /// embeds in.
    pub fn pairing_with_root(&self, i: usize, x: &[CycloNum]) -> CycloNum {
        let conductor = x[0].conductor();
        if conductor == self.conductor {
            return crate::cyclo::dot(&self.functionals[i], x);
        }
        let f: Vec<CycloNum> = self.functionals[i]
            .iter()
            .map(|c| c.lift(conductor))
            .collect();
        crate::cyclo::dot(&f, x)
    }

    /// The reflection s_α as a matrix, α = roots[i]: I − 2·α·(Gα)ᵀ.
    pub fn reflection_matrix(&self, i: usize) -> Matrix {
        let alpha = &self.roots[i];
        let f = &self.functionals[i];
        let mut m = Matrix::identity(self.rank, self.conductor);
        let two = rat(2, 1);
        for r in 0..self.rank {
            for c in 0..self.rank {
                let t = (&alpha[r] * &f[c]).scale(&two);
                let cur = m.at(r, c) - &t;
                *m.at_mut(r, c) = cur;
            }
        }
        m
    }

    /// Φ ∩ span(S): the closure that holds for every stabilizer subsystem.
    pub fn subsystem_closure(&self, s: &RootSet) -> RootSet {
        if s.is_empty() {
            return RootSet::empty();
        }
        let rows: Vec<Vec<CycloNum>> = s.iter().map(|i| self.roots[i].clone()).collect();
        let span = Subspace::from_rows(self.rank, self.conductor, rows);
        (0..self.roots.len())
            .filter(|&i| span.contains(&self.roots[i]))
            .collect()
    }

    /// Decompose a closed subsystem into irreducible components, naming each.
    ///
    /// Uses connected components of the non-orthogonality graph on ± pairs;
    /// each component is identified by (rank, root count), which separates
    /// all irreducible types except B6 vs E6 (both rank 6 with 72 roots) —
    /// those are split by whether some pair of roots meets at 45°.
    pub fn classify_subsystem(&self, s: &RootSet) -> Result<Vec<(TypeLabel, usize)>> {
        let reps: Vec<usize> = s.iter().filter(|&i| i < self.num_pairs).collect();
        for &r in &reps {
            if !s.contains(self.neg_index(r)) {
                return Err(Error::Dimension(format!(
                    "subsystem is not symmetric: contains root {r} but not its negative"
                )));
            }
        }
        if reps.is_empty() {
            return Ok(vec![]);
        }
        // Union-find over representatives.
        let mut parent: HashMap<usize, usize> = reps.iter().map(|&r| (r, r)).collect();
        fn find(parent: &mut HashMap<usize, usize>, x: usize) -> usize {
            let p = parent[&x];
            if p == x {
                return x;
            }
            let root = find(parent, p);
            parent.insert(x, root);
            root
        }
        for (ai, &a) in reps.iter().enumerate() {
            for &b in &reps[ai + 1..] {
                if !self.pairing_with_root(a, &self.roots[b]).is_zero() {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    if ra != rb {
                        parent.insert(ra, rb);
                    }
                }
            }
        }
        let mut comps: HashMap<usize, Vec<usize>> = HashMap::new();
        for &r in &reps {
            let root = find(&mut parent, r);
            comps.entry(root).or_default().push(r);
        }
        let mut out = Vec::new();
        for comp in comps.values() {
            let rows: Vec<Vec<CycloNum>> = comp.iter().map(|&i| self.roots[i].clone()).collect();
            let rank = Subspace::from_rows(self.rank, self.conductor, rows).dim();
            let count = 2 * comp.len();
            out.push((self.component_label(comp, rank, count)?, count));
        }
        out.sort_by_key(|&(label, count)| (count, label));
        Ok(out)
    }

    fn component_label(&self, comp: &[usize], rank: usize, count: usize) -> Result<TypeLabel> {
        let label = match (rank, count) {
            (1, 2) => TypeLabel::A(1),
            (2, m2) => match m2 / 2 {
                3 => TypeLabel::A(2),
                4 => TypeLabel::B(2),
                6 => TypeLabel::G2,
                m => TypeLabel::I2(m as u16),
            },
            (3, 12) => TypeLabel::A(3),
            (3, 18) => TypeLabel::B(3),
            (3, 30) => TypeLabel::H3,
            (4, 20) => TypeLabel::A(4),
            (4, 24) => TypeLabel::D(4),
            (4, 32) => TypeLabel::B(4),
            (4, 48) => TypeLabel::F4,
            (4, 120) => TypeLabel::H4,
            (5, 30) => TypeLabel::A(5),
            (5, 40) => TypeLabel::D(5),
            (5, 50) => TypeLabel::B(5),
            (6, 42) => TypeLabel::A(6),
            (6, 60) => TypeLabel::D(6),
            (6, 72) => {
                // B6 and E6 share (rank, count); only B6 has 45° root pairs,
                // i.e. B(α,β)² = 1/2.
                if self.has_sqrt_half_pairing(comp) {
                    TypeLabel::B(6)
                } else {
                    TypeLabel::E6
                }
            }
            (7, 56) => TypeLabel::A(7),
            (7, 84) => TypeLabel::D(7),
            (7, 98) => TypeLabel::B(7),
            (7, 126) => TypeLabel::E7,
            (8, 72) => TypeLabel::A(8),
            (8, 112) => TypeLabel::D(8),
            (8, 128) => TypeLabel::B(8),
            _ => {
                return Err(Error::Dimension(format!(
                    "no irreducible type with rank {rank} and {count} roots"
                )))
            }
        };
        Ok(label)
    }

    fn has_sqrt_half_pairing(&self, comp: &[usize]) -> bool {
        let half = CycloNum::from_rational(self.conductor, rat(1, 2));
        for (ai, &a) in comp.iter().enumerate() {
            for &b in comp.iter().skip(ai + 1) {
                let p = self.pairing_with_root(a, &self.roots[b]);
                if &p * &p == half {
                    return true;
                }
            }
        }
        false
    }

    /// Concatenated fundamental degrees of a closed subsystem's components.
    pub fn subsystem_degrees(&self, s: &RootSet) -> Result<Vec<u32>> {
        let mut ds = Vec::new();
        for (label, _) in self.classify_subsystem(s)? {
            ds.extend(label.degrees());
        }
        ds.sort_unstable();
        Ok(ds)
    }

    /// Rank (dimension of the span) of a set of roots.
    pub fn subsystem_rank(&self, s: &RootSet) -> usize {
        if s.is_empty() {
            return 0;
        }
        let rows: Vec<Vec<CycloNum>> = s.iter().map(|i| self.roots[i].clone()).collect();
        Subspace::from_rows(self.rank, self.conductor, rows).dim()
    }
}

impl fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RootSystem {} (rank {}, {} roots, conductor {})",
            self.label,
            self.rank,
            self.roots.len(),
            self.conductor
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_admissibility() {
        assert_eq!(TypeLabel::parse("A5").unwrap(), TypeLabel::A(5));
        assert_eq!(TypeLabel::parse("B4").unwrap(), TypeLabel::B(4));
        assert_eq!(TypeLabel::parse("D6").unwrap(), TypeLabel::D(6));
        assert_eq!(TypeLabel::parse("E6").unwrap(), TypeLabel::E6);
        assert_eq!(TypeLabel::parse("g2").unwrap(), TypeLabel::G2);
        assert_eq!(TypeLabel::parse("I2(7)").unwrap(), TypeLabel::I2(7));
        assert_eq!(TypeLabel::parse(" H3 ").unwrap(), TypeLabel::H3);
        // C is the same group as B for our purposes (equal root lengths).
        assert_eq!(TypeLabel::parse("C3").unwrap(), TypeLabel::B(3));
        for bad in ["E8", "A0", "A9", "B1", "D3", "I2(2)", "F5", "Q3", "I2(x)", ""] {
            assert!(TypeLabel::parse(bad).is_err(), "{bad} should be rejected");
        }
        match TypeLabel::parse("E8") {
            Err(Error::UnsupportedType(msg)) => assert!(msg.contains("desk scale")),
            other => panic!("expected UnsupportedType for E8, got {other:?}"),
        }
    }

    #[test]
    fn degrees_tables_are_internally_consistent() {
        let labels = all_acceptance_labels();
        for label in labels {
            let f = group_facts(label).unwrap();
            let prod: u64 = f.degrees.iter().map(|&d| d as u64).product();
            assert_eq!(prod, f.order, "{label}: Π d_i != |W|");
            let refl: u32 = f.degrees.iter().map(|d| d - 1).sum();
            assert_eq!(
                refl as usize,
                f.num_roots / 2,
                "{label}: Σ(d_i − 1) != |Φ|/2"
            );
            assert_eq!(
                f.num_roots,
                f.rank * f.coxeter_number as usize,
                "{label}: |Φ| != n·h"
            );
            assert!(f.degrees.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    fn all_acceptance_labels() -> Vec<TypeLabel> {
        let mut v = Vec::new();
        for n in 1..=7 {
            v.push(TypeLabel::A(n));
        }
        for n in 2..=6 {
            v.push(TypeLabel::B(n));
        }
        for n in 4..=6 {
            v.push(TypeLabel::D(n));
        }
        for m in 3..=12 {
            v.push(TypeLabel::I2(m));
        }
        v.extend([TypeLabel::G2, TypeLabel::F4, TypeLabel::H3, TypeLabel::H4, TypeLabel::E6]);
        v
    }

    #[test]
    fn base_conductors() {
        assert_eq!(TypeLabel::A(5).base_conductor(), 1);
        assert_eq!(TypeLabel::D(5).base_conductor(), 1);
        assert_eq!(TypeLabel::E6.base_conductor(), 1);
        assert_eq!(TypeLabel::B(4).base_conductor(), 8);
        assert_eq!(TypeLabel::F4.base_conductor(), 8);
        assert_eq!(TypeLabel::G2.base_conductor(), 12);
        assert_eq!(TypeLabel::H3.base_conductor(), 5);
        assert_eq!(TypeLabel::H4.base_conductor(), 5);
        assert_eq!(TypeLabel::I2(3).base_conductor(), 1);
        assert_eq!(TypeLabel::I2(4).base_conductor(), 8);
        assert_eq!(TypeLabel::I2(5).base_conductor(), 5);
        assert_eq!(TypeLabel::I2(6).base_conductor(), 12);
        assert_eq!(TypeLabel::I2(7).base_conductor(), 7);
        assert_eq!(TypeLabel::I2(12).base_conductor(), 24);
    }

    #[test]
    fn a2_root_system() {
        let rs = build_root_system(TypeLabel::A(2)).unwrap();
        assert_eq!(rs.num_roots(), 6);
        assert_eq!(rs.facts().coxeter_number, 3);
        assert_eq!(rs.facts().degrees, vec![2, 3]);
        // s_{α1}(α2) = α1 + α2 in simple-root coordinates.
        let s1 = rs.reflection_matrix(0);
        let image = s1.matvec(rs.root(1));
        let expected = vec![CycloNum::one(1), CycloNum::one(1)];
        assert_eq!(image, expected);
    }

    #[test]
    fn b2_by_orbit_closure() {
        let rs = build_root_system(TypeLabel::B(2)).unwrap();
        assert_eq!(rs.num_roots(), 8);
        assert_eq!(rs.facts().coxeter_number, 4);
        assert_eq!(rs.conductor(), 8);
    }

    #[test]
    fn root_counts_match_n_times_h() {
        for label in [
            TypeLabel::A(3),
            TypeLabel::B(3),
            TypeLabel::D(4),
            TypeLabel::F4,
            TypeLabel::G2,
            TypeLabel::H3,
            TypeLabel::I2(7),
            TypeLabel::E6,
        ] {
            let rs = build_root_system(label).unwrap();
            assert_eq!(rs.num_roots(), label.num_roots(), "{label}");
            assert_eq!(rs.num_pairs() * 2, rs.num_roots());
            // Negation pairing is structural.
            for i in 0..rs.num_pairs() {
                let neg: Vec<CycloNum> = rs.root(i).iter().map(|c| -c).collect();
                assert_eq!(rs.root(rs.neg_index(i)), &neg[..]);
            }
        }
    }

    #[test]
    fn reflections_are_gram_isometries_of_order_two() {
        for label in [TypeLabel::A(3), TypeLabel::B(3), TypeLabel::H3, TypeLabel::G2] {
            let rs = build_root_system(label).unwrap();
            for i in (0..rs.num_roots()).step_by(3) {
                let m = rs.reflection_matrix(i);
                assert!(m.mul(&m).is_identity(), "{label}: s_α² != 1");
                let mtgm = m.transpose().mul(rs.gram()).mul(&m);
                assert_eq!(&mtgm, rs.gram(), "{label}: s_α does not preserve B");
                // s_α(α) = -α.
                let neg: Vec<CycloNum> = rs.root(i).iter().map(|c| -c).collect();
                assert_eq!(m.matvec(rs.root(i)), neg);
            }
        }
    }

    #[test]
    fn simple_perms_act_consistently() {
        let rs = build_root_system(TypeLabel::B(3)).unwrap();
        for i in 0..rs.rank() {
            let perm = rs.simple_perm(i);
            let m = rs.reflection_matrix(i);
            for r in 0..rs.num_roots() {
                assert_eq!(m.matvec(rs.root(r)), rs.root(perm[r] as usize).to_vec());
                // Involution and negation-equivariance.
                assert_eq!(perm[perm[r] as usize] as usize, r);
                assert_eq!(
                    rs.neg_index(perm[r] as usize),
                    perm[rs.neg_index(r)] as usize
                );
            }
        }
    }

    #[test]
    fn closure_of_two_simple_a3_roots_is_a2() {
        let rs = build_root_system(TypeLabel::A(3)).unwrap();
        let s: RootSet = [0usize, 1].into_iter().collect();
        let closed = rs.subsystem_closure(&s);
        assert_eq!(closed.count(), 6);
        assert_eq!(
            rs.classify_subsystem(&closed).unwrap(),
            vec![(TypeLabel::A(2), 6)]
        );
        // Two orthogonal simple roots close to A1 × A1.
        let t: RootSet = [0usize, 2].into_iter().collect();
        let closed_t = rs.subsystem_closure(&t);
        assert_eq!(closed_t.count(), 4);
        assert_eq!(
            rs.classify_subsystem(&closed_t).unwrap(),
            vec![(TypeLabel::A(1), 2), (TypeLabel::A(1), 2)]
        );
        assert_eq!(rs.subsystem_degrees(&closed_t).unwrap(), vec![2, 2]);
    }

    #[test]
    fn closure_edge_cases() {
        let rs = build_root_system(TypeLabel::A(2)).unwrap();
        assert!(rs.subsystem_closure(&RootSet::empty()).is_empty());
        let pair: RootSet = [1usize, rs.neg_index(1)].into_iter().collect();
        assert_eq!(rs.subsystem_closure(&pair), pair);
    }

    #[test]
    fn full_systems_classify_as_themselves() {
        for label in [
            TypeLabel::A(4),
            TypeLabel::B(4),
            TypeLabel::D(4),
            TypeLabel::F4,
            TypeLabel::H3,
            TypeLabel::G2,
            TypeLabel::I2(5),
        ] {
            let rs = build_root_system(label).unwrap();
            let all: RootSet = (0..rs.num_roots()).collect();
            let classified = rs.classify_subsystem(&all).unwrap();
            assert_eq!(classified, vec![(label, rs.num_roots())], "{label}");
        }
    }

    #[test]
    fn b6_and_e6_subsystem_signatures_are_distinguished() {
        // Both full systems have rank 6 and 72 roots; classification must
        // tell them apart.
        for label in [TypeLabel::B(6), TypeLabel::E6] {
            let rs = build_root_system(label).unwrap();
            let all: RootSet = (0..rs.num_roots()).collect();
            assert_eq!(rs.classify_subsystem(&all).unwrap(), vec![(label, 72)]);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn subsystem_closure_is_a_closure_operator(
            picks in proptest::collection::vec(0usize..18, 0..5),
            extra in proptest::collection::vec(0usize..18, 0..3),
        ) {
            let rs = build_root_system(TypeLabel::B(3)).unwrap();
            let s: RootSet = picks.iter().copied().collect();
            let cl = rs.subsystem_closure(&s);
            // Extensive and idempotent.
            prop_assert!(s.is_subset(&cl));
            prop_assert_eq!(rs.subsystem_closure(&cl), cl);
            // Monotone.
            let t: RootSet = picks.iter().chain(extra.iter()).copied().collect();
            prop_assert!(cl.is_subset(&rs.subsystem_closure(&t)));
        }
    }
}
