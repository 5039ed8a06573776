//! Enumeration of a finite reflection group from its root system.
//!
//! Elements are stored compactly as the images of the simple roots, which
//! determine the element. The enumeration is a breadth-first walk of the
//! Cayley graph under left multiplication by simple reflections, so the
//! spanning tree also yields a reduced word for every element.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::cyclo::poly::cyclotomic_polynomial_int;
use crate::cyclo::{lcm_conductor, rat, rat_int, CycloNum, Matrix, Rational};
use crate::error::{Error, Result};
use crate::rootsys::{build_root_system, RootSystem, TypeLabel};

/// Largest group order enumerated without an explicit opt-in. This admits
/// every rank ≤ 6 system in the standard tables (E6 has order 51840) while
/// keeping accidental E7/E8 requests from eating memory.
pub const DEFAULT_CAP: u64 = 51_840;

/// Store full root permutations per element only below this many bytes.
const PERM_STORAGE_LIMIT: usize = 8 << 20;

/// An element's image of the simple roots, as indices into the root list.
/// Positions at or beyond the rank are always zero.
type Compact = [u8; 8];

/// Characteristic polynomial of a group element on the reflection
/// representation, with ascending monic coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CharPoly {
    /// Integer coefficients (the matrix was conjugate to an integer matrix).
    Int(Vec<i128>),
    /// Cyclotomic coefficients at the root system's base conductor.
    Cyclo(Vec<CycloNum>),
}

impl CharPoly {
    pub fn degree(&self) -> usize {
        match self {
            CharPoly::Int(c) => c.len() - 1,
            CharPoly::Cyclo(c) => c.len() - 1,
        }
    }

    /// Does the element admit a primitive b-th root of unity as an
    /// eigenvalue? Decided exactly: for integer polynomials this is
    /// divisibility by the b-th cyclotomic polynomial, otherwise the
    /// polynomial is evaluated at a b-th root of unity in a common field.
    pub fn admits(&self, b: u32) -> bool {
        match self {
            CharPoly::Int(c) => {
                let phi = cyclotomic_polynomial_int(b);
                if phi.len() > c.len() {
                    return false;
                }
                int_divisible_by(c, &phi[..])
            }
            CharPoly::Cyclo(c) => {
                let l = lcm_conductor(c[0].conductor(), b);
                let z = CycloNum::root_of_unity(l, b).expect("lcm conductor admits b");
                let mut acc = CycloNum::zero(l);
                for k in (0..c.len()).rev() {
                    acc = &(&acc * &z) + &c[k].lift(l);
                }
                acc.is_zero()
            }
        }
    }

    /// Whether this is the characteristic polynomial of a reflection,
    /// namely (x + 1)(x - 1)^(n-1).
    pub fn is_reflection_poly(&self) -> bool {
        let n = self.degree();
        if n == 0 {
            return false;
        }
        let mut target = vec![1i128];
        for _ in 0..n - 1 {
            target = poly_mul_linear(&target, -1);
        }
        target = poly_mul_linear(&target, 1);
        match self {
            CharPoly::Int(c) => *c == target,
            CharPoly::Cyclo(c) => c.iter().zip(&target).all(|(a, &t)| {
                a.to_rational()
                    .map_or(false, |q| q == Rational::from_integer(BigInt::from(t)))
            }),
        }
    }
}

/// Multiply an ascending-coefficient polynomial by (x + r).
fn poly_mul_linear(p: &[i128], r: i128) -> Vec<i128> {
    let mut out = vec![0i128; p.len() + 1];
    for (k, &c) in p.iter().enumerate() {
        out[k] += c * r;
        out[k + 1] += c;
    }
    out
}

/// Exact divisibility of an integer polynomial by a monic integer divisor.
fn int_divisible_by(p: &[i128], q: &[BigInt]) -> bool {
    let dq = q.len() - 1;
    let mut r: Vec<BigInt> = p.iter().map(|&c| BigInt::from(c)).collect();
    for k in (dq..r.len()).rev() {
        if r[k].is_zero() {
            continue;
        }
        let f = std::mem::take(&mut r[k]);
        for t in 0..dq {
            let sub = &f * &q[t];
            r[k - dq + t] -= sub;
        }
    }
    r.iter().all(Zero::is_zero)
}

/// Faddeev-LeVerrier over machine integers. Returns None on overflow so the
/// caller can fall back to exact cyclotomic arithmetic.
fn charpoly_i128(a: &[i128], n: usize) -> Option<Vec<i128>> {
    let mut c = vec![0i128; n + 1];
    c[n] = 1;
    if n == 0 {
        return Some(c);
    }
    let mut m = a.to_vec();
    let mut tr = 0i128;
    for i in 0..n {
        tr = tr.checked_add(m[i * n + i])?;
    }
    c[n - 1] = -tr;
    for k in 2..=n {
        let mut t = m.clone();
        for i in 0..n {
            t[i * n + i] = t[i * n + i].checked_add(c[n - k + 1])?;
        }
        for (i, row) in m.chunks_exact_mut(n).enumerate() {
            for (l, slot) in row.iter_mut().enumerate() {
                let mut s = 0i128;
                for j in 0..n {
                    s = s.checked_add(a[i * n + j].checked_mul(t[j * n + l])?)?;
                }
                *slot = s;
            }
        }
        let mut tr = 0i128;
        for i in 0..n {
            tr = tr.checked_add(m[i * n + i])?;
        }
        if tr % (k as i128) != 0 {
            return None;
        }
        c[n - k] = -(tr / k as i128);
    }
    Some(c)
}

/// As above, over Z[t] with t^2 = t + 1 (the golden ratio ring), entries as
/// (rational, t-coefficient) pairs.
fn charpoly_tau(a: &[(i128, i128)], n: usize) -> Option<Vec<(i128, i128)>> {
    let mul = |x: (i128, i128), y: (i128, i128)| -> Option<(i128, i128)> {
        let p = x.0.checked_mul(y.0)?;
        let q = x.1.checked_mul(y.1)?;
        let r = x.0.checked_mul(y.1)?.checked_add(x.1.checked_mul(y.0)?)?;
        Some((p.checked_add(q)?, r.checked_add(q)?))
    };
    let add = |x: (i128, i128), y: (i128, i128)| -> Option<(i128, i128)> {
        Some((x.0.checked_add(y.0)?, x.1.checked_add(y.1)?))
    };
    let mut c = vec![(0i128, 0i128); n + 1];
    c[n] = (1, 0);
    if n == 0 {
        return Some(c);
    }
    let mut m = a.to_vec();
    let mut tr = (0i128, 0i128);
    for i in 0..n {
        tr = add(tr, m[i * n + i])?;
    }
    c[n - 1] = (-tr.0, -tr.1);
    for k in 2..=n {
        let mut t = m.clone();
        for i in 0..n {
            t[i * n + i] = add(t[i * n + i], c[n - k + 1])?;
        }
        let mut nm = vec![(0i128, 0i128); n * n];
        for i in 0..n {
            for l in 0..n {
                let mut s = (0i128, 0i128);
                for j in 0..n {
                    s = add(s, mul(a[i * n + j], t[j * n + l])?)?;
                }
                nm[i * n + l] = s;
            }
        }
        m = nm;
        let mut tr = (0i128, 0i128);
        for i in 0..n {
            tr = add(tr, m[i * n + i])?;
        }
        let k = k as i128;
        if tr.0 % k != 0 || tr.1 % k != 0 {
            return None;
        }
        c[n - k as usize] = (-(tr.0 / k), -(tr.1 / k));
    }
    Some(c)
}

/// Faddeev-LeVerrier over the cyclotomic field. Always succeeds; used when
/// no integral structure is available.
fn charpoly_cyclo(a: &Matrix) -> Vec<CycloNum> {
    let n = a.rows();
    let cond = a.conductor();
    let mut c = vec![CycloNum::zero(cond); n + 1];
    c[n] = CycloNum::one(cond);
    if n == 0 {
        return c;
    }
    let mut mk = a.clone();
    c[n - 1] = -&mk.trace();
    for k in 2..=n {
        let t = mk.add_scalar_identity(&c[n - k + 1]);
        mk = a.mul(&t);
        c[n - k] = -&mk.trace().scale(&rat(1, k as i64));
    }
    c
}

/// Read a conductor-5 cyclotomic number as a + b*tau with tau the golden
/// ratio, if it lies in that subring with machine-sized coordinates.
/// tau = -z5^2 - z5^3, so a + b*tau has coefficient vector (a, 0, -b, -b).
fn tau_parts(c: &CycloNum) -> Option<(i128, i128)> {
    debug_assert_eq!(c.conductor(), 5);
    let co = c.coeffs();
    if !co[1].is_zero() || co[2] != co[3] {
        return None;
    }
    Some((rational_to_i128(&co[0])?, -rational_to_i128(&co[2])?))
}

fn tau_combine(a: i128, b: i128) -> CycloNum {
    let z = Rational::zero();
    let nb = Rational::from_integer(BigInt::from(-b));
    CycloNum::from_coeffs(
        5,
        vec![Rational::from_integer(BigInt::from(a)), z, nb.clone(), nb],
    )
}

fn rational_to_i128(r: &Rational) -> Option<i128> {
    if !r.is_integer() {
        return None;
    }
    r.numer().to_i128()
}

/// Per-root integral coordinates, when the root system has a lattice (or
/// golden-ratio lattice) structure that makes element matrices integral.
enum RootCoords {
    Int(Vec<Vec<i128>>),
    Tau(Vec<Vec<(i128, i128)>>),
    Generic,
}

/// Node scaling that turns unit roots into a crystallographic lattice basis:
/// across a bond the length ratio is 2cos(pi/m) = -2 g_ij, which is rational
/// only in the presence of the right conductor. Returns (l, 1/l) per node.
fn crystallographic_scale(system: &RootSystem) -> Option<(Vec<CycloNum>, Vec<CycloNum>)> {
    let cond = system.conductor();
    let n = system.rank();
    let g = system.gram();
    let mut l: Vec<Option<CycloNum>> = vec![None; n];
    for start in 0..n {
        if l[start].is_some() {
            continue;
        }
        l[start] = Some(CycloNum::one(cond));
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let li = l[i].clone().unwrap();
            for j in 0..n {
                if j == i || l[j].is_some() || g.at(i, j).is_zero() {
                    continue;
                }
                let ratio = -&g.at(i, j).scale(&rat_int(2));
                l[j] = Some(&li * &ratio);
                stack.push(j);
            }
        }
    }
    let l: Vec<CycloNum> = l.into_iter().map(Option::unwrap).collect();
    let inv: Vec<CycloNum> = l
        .iter()
        .map(|x| x.inv().expect("scale factors are nonzero"))
        .collect();
    Some((l, inv))
}

fn integral_coordinates(system: &RootSystem) -> RootCoords {
    let cond = system.conductor();
    let nr = system.num_roots();
    match cond {
        1 => {
            let mut all = Vec::with_capacity(nr);
            for r in 0..nr {
                let mut v = Vec::with_capacity(system.rank());
                for c in system.root(r) {
                    match c.to_rational().and_then(|q| rational_to_i128(&q)) {
                        Some(z) => v.push(z),
                        None => return RootCoords::Generic,
                    }
                }
                all.push(v);
            }
            RootCoords::Int(all)
        }
        5 => {
            let mut all = Vec::with_capacity(nr);
            for r in 0..nr {
                let mut v = Vec::with_capacity(system.rank());
                for c in system.root(r) {
                    match tau_parts(c) {
                        Some(p) => v.push(p),
                        None => return RootCoords::Generic,
                    }
                }
                all.push(v);
            }
            RootCoords::Tau(all)
        }
        8 | 12 => {
            let Some((l, li)) = crystallographic_scale(system) else {
                return RootCoords::Generic;
            };
            let mut lengths: Vec<CycloNum> = Vec::new();
            for x in &l {
                if !lengths.contains(x) {
                    lengths.push(x.clone());
                }
            }
            let mut all = Vec::with_capacity(nr);
            'roots: for r in 0..nr {
                for lam in &lengths {
                    if let Some(v) = integral_root_in_lattice(system.root(r), lam, &li) {
                        all.push(v);
                        continue 'roots;
                    }
                }
                return RootCoords::Generic;
            }
            RootCoords::Int(all)
        }
        _ => RootCoords::Generic,
    }
}

/// Coordinates of lam * root on the lattice basis (l_i alpha_i), if integral.
fn integral_root_in_lattice(
    root: &[CycloNum],
    lam: &CycloNum,
    li: &[CycloNum],
) -> Option<Vec<i128>> {
    let mut v = Vec::with_capacity(root.len());
    for (i, c) in root.iter().enumerate() {
        let y = &(lam * c) * &li[i];
        let q = y.to_rational()?;
        v.push(rational_to_i128(&q)?);
    }
    Some(v)
}

/// Per-element summary used by the verification driver.
#[derive(Clone, Copy, Debug)]
pub struct ElementAnalysis {
    /// Multiplicative order of the element.
    pub order: u16,
    /// Bit k set when the element admits a primitive root of unity of order
    /// b_list[k] as an eigenvalue.
    pub admits: u32,
    pub is_reflection: bool,
}

impl std::fmt::Debug for GroupEnumeration {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupEnumeration")
            .field("label", &self.system.label())
            .field("elements", &self.elements.len())
            .finish()
    }
}

pub struct GroupEnumeration {
    system: RootSystem,
    elements: Vec<Compact>,
    parent: Vec<u32>,
    gen: Vec<u8>,
    index: HashMap<Compact, u32>,
    perms: Option<Vec<Vec<u8>>>,
    coords: RootCoords,
    /// (pair-representative root index, element id) of every reflection.
    reflections: Vec<(usize, u32)>,
    reflection_set: HashSet<u32>,
}

impl GroupEnumeration {
    pub fn build(label: TypeLabel, cap: u64) -> Result<GroupEnumeration> {
        let system = build_root_system(label)?;
        let required = system.facts().order;
        if required > cap {
            return Err(Error::GroupTooLarge { required, cap });
        }
        let n = system.rank();
        let nr = system.num_roots();
        let expected = required as usize;

        let mut elements: Vec<Compact> = Vec::with_capacity(expected);
        let mut parent: Vec<u32> = Vec::with_capacity(expected);
        let mut gen: Vec<u8> = Vec::with_capacity(expected);
        let mut index: HashMap<Compact, u32> = HashMap::with_capacity(expected * 2);
        let mut perms: Option<Vec<Vec<u8>>> = if expected.saturating_mul(nr) <= PERM_STORAGE_LIMIT
        {
            Some(Vec::with_capacity(expected))
        } else {
            None
        };

        let mut idc: Compact = [0; 8];
        for (j, slot) in idc.iter_mut().enumerate().take(n) {
            *slot = j as u8;
        }
        elements.push(idc);
        parent.push(u32::MAX);
        gen.push(0);
        index.insert(idc, 0);
        if let Some(ps) = &mut perms {
            ps.push((0..nr as u8).collect());
        }

        let mut head = 0usize;
        while head < elements.len() {
            let cur = elements[head];
            for i in 0..n {
                let pi = system.simple_perm(i);
                let mut nxt: Compact = [0; 8];
                for j in 0..n {
                    nxt[j] = pi[cur[j] as usize];
                }
                if index.contains_key(&nxt) {
                    continue;
                }
                if elements.len() >= expected {
                    return Err(Error::TheoremViolation(format!(
                        "enumeration of {} exceeded the tabulated order {}",
                        label, required
                    )));
                }
                let id = elements.len() as u32;
                index.insert(nxt, id);
                elements.push(nxt);
                parent.push(head as u32);
                gen.push(i as u8);
                if let Some(ps) = &mut perms {
                    let np: Vec<u8> = ps[head].iter().map(|&r| pi[r as usize]).collect();
                    ps.push(np);
                }
            }
            head += 1;
        }
        if elements.len() != expected {
            return Err(Error::TheoremViolation(format!(
                "enumeration of {} produced {} elements, tables say {}",
                label,
                elements.len(),
                required
            )));
        }

        let coords = integral_coordinates(&system);
        let mut reflections = Vec::with_capacity(system.num_pairs());
        for r in 0..system.num_pairs() {
            let m = system.reflection_matrix(r);
            let mut c: Compact = [0; 8];
            for (j, slot) in c.iter_mut().enumerate().take(n) {
                let img = system
                    .root_index(&m.col_vec(j))
                    .expect("reflection permutes the roots");
                *slot = img as u8;
            }
            reflections.push((r, index[&c]));
        }
        let reflection_set = reflections.iter().map(|&(_, id)| id).collect();

        Ok(GroupEnumeration {
            system,
            elements,
            parent,
            gen,
            index,
            perms,
            coords,
            reflections,
            reflection_set,
        })
    }

    pub fn system(&self) -> &RootSystem {
        &self.system
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn identity_id(&self) -> u32 {
        0
    }

    /// Image of the j-th simple root under the element, as a root index.
    pub fn simple_image(&self, id: u32, j: usize) -> usize {
        self.elements[id as usize][j] as usize
    }

    /// A reduced word for the element, as simple reflection indices whose
    /// left-to-right product is the element.
    pub fn word(&self, id: u32) -> Vec<u8> {
        let mut w = Vec::new();
        let mut cur = id;
        while self.parent[cur as usize] != u32::MAX {
            w.push(self.gen[cur as usize]);
            cur = self.parent[cur as usize];
        }
        w
    }

    /// The element's matrix on root-basis coordinates: column j is the
    /// coordinate vector of the image of the j-th simple root.
    pub fn matrix(&self, id: u32) -> Matrix {
        let n = self.system.rank();
        let cols = (0..n)
            .map(|j| self.system.root(self.simple_image(id, j)).to_vec())
            .collect();
        Matrix::from_columns(cols, n, self.system.conductor())
    }

    /// The element's permutation of all roots.
    pub fn full_perm(&self, id: u32) -> Vec<u8> {
        if let Some(ps) = &self.perms {
            return ps[id as usize].clone();
        }
        let nr = self.system.num_roots();
        let mut p: Vec<u8> = (0..nr as u8).collect();
        for &g in self.word(id).iter().rev() {
            let pg = self.system.simple_perm(g as usize);
            for slot in p.iter_mut() {
                *slot = pg[*slot as usize];
            }
        }
        p
    }

    pub fn multiply(&self, a: u32, b: u32) -> u32 {
        let pa = self.full_perm(a);
        let cb = self.elements[b as usize];
        let mut c: Compact = [0; 8];
        for j in 0..self.system.rank() {
            c[j] = pa[cb[j] as usize];
        }
        self.index[&c]
    }

    pub fn inverse(&self, id: u32) -> u32 {
        let p = self.full_perm(id);
        let mut inv = vec![0u8; p.len()];
        for (r, &img) in p.iter().enumerate() {
            inv[img as usize] = r as u8;
        }
        let mut c: Compact = [0; 8];
        c[..self.system.rank()].copy_from_slice(&inv[..self.system.rank()]);
        self.index[&c]
    }

    /// The product of all simple reflections in index order.
    pub fn coxeter_element_id(&self) -> u32 {
        let n = self.system.rank();
        let mut c = self.elements[0];
        for i in (0..n).rev() {
            let pi = self.system.simple_perm(i);
            for j in 0..n {
                c[j] = pi[c[j] as usize];
            }
        }
        self.index[&c]
    }

    /// Multiplicative order, computed from the faithful action on roots.
    pub fn order_of(&self, id: u32) -> u32 {
        let p = self.full_perm(id);
        let mut seen = vec![false; p.len()];
        let mut ord: u64 = 1;
        for s in 0..p.len() {
            if seen[s] {
                continue;
            }
            let mut len = 0u64;
            let mut cur = s;
            while !seen[cur] {
                seen[cur] = true;
                cur = p[cur] as usize;
                len += 1;
            }
            ord = num_integer::lcm(ord, len);
        }
        ord as u32
    }

    pub fn charpoly(&self, id: u32) -> CharPoly {
        let n = self.system.rank();
        let cols = &self.elements[id as usize];
        match &self.coords {
            RootCoords::Int(iy) => {
                let mut a = vec![0i128; n * n];
                for j in 0..n {
                    let y = &iy[cols[j] as usize];
                    for i in 0..n {
                        a[i * n + j] = y[i];
                    }
                }
                if let Some(p) = charpoly_i128(&a, n) {
                    return CharPoly::Int(p);
                }
            }
            RootCoords::Tau(ty) => {
                let mut a = vec![(0i128, 0i128); n * n];
                for j in 0..n {
                    let y = &ty[cols[j] as usize];
                    for i in 0..n {
                        a[i * n + j] = y[i];
                    }
                }
                if let Some(p) = charpoly_tau(&a, n) {
                    return CharPoly::Cyclo(
                        p.into_iter().map(|(x, y)| tau_combine(x, y)).collect(),
                    );
                }
            }
            RootCoords::Generic => {}
        }
        CharPoly::Cyclo(charpoly_cyclo(&self.matrix(id)))
    }

    pub fn reflections(&self) -> &[(usize, u32)] {
        &self.reflections
    }

    /// Element id of the reflection in the given root (either sign).
    pub fn reflection_id(&self, root: usize) -> u32 {
        let rep = self.system.pair_rep(root);
        self.reflections
            .iter()
            .find(|&&(r, _)| r == rep)
            .expect("every pair representative has a reflection")
            .1
    }

    pub fn is_reflection(&self, id: u32) -> bool {
        self.reflection_set.contains(&id)
    }

    /// Ids of the subgroup generated by the given elements, sorted.
    pub fn subgroup_closure(&self, gens: &[u32]) -> Vec<u32> {
        let perms: Vec<Vec<u8>> = gens.iter().map(|&g| self.full_perm(g)).collect();
        let n = self.system.rank();
        let mut seen = HashSet::new();
        seen.insert(0u32);
        let mut queue = vec![0u32];
        let mut head = 0;
        while head < queue.len() {
            let cur = self.elements[queue[head] as usize];
            for pg in &perms {
                let mut c: Compact = [0; 8];
                for j in 0..n {
                    c[j] = pg[cur[j] as usize];
                }
                let id = self.index[&c];
                if seen.insert(id) {
                    queue.push(id);
                }
            }
            head += 1;
        }
        let mut out: Vec<u32> = seen.into_iter().collect();
        out.sort_unstable();
        out
    }

    /// Order, admitted eigenvalue orders, and reflection flag for every
    /// element, in id order. b_list holds at most 32 entries.
    pub fn analyze_all(&self, b_list: &[u32]) -> Vec<ElementAnalysis> {
        assert!(b_list.len() <= 32, "admits mask holds at most 32 orders");
        (0..self.elements.len() as u32)
            .into_par_iter()
            .map(|id| {
                let p = self.charpoly(id);
                let mut mask = 0u32;
                for (k, &b) in b_list.iter().enumerate() {
                    if p.admits(b) {
                        mask |= 1 << k;
                    }
                }
                ElementAnalysis {
                    order: self.order_of(id) as u16,
                    admits: mask,
                    is_reflection: self.reflection_set.contains(&id),
                }
            })
            .collect()
    }
}
