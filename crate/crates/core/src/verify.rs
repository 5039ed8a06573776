//! The end-to-end verification driver: for a type and a list of b values,
//! compute min N over every V(b) and check the main inequality
//! min N ≥ b·n with equality exactly at the Coxeter number, plus the
//! regularity statement at b = h (every h-admitting element has order h).

use std::time::Instant;

use crate::cyclo::divisors;
use crate::eigenstab::{min_n, FlatScan, VerificationRecord};
use crate::error::{Error, Result};
use crate::rootsys::GroupFacts;
use crate::wgroup::GroupEnumeration;

/// Every b for which V(b) can be nonzero: the divisors of the degrees.
pub fn divisor_b_list(facts: &GroupFacts) -> Vec<u32> {
    let mut bs: Vec<u32> = facts.degrees.iter().flat_map(|&d| divisors(d)).collect();
    bs.sort_unstable();
    bs.dedup();
    bs
}

#[derive(Clone, Debug)]
pub struct BResult {
    pub record: VerificationRecord,
    pub wall_time_ms: u128,
}

#[derive(Clone, Debug)]
pub struct TypeRun {
    pub facts: GroupFacts,
    pub results: Vec<BResult>,
}

/// Run the minimization for each requested b over a shared flat scan.
/// Admitting elements for all b values are classified in one parallel pass
/// when the list fits the 32-bit analysis mask.
pub fn verify_type(g: &GroupEnumeration, bs: &[u32]) -> Result<TypeRun> {
    let facts = g.system().facts();
    let mut scan = FlatScan::new(g.system());
    let mut results = Vec::with_capacity(bs.len());
    let masks = if bs.len() <= 32 {
        Some(g.analyze_all(bs))
    } else {
        None
    };
    for (j, &b) in bs.iter().enumerate() {
        let start = Instant::now();
        let admitting: Vec<u32> = match &masks {
            Some(rows) => rows
                .iter()
                .enumerate()
                .filter(|(_, a)| a.admits >> j & 1 == 1)
                .map(|(id, _)| id as u32)
                .collect(),
            None => crate::eigenstab::admitting_ids(g, b),
        };
        let record = min_n(g, b, &admitting, &mut scan)?;
        results.push(BResult {
            record,
            wall_time_ms: start.elapsed().as_millis(),
        });
    }
    Ok(TypeRun { facts, results })
}

/// The theorem assertion for one record: for nonempty V(b), min N ≥ b·n and
/// equality exactly when b is the Coxeter number. Violations come back as
/// errors carrying the counterexample data.
pub fn assert_main_inequality(facts: &GroupFacts, record: &VerificationRecord) -> Result<()> {
    let divides_some = facts.degrees.iter().any(|&d| d % record.b == 0);
    if record.v_b_nonempty != divides_some {
        return Err(Error::TheoremViolation(format!(
            "{} b={}: V(b) nonempty = {} but b divides a degree = {}",
            facts.label, record.b, record.v_b_nonempty, divides_some
        )));
    }
    let Some(m) = record.min_n else {
        return Ok(());
    };
    if m < record.bound {
        return Err(Error::TheoremViolation(format!(
            "{} b={}: min N = {m} < bound {}",
            facts.label, record.b, record.bound
        )));
    }
    let at_coxeter = record.b == facts.coxeter_number;
    if (m == record.bound) != at_coxeter {
        return Err(Error::TheoremViolation(format!(
            "{} b={}: min N = {m}, bound {}, equality should hold iff b = h = {}",
            facts.label, record.b, record.bound, facts.coxeter_number
        )));
    }
    Ok(())
}

/// Every element admitting ζ_h has order exactly h, and its ζ_h-eigenvectors
/// are regular; together with the b = h record this is the regularity
/// statement at the Coxeter number.
pub fn kostant_orders(g: &GroupEnumeration, admitting_at_h: &[u32]) -> Result<()> {
    let facts = g.system().facts();
    let h = facts.coxeter_number;
    for &id in admitting_at_h {
        let order = g.order_of(id);
        if order != h {
            return Err(Error::TheoremViolation(format!(
                "{}: element {id} admits zeta_{h} but has order {order}",
                facts.label
            )));
        }
    }
    Ok(())
}

/// Convenience wrapper: full divisor b-list, verification, and the theorem
/// assertions for one type.
pub fn verify_label_full(g: &GroupEnumeration) -> Result<TypeRun> {
    let facts = g.system().facts();
    let bs = divisor_b_list(&facts);
    let run = verify_type(g, &bs)?;
    for r in &run.results {
        assert_main_inequality(&facts, &r.record)?;
    }
    let h = facts.coxeter_number;
    let at_h: Vec<u32> = crate::eigenstab::admitting_ids(g, h);
    kostant_orders(g, &at_h)?;
    Ok(run)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::TypeLabel;
    use crate::wgroup::DEFAULT_CAP;

    fn group(label: &str) -> GroupEnumeration {
        GroupEnumeration::build(TypeLabel::parse(label).unwrap(), DEFAULT_CAP).unwrap()
    }

    #[test]
    fn divisor_lists_come_from_the_degree_table() {
        let a2 = group("A2");
        assert_eq!(divisor_b_list(&a2.system().facts()), vec![1, 2, 3]);
        let f4 = crate::rootsys::build_root_system(TypeLabel::F4).unwrap();
        assert_eq!(
            divisor_b_list(&f4.facts()),
            vec![1, 2, 3, 4, 6, 8, 12]
        );
    }

    #[test]
    fn a2_full_run_passes_all_assertions() {
        let g = group("A2");
        let run = verify_label_full(&g).unwrap();
        assert_eq!(run.results.len(), 3);
        let minima: Vec<Option<usize>> =
            run.results.iter().map(|r| r.record.min_n).collect();
        assert_eq!(minima, vec![Some(4), Some(6), Some(6)]);
        let equalities: Vec<bool> =
            run.results.iter().map(|r| r.record.equality).collect();
        assert_eq!(equalities, vec![false, false, true]);
    }

    #[test]
    fn the_masked_and_direct_paths_agree() {
        let g = group("B3");
        let facts = g.system().facts();
        let bs = divisor_b_list(&facts);
        let run = verify_type(&g, &bs).unwrap();
        for (j, &b) in bs.iter().enumerate() {
            let direct = crate::eigenstab::admitting_ids(&g, b);
            assert_eq!(run.results[j].record.elements_scanned, direct.len(), "b={b}");
        }
    }

    #[test]
    fn explicit_non_divisors_report_empty_eigenspaces() {
        let g = group("A3");
        let run = verify_type(&g, &[5]).unwrap();
        let r = &run.results[0].record;
        assert!(!r.v_b_nonempty);
        assert_eq!(r.min_n, None);
        assert_eq!(r.elements_scanned, 0);
        assert_main_inequality(&g.system().facts(), r).unwrap();
    }

    #[test]
    fn kostant_holds_for_g2_and_b3() {
        for label in ["G2", "B3"] {
            let g = group(label);
            let h = g.system().facts().coxeter_number;
            let at_h = crate::eigenstab::admitting_ids(&g, h);
            assert!(!at_h.is_empty());
            kostant_orders(&g, &at_h).unwrap();
        }
    }

    #[test]
    fn a_tampered_record_is_caught() {
        let g = group("A2");
        let facts = g.system().facts();
        let run = verify_type(&g, &[2]).unwrap();
        let mut bad = run.results[0].record.clone();
        bad.min_n = Some(3);
        assert!(matches!(
            assert_main_inequality(&facts, &bad),
            Err(Error::TheoremViolation(_))
        ));
        let mut bad = run.results[0].record.clone();
        bad.v_b_nonempty = false;
        bad.min_n = None;
        assert!(matches!(
            assert_main_inequality(&facts, &bad),
            Err(Error::TheoremViolation(_))
        ));
    }
}
