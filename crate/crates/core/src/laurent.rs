//! The rationality application: given the leading term x·t^{a/b} of a
//! Cartan-valued Laurent element with gcd(a,b) = 1, the necessary condition
//! for rational conjugacy is x ∈ V(b), and in that case N(x) ≥ bn with
//! equality exactly when b is the Coxeter number. Only the leading term
//! matters; a itself never enters the computation beyond the coprimality
//! check.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cyclo::{parse_vector, CycloNum};
use crate::eigenstab::{n_of, EigenVectorPoint};
use crate::error::{Error, Result};
use crate::rootsys::TypeLabel;
use crate::springer::{in_vb_by_search_root, invariant_polynomials};
use crate::wgroup::GroupEnumeration;

#[derive(Clone, Debug)]
pub struct LaurentLeading {
    pub label: TypeLabel,
    pub a: i64,
    pub b: u32,
    /// Leading coefficient vector; model coordinates for classical types,
    /// root-basis coordinates otherwise (type A also accepts a rank-length
    /// root-basis vector, the one case where the two lengths differ).
    pub x: Vec<CycloNum>,
    /// Whether the input carried higher-order terms; they are ignored.
    pub higher_ignored: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Conclusion {
    FailsNecessaryCondition,
    PassesNecessaryCondition,
}

#[derive(Clone, Debug, Serialize)]
pub struct RationalityVerdict {
    #[serde(rename = "in_Vb")]
    pub in_vb: bool,
    #[serde(rename = "N")]
    pub n_value: usize,
    pub bound: usize,
    pub equality: bool,
    pub conclusion: Conclusion,
    pub witness_order: Option<u32>,
    #[serde(skip)]
    pub witness: Option<u32>,
}

#[derive(Deserialize)]
struct RawLeading {
    #[serde(rename = "type")]
    label: String,
    a: i64,
    b: i64,
    x: Vec<String>,
    #[serde(default)]
    higher: Option<serde_json::Value>,
}

/// Parse the JSON input {"type", "a", "b", "x", "higher"?}. The scalar
/// entries use the usual literal grammar (`1`, `-1/2`, `z4`, `z12^5 + 1`).
pub fn parse_leading_term(text: &str) -> Result<LaurentLeading> {
    let raw: RawLeading =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("bad leading term: {e}")))?;
    let label = TypeLabel::parse(&raw.label)?;
    if raw.b <= 0 || raw.b > u32::MAX as i64 {
        return Err(Error::Parse(format!("b must be a positive integer, got {}", raw.b)));
    }
    let b = raw.b as u32;
    if raw.a.unsigned_abs().gcd(&(b as u64)) != 1 {
        return Err(Error::NotCoprime { a: raw.a, b });
    }
    if raw.x.is_empty() {
        return Err(Error::ZeroLeadingTerm);
    }
    let joined = raw.x.join(",");
    let x = parse_vector(&joined)?;
    if x.iter().all(CycloNum::is_zero) {
        return Err(Error::ZeroLeadingTerm);
    }
    Ok(LaurentLeading {
        label,
        a: raw.a,
        b,
        x,
        higher_ignored: raw.higher.is_some(),
    })
}

/// Decide the necessary condition for the leading term: membership in V(b)
/// by exhaustive eigen-search (cross-checked against invariant vanishing in
/// the classical types), then N(x) against bn.
pub fn check_rationality_necessary(
    g: &GroupEnumeration,
    ll: &LaurentLeading,
) -> Result<RationalityVerdict> {
    let sys = g.system();
    if sys.label() != ll.label {
        return Err(Error::Precondition(format!(
            "enumeration is for {}, leading term for {}",
            sys.label(),
            ll.label
        )));
    }
    if ll.x.iter().all(CycloNum::is_zero) {
        return Err(Error::ZeroLeadingTerm);
    }
    let inv = invariant_polynomials(ll.label)?;
    let n = sys.rank();
    let x_model: Vec<CycloNum> = if ll.x.len() == inv.model_dim() {
        ll.x.clone()
    } else if ll.x.len() == n {
        inv.to_model_coords(&ll.x)?
    } else {
        return Err(Error::Dimension(format!(
            "{} takes {} model coordinates (or {} root coordinates), got {}",
            ll.label,
            inv.model_dim(),
            n,
            ll.x.len()
        )));
    };
    let y = inv.to_root_coords(&x_model)?;
    let witness = in_vb_by_search_root(g, &y, ll.b)?;
    if inv.is_full() {
        let by_invariants = inv.in_vb_by_invariants(&x_model, ll.b)?;
        if by_invariants != witness.is_some() {
            return Err(Error::TheoremViolation(format!(
                "invariant vanishing and eigen-search disagree for {} at b = {}",
                ll.label, ll.b
            )));
        }
    }
    let point = EigenVectorPoint::new(ll.label, y);
    let n_value = n_of(sys, &point)?.n_value;
    let bound = ll.b as usize * n;
    let in_vb = witness.is_some();
    if in_vb && n_value < bound {
        return Err(Error::TheoremViolation(format!(
            "x lies in V({}) for {} but N(x) = {n_value} < {bound}",
            ll.b, ll.label
        )));
    }
    Ok(RationalityVerdict {
        in_vb,
        n_value,
        bound,
        equality: in_vb && n_value == bound,
        conclusion: if in_vb {
            Conclusion::PassesNecessaryCondition
        } else {
            Conclusion::FailsNecessaryCondition
        },
        witness_order: witness.map(|id| g.order_of(id)),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wgroup::DEFAULT_CAP;

    fn group(label: &str) -> GroupEnumeration {
        GroupEnumeration::build(TypeLabel::parse(label).unwrap(), DEFAULT_CAP).unwrap()
    }

    #[test]
    fn parses_the_simplest_input() {
        let ll = parse_leading_term(r#"{"type":"A1","a":1,"b":2,"x":["1"]}"#).unwrap();
        assert_eq!(ll.label, TypeLabel::A(1));
        assert_eq!((ll.a, ll.b), (1, 2));
        assert_eq!(ll.x.len(), 1);
        assert!(!ll.higher_ignored);
    }

    #[test]
    fn rejects_non_coprime_exponents() {
        let err = parse_leading_term(r#"{"type":"A1","a":2,"b":4,"x":["1"]}"#).unwrap_err();
        assert!(matches!(err, Error::NotCoprime { a: 2, b: 4 }));
        // Negative a is reduced by absolute value.
        assert!(parse_leading_term(r#"{"type":"A1","a":-3,"b":4,"x":["1"]}"#).is_ok());
        assert!(matches!(
            parse_leading_term(r#"{"type":"A1","a":-2,"b":4,"x":["1"]}"#),
            Err(Error::NotCoprime { .. })
        ));
    }

    #[test]
    fn rejects_a_zero_leading_term() {
        assert!(matches!(
            parse_leading_term(r#"{"type":"A3","a":1,"b":4,"x":["0","0","0","0"]}"#),
            Err(Error::ZeroLeadingTerm)
        ));
        assert!(matches!(
            parse_leading_term(r#"{"type":"A3","a":1,"b":4,"x":[]}"#),
            Err(Error::ZeroLeadingTerm)
        ));
        assert!(matches!(
            parse_leading_term(r#"{"type":"A3","b":4}"#),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn higher_terms_are_noted_and_ignored() {
        let with = parse_leading_term(
            r#"{"type":"A1","a":1,"b":2,"x":["1"],"higher":[{"a":3,"x":["5"]}]}"#,
        )
        .unwrap();
        assert!(with.higher_ignored);
        let g = group("A1");
        let without = parse_leading_term(r#"{"type":"A1","a":1,"b":2,"x":["1"]}"#).unwrap();
        let v1 = check_rationality_necessary(&g, &with).unwrap();
        let v2 = check_rationality_necessary(&g, &without).unwrap();
        assert_eq!(serde_json::to_string(&v1).unwrap(), serde_json::to_string(&v2).unwrap());
    }

    #[test]
    fn a1_at_its_coxeter_number() {
        let g = group("A1");
        let ll = parse_leading_term(r#"{"type":"A1","a":1,"b":2,"x":["1"]}"#).unwrap();
        let v = check_rationality_necessary(&g, &ll).unwrap();
        assert!(v.in_vb);
        assert_eq!(v.n_value, 2);
        assert_eq!(v.bound, 2);
        assert!(v.equality);
        assert_eq!(v.conclusion, Conclusion::PassesNecessaryCondition);
        assert_eq!(v.witness_order, Some(2));
    }

    #[test]
    fn a1_rejects_b_three() {
        let g = group("A1");
        let ll = parse_leading_term(r#"{"type":"A1","a":1,"b":3,"x":["1"]}"#).unwrap();
        let v = check_rationality_necessary(&g, &ll).unwrap();
        assert!(!v.in_vb);
        assert_eq!(v.conclusion, Conclusion::FailsNecessaryCondition);
        assert!(!v.equality);
        assert_eq!(v.witness_order, None);
        // b = 1 is accepted by the identity, strictly below the bound's
        // equality case since h = 2.
        let ll = parse_leading_term(r#"{"type":"A1","a":5,"b":1,"x":["1"]}"#).unwrap();
        let v = check_rationality_necessary(&g, &ll).unwrap();
        assert!(v.in_vb);
        assert_eq!((v.n_value, v.bound), (2, 1));
        assert!(!v.equality);
    }

    #[test]
    fn the_coxeter_leading_term_of_a3() {
        let g = group("A3");
        let ll = parse_leading_term(
            r#"{"type":"A3","a":1,"b":4,"x":["1","z4","-1","-z4"]}"#,
        )
        .unwrap();
        let v = check_rationality_necessary(&g, &ll).unwrap();
        assert!(v.in_vb);
        assert_eq!(v.n_value, 12);
        assert_eq!(v.bound, 12);
        assert!(v.equality);
        assert_eq!(v.witness_order, Some(4));
    }

    #[test]
    fn a_degenerate_witness_passes_without_equality() {
        let g = group("A3");
        let ll = parse_leading_term(r#"{"type":"A3","a":1,"b":2,"x":["1","-1","0","0"]}"#).unwrap();
        let v = check_rationality_necessary(&g, &ll).unwrap();
        assert!(v.in_vb);
        assert_eq!(v.n_value, 10);
        assert_eq!(v.bound, 6);
        assert!(!v.equality, "b = 2 is not the Coxeter number of A3");
    }

    #[test]
    fn root_basis_coordinates_are_accepted_for_exceptional_types() {
        let g = group("H3");
        let c = g.coxeter_element_id();
        let e = crate::eigenstab::eigenspace(&g, c, 10);
        let y = e.basis().row_vec(0);
        let ll = LaurentLeading {
            label: TypeLabel::H3,
            a: 1,
            b: 10,
            x: y,
            higher_ignored: false,
        };
        let v = check_rationality_necessary(&g, &ll).unwrap();
        assert!(v.in_vb);
        assert_eq!(v.n_value, 30);
        assert!(v.equality, "b = h = 10");
        // A rank-length rational vector in root coordinates for b = 2.
        let ll = LaurentLeading {
            label: TypeLabel::H3,
            a: 3,
            b: 2,
            x: vec![
                CycloNum::from_int(5, 1),
                CycloNum::zero(5),
                CycloNum::zero(5),
            ],
            higher_ignored: false,
        };
        let v = check_rationality_necessary(&g, &ll).unwrap();
        assert_eq!(v.bound, 6);
        assert!(v.n_value >= 6 || !v.in_vb);
    }

    #[test]
    fn the_verdict_is_independent_of_a() {
        let g = group("A3");
        let mut out = Vec::new();
        for a in [1i64, 3, -5, 997] {
            let ll = parse_leading_term(&format!(
                r#"{{"type":"A3","a":{a},"b":4,"x":["1","z4","-1","-z4"]}}"#
            ))
            .unwrap();
            let v = check_rationality_necessary(&g, &ll).unwrap();
            out.push(serde_json::to_string(&v).unwrap());
        }
        out.dedup();
        assert_eq!(out.len(), 1);
    }

    #[test]
    fn mismatched_enumeration_is_rejected() {
        let g = group("A2");
        let ll = parse_leading_term(r#"{"type":"A1","a":1,"b":2,"x":["1"]}"#).unwrap();
        assert!(matches!(
            check_rationality_necessary(&g, &ll),
            Err(Error::Precondition(_))
        ));
        // Length 2 reads as root coordinates, length 3 as model coordinates
        // (summing to zero); anything else is rejected.
        let ll = parse_leading_term(r#"{"type":"A2","a":1,"b":2,"x":["1"]}"#).unwrap();
        assert!(matches!(
            check_rationality_necessary(&g, &ll),
            Err(Error::Dimension(_))
        ));
        let ll = parse_leading_term(r#"{"type":"A2","a":1,"b":2,"x":["1","2"]}"#).unwrap();
        assert!(check_rationality_necessary(&g, &ll).is_ok());
    }

    #[test]
    fn verdict_serialization_uses_the_schema_names() {
        let g = group("A1");
        let ll = parse_leading_term(r#"{"type":"A1","a":1,"b":2,"x":["1"]}"#).unwrap();
        let v = check_rationality_necessary(&g, &ll).unwrap();
        let json: serde_json::Value =
            serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        assert_eq!(json["in_Vb"], serde_json::json!(true));
        assert_eq!(json["N"], serde_json::json!(2));
        assert_eq!(json["bound"], serde_json::json!(2));
        assert_eq!(json["equality"], serde_json::json!(true));
        assert_eq!(json["conclusion"], serde_json::json!("PassesNecessaryCondition"));
        assert_eq!(json["witness_order"], serde_json::json!(2));
    }
}
