//! Report serialization for verification runs: JSON, CSV, and Markdown views
//! of the same rows. Reruns with the same configuration serialize
//! byte-identically except for the wall-time fields.

use serde::Serialize;

use crate::verify::TypeRun;

#[derive(Clone, Debug, Serialize)]
pub struct GroupMeta {
    #[serde(rename = "type")]
    pub label: String,
    pub rank: usize,
    pub order: u64,
    pub coxeter_number: u32,
    pub degrees: Vec<u32>,
    pub num_roots: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessOut {
    /// Basis rows of the minimizing flat, as scalar literals in root-basis
    /// coordinates.
    pub flat_basis: Vec<Vec<String>>,
    pub orthogonal_root_indices: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResultRow {
    pub b: u32,
    pub vb_nonempty: bool,
    #[serde(rename = "min_N")]
    pub min_n: Option<usize>,
    pub bound: usize,
    pub equality: bool,
    pub witness: Option<WitnessOut>,
    pub elements_scanned: usize,
    pub wall_time_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportDoc {
    pub group: GroupMeta,
    pub results: Vec<ResultRow>,
}

pub fn report_doc(run: &TypeRun) -> ReportDoc {
    let facts = &run.facts;
    let group = GroupMeta {
        label: facts.label.to_string(),
        rank: facts.rank,
        order: facts.order,
        coxeter_number: facts.coxeter_number,
        degrees: facts.degrees.clone(),
        num_roots: facts.num_roots,
    };
    let results = run
        .results
        .iter()
        .map(|r| {
            let witness = r.record.witness_flat.as_ref().map(|flat| WitnessOut {
                flat_basis: flat
                    .basis_rows()
                    .iter()
                    .map(|row| row.iter().map(|c| c.to_string()).collect())
                    .collect(),
                orthogonal_root_indices: r
                    .record
                    .witness_phi
                    .map(|s| s.iter().collect())
                    .unwrap_or_default(),
            });
            ResultRow {
                b: r.record.b,
                vb_nonempty: r.record.v_b_nonempty,
                min_n: r.record.min_n,
                bound: r.record.bound,
                equality: r.record.equality,
                witness,
                elements_scanned: r.record.elements_scanned,
                wall_time_ms: r.wall_time_ms,
            }
        })
        .collect();
    ReportDoc { group, results }
}

pub fn to_json(docs: &[ReportDoc]) -> String {
    let mut s = serde_json::to_string_pretty(docs).expect("report serializes");
    s.push('\n');
    s
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn to_csv(docs: &[ReportDoc]) -> String {
    let mut out = String::from(
        "type,rank,order,coxeter_number,b,vb_nonempty,min_N,bound,equality,\
         elements_scanned,wall_time_ms,witness_flat_basis,witness_orthogonal_roots\n",
    );
    for doc in docs {
        for r in &doc.results {
            let (basis, orth) = match &r.witness {
                Some(w) => (
                    w.flat_basis
                        .iter()
                        .map(|row| row.join(", "))
                        .collect::<Vec<_>>()
                        .join("; "),
                    w.orthogonal_root_indices
                        .iter()
                        .map(|i| i.to_string())
                        .collect::<Vec<_>>()
                        .join(" "),
                ),
                None => (String::new(), String::new()),
            };
            let min_n = r.min_n.map(|m| m.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                csv_field(&doc.group.label),
                doc.group.rank,
                doc.group.order,
                doc.group.coxeter_number,
                r.b,
                r.vb_nonempty,
                min_n,
                r.bound,
                r.equality,
                r.elements_scanned,
                r.wall_time_ms,
                csv_field(&basis),
                csv_field(&orth),
            ));
        }
    }
    out
}

pub fn to_markdown(docs: &[ReportDoc]) -> String {
    let mut out = String::new();
    for doc in docs {
        let g = &doc.group;
        out.push_str(&format!(
            "## {} (rank {}, |W| = {}, h = {}, degrees {:?}, {} roots)\n\n",
            g.label, g.rank, g.order, g.coxeter_number, g.degrees, g.num_roots
        ));
        out.push_str(
            "| b | V(b) nonzero | min N | bound b·n | equality | scanned | ms | orthogonal roots of witness |\n",
        );
        out.push_str("|---|---|---|---|---|---|---|---|\n");
        for r in &doc.results {
            let min_n = r.min_n.map(|m| m.to_string()).unwrap_or_else(|| "-".into());
            let orth = match &r.witness {
                Some(w) => format!("{:?}", w.orthogonal_root_indices),
                None => "-".into(),
            };
            out.push_str(&format!(
                "| {} | {} | {} | {} | {} | {} | {} | {} |\n",
                r.b, r.vb_nonempty, min_n, r.bound, r.equality, r.elements_scanned,
                r.wall_time_ms, orth
            ));
        }
        out.push('\n');
    }
    out
}
