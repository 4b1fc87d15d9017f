//! Classification reports: everything exact, all numbers emitted as integer
//! or `a/b` strings. The JSON form contains no timing and is byte-identical
//! across runs; wall-clock time is shown only in the text rendering.

use serde::Serialize;

use excq::chars::{invariant_dimension, semiinvariant_dimension};
use excq::classify::{classify, Verdict};
use excq::error::Result;
use excq::matgroup::MatrixGroup;

#[derive(Serialize)]
pub struct GroupStats {
    pub order: u64,
    pub dimension: usize,
    pub root_order: u32,
    pub classes: usize,
    pub exponent: u64,
    pub scalar_count: u64,
    pub projective_order: u64,
}

#[derive(Serialize)]
pub struct DegreeRow {
    pub degree: u64,
    pub invariants: u64,
    pub semiinvariants: u64,
}

#[derive(Serialize)]
pub struct Report {
    pub source: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub group: GroupStats,
    pub verdict: Verdict,
    pub dimension_table: Vec<DegreeRow>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}

pub fn build_report(
    source: &str,
    name: Option<String>,
    g: &MatrixGroup,
    max_degree: u64,
) -> Result<Report> {
    let verdict = classify(g)?;
    let mut dimension_table = Vec::new();
    for d in 1..=max_degree {
        dimension_table.push(DegreeRow {
            degree: d,
            invariants: invariant_dimension(g, d)?,
            semiinvariants: semiinvariant_dimension(g, d)?,
        });
    }
    Ok(Report {
        source: source.to_string(),
        name,
        group: GroupStats {
            order: g.order() as u64,
            dimension: g.dim(),
            root_order: g.root_order(),
            classes: g.class_count(),
            exponent: g.classes().exponent,
            scalar_count: g.scalar_indices().len() as u64,
            projective_order: g.projective_order(),
        },
        verdict,
        dimension_table,
    })
}

pub fn print_text(rep: &Report, elapsed: std::time::Duration) {
    println!("source: {}", rep.source);
    if let Some(n) = &rep.name {
        println!("name: {n}");
    }
    let s = &rep.group;
    println!(
        "group: order {} in GL({}, Q(zeta_{})), {} classes, exponent {}",
        s.order, s.dimension, s.root_order, s.classes, s.exponent
    );
    println!(
        "scalars: {}, projective order {}",
        s.scalar_count, s.projective_order
    );
    let v = &rep.verdict;
    if v.reflections_present {
        println!("contains reflections: quotient reduces to affine space; reclassify the reflection quotient");
    }
    println!("transitive: {}", v.transitive);
    println!("primitivity: {:?}", v.primitivity);
    println!(
        "minimal semi-invariant degree: {}",
        v.min_semiinvariant_degree
    );
    println!("exceptional: {:?}", v.exceptional);
    println!("weakly exceptional: {:?}", v.weakly_exceptional);
    for b in &v.lct_bounds {
        println!("  lct bound [{:?}] {}  ({})", b.kind, b.value, b.citation);
    }
    println!("citations: {}", v.citations.join(", "));
    if !rep.dimension_table.is_empty() {
        println!("degree : invariants / semi-invariants");
        for row in &rep.dimension_table {
            println!(
                "  {:>4} : {} / {}",
                row.degree, row.invariants, row.semiinvariants
            );
        }
    }
    println!("elapsed: {elapsed:?}");
}
