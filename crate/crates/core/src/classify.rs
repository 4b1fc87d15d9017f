//! The decision engine: dimension-specific exceptionality and weak
//! exceptionality verdicts with machine-readable rule citations and exact
//! rational threshold bounds.
//!
//! Every yes/no answer cites the rule that produced it, so tests can assert
//! both the verdict and its legal basis. The engine never answers
//! "exceptional: yes" outside dimensions 2 through 5 (the degree heuristic is
//! known to fail from dimension 6 on), and it refuses to upgrade an
//! unverified primitivity search to a certificate.

use serde::Serialize;

use crate::catalog;
use crate::chars::{invariant_dimension, min_semiinvariant_degree, MinDegree};
use crate::error::{Error, Result};
use crate::matgroup::MatrixGroup;
use crate::rat::Rat;
use crate::structure::{find_block_system, invariant_twisted_cubic_exists, is_transitive};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Trilean {
    Yes,
    No,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Primitivity {
    /// a verified system of imprimitivity exists
    Imprimitive { blocks: usize, block_dim: usize },
    /// no system found, and the projective image matches a catalog group
    /// declared primitive
    CertifiedPrimitive { catalog: String },
    /// no system found; not a certificate
    UnverifiedPrimitive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    Upper,
    UpperStrict,
    Lower,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LctBound {
    pub kind: BoundKind,
    pub value: Rat,
    pub citation: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub dim: usize,
    pub reflections_present: bool,
    pub transitive: bool,
    pub primitivity: Primitivity,
    pub min_semiinvariant_degree: String,
    #[serde(skip)]
    pub min_degree: MinDegree,
    pub exceptional: Trilean,
    pub weakly_exceptional: Trilean,
    pub lct_bounds: Vec<LctBound>,
    pub citations: Vec<&'static str>,
    pub catalog_match: Option<String>,
}

impl Verdict {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("verdict serialization")
    }
}

fn cite(citations: &mut Vec<&'static str>, c: &'static str) {
    if !citations.contains(&c) {
        citations.push(c);
    }
}

/// Imprimitivity is decided by the verified block-system search; a primitive
/// answer is certified only through catalog identification of the projective
/// image, never by search exhaustion alone.
pub fn primitivity_verdict(g: &MatrixGroup) -> Result<Primitivity> {
    if let Some(sys) = find_block_system(g)? {
        return Ok(Primitivity::Imprimitive {
            blocks: sys.block_count(),
            block_dim: sys.block_dim,
        });
    }
    match catalog::projective_identify(g) {
        Some(name) if catalog::declared_primitive(name).unwrap_or(false) => {
            Ok(Primitivity::CertifiedPrimitive {
                catalog: name.to_string(),
            })
        }
        _ => Ok(Primitivity::UnverifiedPrimitive),
    }
}

/// Classifies the quotient singularity of a finite matrix group. The group
/// must not contain reflections; when it does, the verdict carries the
/// reduce-by-reflections notice and leaves both questions undecided.
pub fn classify(g: &MatrixGroup) -> Result<Verdict> {
    let dim = g.dim();
    if dim < 2 {
        return Err(Error::Unsupported(
            "classification needs dimension >= 2".into(),
        ));
    }
    let mut citations: Vec<&'static str> = Vec::new();
    let mut bounds: Vec<LctBound> = Vec::new();

    if g.has_reflections() {
        cite(&mut citations, "reflections");
        return Ok(Verdict {
            dim,
            reflections_present: true,
            transitive: false,
            primitivity: Primitivity::UnverifiedPrimitive,
            min_semiinvariant_degree: "not computed".into(),
            min_degree: MinDegree::GreaterThan(0),
            exceptional: Trilean::Undecided,
            weakly_exceptional: Trilean::Undecided,
            lct_bounds: bounds,
            citations,
            catalog_match: None,
        });
    }

    let transitive = is_transitive(g)?;
    let blocks = find_block_system(g)?;
    let catalog_match = catalog::projective_identify(g);
    let primitivity = match &blocks {
        Some(sys) => Primitivity::Imprimitive {
            blocks: sys.block_count(),
            block_dim: sys.block_dim,
        },
        None => match catalog_match
            .and_then(catalog::declared_primitive)
            .unwrap_or(false)
        {
            true => Primitivity::CertifiedPrimitive {
                catalog: catalog_match.unwrap().to_string(),
            },
            false => Primitivity::UnverifiedPrimitive,
        },
    };
    let certified_primitive = matches!(primitivity, Primitivity::CertifiedPrimitive { .. });
    let imprimitive = matches!(primitivity, Primitivity::Imprimitive { .. });

    let max_d = dim as u64;
    let min_degree = min_semiinvariant_degree(g, max_d)?;
    let min_found = match min_degree {
        MinDegree::Found(d) => Some(d),
        MinDegree::GreaterThan(_) => None,
    };

    // generic upper bounds: semi-invariant of degree d gives lct <= d/(n+1)
    if let Some(d) = min_found {
        cite(&mut citations, "lct-semiinvariant-bound");
        bounds.push(LctBound {
            kind: BoundKind::Upper,
            value: Rat::new(d as i64, dim as i64),
            citation: "lct-semiinvariant-bound",
        });
    }
    if invariant_dimension(g, 2)? > 0 {
        bounds.push(LctBound {
            kind: BoundKind::Upper,
            value: Rat::new(2, dim as i64),
            citation: "real-representation",
        });
    }
    if !transitive {
        bounds.push(LctBound {
            kind: BoundKind::UpperStrict,
            value: Rat::int(1),
            citation: "weakly-exceptional-quotient-reducible",
        });
    }
    if let Some(name) = catalog_match {
        if catalog::build(name)
            .map(|b| b.declared.segre_product)
            .unwrap_or(false)
        {
            bounds.push(LctBound {
                kind: BoundKind::UpperStrict,
                value: Rat::int(1),
                citation: "Segre",
            });
        }
    }

    let proj_order = g.projective_order();

    let mut exceptional;
    let mut weakly;
    match dim {
        2 => {
            // exceptional iff no semi-invariants of degree at most 2
            if min_found.map(|d| d <= 2).unwrap_or(false) {
                exceptional = Trilean::No;
            } else {
                exceptional = Trilean::Yes;
            }
            cite(&mut citations, "Shokurov-n-2");
            cite(&mut citations, "criterion");
            weakly = match (exceptional, min_found) {
                (Trilean::Yes, _) => Trilean::Yes,
                (_, Some(1)) => Trilean::No,
                _ => Trilean::Undecided,
            };
            if weakly == Trilean::No || weakly == Trilean::Undecided {
                cite(&mut citations, "weakly-exceptional-quotient");
            }
            if exceptional == Trilean::Yes {
                bounds.push(LctBound {
                    kind: BoundKind::Lower,
                    value: Rat::new(3, 2),
                    citation: "Shokurov-n-2",
                });
            }
        }
        3 => {
            exceptional = if min_found.map(|d| d <= 3).unwrap_or(false) {
                Trilean::No
            } else {
                Trilean::Yes
            };
            cite(&mut citations, "Dima-Yura");
            weakly = if min_found.map(|d| d <= 2).unwrap_or(false) {
                Trilean::No
            } else {
                Trilean::Yes
            };
            cite(&mut citations, "Yura-Dima-weakly-exceptional");
            if weakly == Trilean::Yes {
                bounds.push(LctBound {
                    kind: BoundKind::Lower,
                    value: Rat::int(1),
                    citation: "Yura-Dima-weakly-exceptional",
                });
            }
            if exceptional == Trilean::Yes {
                bounds.push(LctBound {
                    kind: BoundKind::Lower,
                    value: Rat::new(4, 3),
                    citation: "Dima-Yura-strong",
                });
            }
        }
        4 => {
            // exceptional iff primitive and no semi-invariants of degree <= 4
            if imprimitive {
                exceptional = Trilean::No;
                cite(&mut citations, "primitive");
            } else if min_found.map(|d| d <= 4).unwrap_or(false) {
                exceptional = Trilean::No;
                cite(&mut citations, "criterion");
                cite(&mut citations, "Vanya-Kostya-invariants");
            } else if certified_primitive {
                exceptional = Trilean::Yes;
                cite(&mut citations, "Vanya-Kostya-invariants");
                cite(&mut citations, "Vanya-Kostya-n-4");
            } else {
                exceptional = Trilean::Undecided;
                cite(&mut citations, "primitive");
            }
            // weakly-exceptional iff transitive, no semi-invariants of degree
            // <= 3, and no invariant twisted cubic
            cite(&mut citations, "Vanya-Kostya-SL-4-weakly-exceptional");
            if !transitive {
                weakly = Trilean::No;
                cite(&mut citations, "weakly-exceptional-quotient-reducible");
            } else if min_found.map(|d| d <= 3).unwrap_or(false) {
                weakly = Trilean::No;
            } else if invariant_twisted_cubic_exists(g)? {
                weakly = Trilean::No;
            } else {
                weakly = Trilean::Yes;
                bounds.push(LctBound {
                    kind: BoundKind::Lower,
                    value: Rat::int(1),
                    citation: "Vanya-Kostya-SL-4-weakly-exceptional",
                });
            }
            if certified_primitive && min_found.is_none() && proj_order >= 169 {
                bounds.push(LctBound {
                    kind: BoundKind::Lower,
                    value: Rat::new(5, 4),
                    citation: "Vanya-Kostya",
                });
            }
            if transitive && !min_found.map(|d| d <= 3).unwrap_or(false) && proj_order >= 61 {
                bounds.push(LctBound {
                    kind: BoundKind::Lower,
                    value: Rat::int(1),
                    citation: "Vanya-Kostya-SL-4-weakly-exceptional",
                });
            }
        }
        5 => {
            if imprimitive {
                exceptional = Trilean::No;
                cite(&mut citations, "primitive");
            } else if min_found.map(|d| d <= 5).unwrap_or(false) {
                exceptional = Trilean::No;
                cite(&mut citations, "criterion");
                cite(&mut citations, "Vanya-Kostya-invariants");
            } else if certified_primitive {
                exceptional = Trilean::Yes;
                cite(&mut citations, "Vanya-Kostya-invariants");
                cite(&mut citations, "Vanya-Kostya-n-5");
            } else {
                exceptional = Trilean::Undecided;
                cite(&mut citations, "primitive");
            }
            weakly = if exceptional == Trilean::Yes {
                Trilean::Yes
            } else if !transitive {
                cite(&mut citations, "weakly-exceptional-quotient-reducible");
                Trilean::No
            } else if min_found.map(|d| d <= 4).unwrap_or(false) {
                cite(&mut citations, "weakly-exceptional-quotient");
                Trilean::No
            } else {
                Trilean::Undecided
            };
            if matches!(catalog_match, Some("HM") | Some("HM-index5")) {
                bounds.push(LctBound {
                    kind: BoundKind::Lower,
                    value: Rat::new(6, 5),
                    citation: "HM",
                });
            }
            if exceptional == Trilean::Yes {
                bounds.push(LctBound {
                    kind: BoundKind::Lower,
                    value: Rat::new(6, 5),
                    citation: "Vanya-Kostya-n-5",
                });
            }
        }
        _ => {
            // necessary conditions only: never "exceptional: yes" here
            cite(&mut citations, "Severi");
            exceptional = if imprimitive {
                cite(&mut citations, "primitive");
                Trilean::No
            } else if min_found.map(|d| d <= dim as u64).unwrap_or(false) {
                cite(&mut citations, "criterion");
                Trilean::No
            } else {
                Trilean::Undecided
            };
            weakly = if !transitive {
                cite(&mut citations, "weakly-exceptional-quotient-reducible");
                Trilean::No
            } else if min_found.map(|d| d < dim as u64).unwrap_or(false) {
                cite(&mut citations, "weakly-exceptional-quotient");
                Trilean::No
            } else {
                Trilean::Undecided
            };
        }
    }

    // exceptional implies weakly-exceptional
    if exceptional == Trilean::Yes {
        if weakly == Trilean::No {
            return Err(Error::Internal(
                "exceptional verdict with non-weakly-exceptional verdict".into(),
            ));
        }
        weakly = Trilean::Yes;
        cite(&mut citations, "exceptional-weakly-exceptional");
    }
    // a strict upper bound below 1 refutes both
    if bounds
        .iter()
        .any(|b| b.kind == BoundKind::UpperStrict && b.value <= Rat::int(1))
    {
        if exceptional == Trilean::Yes || weakly == Trilean::Yes {
            return Err(Error::Internal(
                "strict sub-1 bound contradicts a positive verdict".into(),
            ));
        }
        exceptional = Trilean::No;
        if weakly == Trilean::Undecided {
            weakly = Trilean::No;
        }
    }
    // every lower certificate must sit at or below every upper bound
    for lo in bounds.iter().filter(|b| b.kind == BoundKind::Lower) {
        for hi in bounds.iter().filter(|b| b.kind != BoundKind::Lower) {
            if lo.value > hi.value {
                return Err(Error::Internal(format!(
                    "lower bound {} ({}) exceeds upper bound {} ({})",
                    lo.value, lo.citation, hi.value, hi.citation
                )));
            }
        }
    }

    Ok(Verdict {
        dim,
        reflections_present: false,
        transitive,
        primitivity,
        min_semiinvariant_degree: min_degree.to_string(),
        min_degree,
        exceptional,
        weakly_exceptional: weakly,
        lct_bounds: bounds,
        citations,
        catalog_match: catalog_match.map(|s| s.to_string()),
    })
}

/// All upper bounds on lct(P^n, Gbar) the classifier can certify, with
/// citations. Strict bounds are reported with kind `UpperStrict`.
pub fn lct_upper_bounds(g: &MatrixGroup) -> Result<Vec<LctBound>> {
    Ok(classify(g)?
        .lct_bounds
        .into_iter()
        .filter(|b| b.kind != BoundKind::Lower)
        .collect())
}

/// All lower certificates on lct(P^n, Gbar) whose hypotheses are
/// machine-checkable for this group.
pub fn lct_lower_certificates(g: &MatrixGroup) -> Result<Vec<LctBound>> {
    Ok(classify(g)?
        .lct_bounds
        .into_iter()
        .filter(|b| b.kind == BoundKind::Lower)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::build;

    #[test]
    fn dim2_verdicts() {
        for name in ["2A4", "2S4", "2A5"] {
            let g = build(name).unwrap().group().unwrap();
            let v = classify(&g).unwrap();
            assert_eq!(v.exceptional, Trilean::Yes, "{name}");
            assert_eq!(v.weakly_exceptional, Trilean::Yes, "{name}");
            assert!(v.citations.contains(&"Shokurov-n-2"), "{name}");
            assert!(v
                .lct_bounds
                .iter()
                .any(|b| b.kind == BoundKind::Lower && b.value == Rat::new(3, 2)));
        }
    }

    #[test]
    fn heisenberg5_not_exceptional() {
        let g = build("heisenberg5").unwrap().group().unwrap();
        let v = classify(&g).unwrap();
        assert!(matches!(
            v.primitivity,
            Primitivity::Imprimitive {
                blocks: 5,
                block_dim: 1
            }
        ));
        assert_eq!(v.exceptional, Trilean::No);
        assert!(v.citations.contains(&"primitive"));
        // monomial with minimal semi-invariant degree 5 in dim 5:
        // the degree bound gives exactly 1
        assert!(v
            .lct_bounds
            .iter()
            .any(|b| b.kind == BoundKind::Upper && b.value == Rat::int(1)));
    }

    #[test]
    fn reflection_group_notice() {
        let r = crate::gmatrix::root_diag(3, &[1, 0, 0, 0]);
        let g = crate::group::FiniteGroup::close(&[r], 100).unwrap();
        let v = classify(&g).unwrap();
        assert!(v.reflections_present);
        assert_eq!(v.exceptional, Trilean::Undecided);
        assert!(v.citations.contains(&"reflections"));
    }

    #[test]
    fn verdict_serializes() {
        let g = build("2A4").unwrap().group().unwrap();
        let v = classify(&g).unwrap();
        let json = v.to_json();
        assert!(json.contains("\"exceptional\": \"yes\""));
        assert!(json.contains("Shokurov-n-2"));
    }
}
