//! The shared group file format: JSON with matrix entries in the textual
//! grammar (signed sums of `c`, `c*z^k`, `z^k`, where `z` denotes the
//! primitive root of unity of order `root_order`).

use serde::{Deserialize, Serialize};

use excq::error::{Error, Result};
use excq::gmatrix::{parse_matrix, GMatrix};
use excq::group::FiniteGroup;
use excq::matgroup::MatrixGroup;

#[derive(Serialize, Deserialize)]
pub struct GroupFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub root_order: u32,
    pub dimension: usize,
    /// generators as rows of entry strings
    pub generators: Vec<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_order: Option<u64>,
    /// declare that all generators must have determinant 1
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub special_linear: bool,
}

impl GroupFile {
    pub fn from_json(text: &str) -> Result<GroupFile> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            msg: format!("group file: {e}"),
            pos: None,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("group file serialization")
    }

    pub fn parse_generators(&self) -> Result<Vec<GMatrix>> {
        if self.dimension == 0 {
            return Err(Error::Parse {
                msg: "dimension must be positive".into(),
                pos: None,
            });
        }
        if self.root_order == 0 {
            return Err(Error::Parse {
                msg: "root_order must be positive".into(),
                pos: None,
            });
        }
        if self.generators.is_empty() {
            return Err(Error::Parse {
                msg: "no generators".into(),
                pos: None,
            });
        }
        let mut out = Vec::with_capacity(self.generators.len());
        for (k, rows) in self.generators.iter().enumerate() {
            if rows.len() != self.dimension {
                return Err(Error::Parse {
                    msg: format!(
                        "generator {k} has {} rows, expected {}",
                        rows.len(),
                        self.dimension
                    ),
                    pos: None,
                });
            }
            let m = parse_matrix(rows, self.root_order)?;
            if m.det().is_zero() {
                return Err(Error::SingularMatrix);
            }
            if self.special_linear && m.det() != excq::cyc::Cyc::one() {
                return Err(Error::Validation(format!(
                    "generator {k} declared special linear but det = {}",
                    m.det()
                )));
            }
            out.push(m);
        }
        Ok(out)
    }

    /// Closes the group and verifies the declared metadata.
    pub fn close(&self, limit: usize) -> Result<MatrixGroup> {
        let gens = self.parse_generators()?;
        let g = FiniteGroup::close(&gens, limit)?;
        if let Some(n) = self.expected_order {
            if g.order() as u64 != n {
                return Err(Error::Validation(format!(
                    "declared order {n}, closure found {}",
                    g.order()
                )));
            }
        }
        Ok(g)
    }

    /// Serializes a closed group back into the file format (generators only).
    pub fn from_group(name: Option<String>, g: &MatrixGroup) -> GroupFile {
        let dimension = g.dim();
        let generators = g
            .generators()
            .iter()
            .map(|m| {
                (0..dimension)
                    .map(|i| (0..dimension).map(|j| m.at(i, j).to_string()).collect())
                    .collect()
            })
            .collect();
        GroupFile {
            name,
            root_order: g.root_order(),
            dimension,
            generators,
            expected_order: Some(g.order() as u64),
            special_linear: false,
        }
    }
}
