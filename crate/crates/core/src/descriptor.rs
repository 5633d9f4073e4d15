//! JSON wire forms for codes and rule outcomes. Field elements travel as
//! integer reps; serializing a parsed descriptor reproduces the input bytes
//! when the input was produced here.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Elem, Field, FieldDescriptor};
use crate::grs::{Code, GrsCode, LinearCode};
use crate::linalg::Matrix;
use crate::rules::{ReduceOutcome, RuleOutcome, RuleTag};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GrsDescriptor {
    pub field: FieldDescriptor,
    pub n: usize,
    pub k: usize,
    pub k1: i64,
    pub extended: bool,
    pub a: Vec<u32>,
    pub v: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinearDescriptor {
    pub field: FieldDescriptor,
    pub n: usize,
    pub k: usize,
    pub generator: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CodeDescriptor {
    Grs(GrsDescriptor),
    Linear(LinearDescriptor),
}

fn reps(v: &[Elem]) -> Vec<u32> {
    v.iter().map(|x| x.rep()).collect()
}

fn elems(f: &Field, v: &[u32]) -> Result<Vec<Elem>> {
    v.iter().map(|&r| f.elem(r)).collect()
}

impl CodeDescriptor {
    pub fn of(code: &Code) -> CodeDescriptor {
        let field = code.field().descriptor();
        match code {
            Code::Grs(c) => CodeDescriptor::Grs(GrsDescriptor {
                field,
                n: c.length(),
                k: c.dimension(),
                k1: c.k1(),
                extended: c.is_extended(),
                a: reps(c.points()),
                v: reps(c.multipliers()),
            }),
            Code::Linear(c) => {
                let g = c.generator();
                CodeDescriptor::Linear(LinearDescriptor {
                    field,
                    n: g.cols(),
                    k: g.rows(),
                    generator: g.to_rows().iter().map(|r| reps(r)).collect(),
                })
            }
        }
    }

    /// Rebuilds the code, checking the stated n and k against the data.
    pub fn to_code(&self) -> Result<Code> {
        match self {
            CodeDescriptor::Grs(d) => {
                let f = Arc::new(Field::from_descriptor(&d.field)?);
                let c = GrsCode::new(&f, elems(&f, &d.a)?, elems(&f, &d.v)?, d.k, d.k1, d.extended)?;
                if c.length() != d.n {
                    return Err(Error::Descriptor(format!("stated n={} but data gives {}", d.n, c.length())));
                }
                Ok(c.into())
            }
            CodeDescriptor::Linear(d) => {
                let f = Arc::new(Field::from_descriptor(&d.field)?);
                let rows = d.generator.iter().map(|r| elems(&f, r)).collect::<Result<Vec<_>>>()?;
                if rows.len() != d.k || rows.iter().any(|r| r.len() != d.n) {
                    return Err(Error::Descriptor(format!("generator is not {}x{}", d.k, d.n)));
                }
                let g = if rows.is_empty() { Matrix::zeros(&f, 0, d.n) } else { Matrix::from_rows(&f, rows)? };
                Ok(LinearCode::new(g)?.into())
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptors serialize")
    }

    pub fn from_json(s: &str) -> Result<CodeDescriptor> {
        serde_json::from_str(s).map_err(|e| Error::Descriptor(e.to_string()))
    }
}

/// A rule result: the produced code with its predicted and computed hull.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutcomeDescriptor {
    pub code: CodeDescriptor,
    pub rule_tag: RuleTag,
    pub predicted_hull_lb: usize,
    pub exact: bool,
    pub hull_dim: usize,
    pub gram_rank: usize,
}

impl OutcomeDescriptor {
    pub fn of(o: &RuleOutcome) -> OutcomeDescriptor {
        OutcomeDescriptor {
            code: CodeDescriptor::of(&o.code),
            rule_tag: o.rule_tag.clone(),
            predicted_hull_lb: o.predicted_hull_lb,
            exact: o.exact,
            hull_dim: o.computed.hull_dim,
            gram_rank: o.computed.gram_rank,
        }
    }

    pub fn of_reduce(o: &ReduceOutcome, target: usize) -> OutcomeDescriptor {
        Self::of(&o.clone().into_rule_outcome(target))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptors serialize")
    }

    pub fn from_json(s: &str) -> Result<OutcomeDescriptor> {
        serde_json::from_str(s).map_err(|e| Error::Descriptor(e.to_string()))
    }
}

/// Reads either a code descriptor or an outcome descriptor (taking its code).
pub fn load_code(s: &str) -> Result<Code> {
    if let Ok(o) = serde_json::from_str::<OutcomeDescriptor>(s) {
        return o.code.to_code();
    }
    CodeDescriptor::from_json(s)?.to_code()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::build_full_field;

    #[test]
    fn grs_round_trip_is_byte_exact() {
        let fc = build_full_field(3).unwrap();
        let d = CodeDescriptor::of(&Code::Grs(fc.code.clone()));
        let s = d.to_json();
        let back = CodeDescriptor::from_json(&s).unwrap();
        assert_eq!(back.to_json(), s);
        assert_eq!(back.to_code().unwrap().as_grs(), Some(&fc.code));
    }

    #[test]
    fn linear_round_trip_is_byte_exact() {
        let fc = build_full_field(3).unwrap();
        let dual = Code::Linear(Code::Grs(fc.with_dimension(2).unwrap()).hermitian_dual().unwrap());
        let s = CodeDescriptor::of(&dual).to_json();
        let code = CodeDescriptor::from_json(&s).unwrap().to_code().unwrap();
        assert_eq!(CodeDescriptor::of(&code).to_json(), s);
    }

    #[test]
    fn rejects_inconsistent_length() {
        let fc = build_full_field(3).unwrap();
        let CodeDescriptor::Grs(mut d) = CodeDescriptor::of(&Code::Grs(fc.code)) else { unreachable!() };
        d.n += 1;
        assert!(matches!(CodeDescriptor::Grs(d).to_code(), Err(Error::Descriptor(_))));
    }
}
