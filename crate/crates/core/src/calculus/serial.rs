//! JSON form of proofs.
//!
//! ```json
//! {"conclusion": ["B", "1"], "rule": {"tag": "bot"}, "perm": [1, 0],
//!  "premises": [{"conclusion": ["1"], "rule": {"tag": "one"}}]}
//! ```
//!
//! Promotion nodes replace the premise list by a schema object:
//! `{"schema": "tensor_split", "base_one": …, "base_body": …}`,
//! `{"schema": "explicit", "premises": […]}` or `{"schema": "axiom", "body": "…"}`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::proof::{PremiseFamily, Premises, Proof, Rule};
use super::{CalculusError, Sequent};
use crate::formula::Formula;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProofRepr {
    pub conclusion: Vec<Formula>,
    pub rule: Rule,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub perm: Vec<usize>,
    #[serde(default, skip_serializing_if = "PremisesRepr::is_empty")]
    pub premises: PremisesRepr,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PremisesRepr {
    List(Vec<ProofRepr>),
    Schema(SchemaRepr),
}

impl Default for PremisesRepr {
    fn default() -> Self {
        PremisesRepr::List(Vec::new())
    }
}

impl PremisesRepr {
    fn is_empty(&self) -> bool {
        matches!(self, PremisesRepr::List(v) if v.is_empty())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "schema", rename_all = "snake_case")]
pub enum SchemaRepr {
    TensorSplit {
        base_one: Box<ProofRepr>,
        base_body: Box<ProofRepr>,
    },
    Explicit {
        premises: Vec<ProofRepr>,
    },
    Axiom {
        body: Formula,
    },
}

impl From<&Proof> for ProofRepr {
    fn from(p: &Proof) -> Self {
        let premises = match p.premises() {
            Premises::Finite(v) => PremisesRepr::List(v.iter().map(|c| ProofRepr::from(&**c)).collect()),
            Premises::Family(PremiseFamily::TensorSplit { base_one, base_body }) => {
                PremisesRepr::Schema(SchemaRepr::TensorSplit {
                    base_one: Box::new(ProofRepr::from(&**base_one)),
                    base_body: Box::new(ProofRepr::from(&**base_body)),
                })
            }
            Premises::Family(PremiseFamily::Explicit(v)) => PremisesRepr::Schema(SchemaRepr::Explicit {
                premises: v.iter().map(|c| ProofRepr::from(&**c)).collect(),
            }),
            Premises::Family(PremiseFamily::Axiom { body }) => {
                PremisesRepr::Schema(SchemaRepr::Axiom { body: body.clone() })
            }
        };
        ProofRepr {
            conclusion: p.conclusion().0.clone(),
            rule: p.rule().clone(),
            perm: p.perm().to_vec(),
            premises,
        }
    }
}

impl ProofRepr {
    pub fn into_proof(self) -> Result<Proof, CalculusError> {
        let convert = |v: Vec<ProofRepr>| -> Result<Vec<Arc<Proof>>, CalculusError> {
            v.into_iter().map(|r| r.into_proof().map(Arc::new)).collect()
        };
        let premises = match self.premises {
            PremisesRepr::List(v) => {
                if self.rule == Rule::Promotion {
                    return Err(CalculusError::Serial("promotion needs a premise schema".into()));
                }
                Premises::Finite(convert(v)?)
            }
            PremisesRepr::Schema(s) => {
                if self.rule != Rule::Promotion {
                    return Err(CalculusError::Serial(format!(
                        "only promotion takes a premise schema, not {}",
                        self.rule.name()
                    )));
                }
                Premises::Family(match s {
                    SchemaRepr::TensorSplit { base_one, base_body } => PremiseFamily::TensorSplit {
                        base_one: Arc::new(base_one.into_proof()?),
                        base_body: Arc::new(base_body.into_proof()?),
                    },
                    SchemaRepr::Explicit { premises } => PremiseFamily::Explicit(convert(premises)?),
                    SchemaRepr::Axiom { body } => PremiseFamily::Axiom { body },
                })
            }
        };
        Ok(Proof::from_parts(Sequent(self.conclusion), self.rule, self.perm, premises))
    }
}

pub fn proof_to_json(p: &Proof) -> String {
    serde_json::to_string_pretty(&ProofRepr::from(p)).expect("proofs always serialize")
}

pub fn proof_from_json(text: &str) -> Result<Proof, CalculusError> {
    let repr: ProofRepr = serde_json::from_str(text).map_err(|e| CalculusError::Serial(e.to_string()))?;
    repr.into_proof()
}
