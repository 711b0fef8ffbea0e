use serde::{Deserialize, Serialize};

use argue::prover::{Argument, ProofTerm};

/// One argument as printed by the CLI.
#[derive(Debug, PartialEq, Serialize, Deserialize)]
pub struct ArgumentView {
    pub formula: String,
    pub grounds: Vec<String>,
    pub sign: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub proof: Option<ProofTerm>,
}

impl ArgumentView {
    pub fn new(arg: &Argument, with_proof: bool) -> Self {
        ArgumentView {
            formula: arg.formula().readable().to_string(),
            grounds: arg.claim().rendered_grounds(),
            sign: arg.sign().to_string(),
            proof: with_proof.then(|| arg.proof().clone()),
        }
    }
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
pub struct QueryResult {
    pub goal: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub arguments: Vec<ArgumentView>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub confidence: Option<String>,
}
