use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::dictionary::Sign;
use crate::kernel::{Formula, GroundLabel};
use crate::prover::ProofTerm;

/// The `(formula, grounds, sign)` triple of an argument.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Claim {
    #[serde(serialize_with = "readable")]
    pub formula: Formula,
    pub grounds: BTreeSet<GroundLabel>,
    pub sign: Sign,
}

fn readable<S: Serializer>(f: &Formula, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(&f.readable())
}

impl Claim {
    pub fn new(formula: Formula, grounds: BTreeSet<GroundLabel>, sign: Sign) -> Claim {
        Claim {
            formula,
            grounds,
            sign,
        }
    }

    /// Grounds rendered and sorted as strings.
    pub fn rendered_grounds(&self) -> Vec<String> {
        let mut v: Vec<String> = self.grounds.iter().map(ToString::to_string).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Ordering used for every listing: rendered grounds, then sign, then
    /// formula.
    pub fn listing_key(&self) -> (Vec<String>, Sign, String) {
        (self.rendered_grounds(), self.sign, self.formula.to_string())
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {{{}}}, {})",
            self.formula.readable(),
            self.rendered_grounds().join(", "),
            self.sign
        )
    }
}

/// A checked argument: its triple, the proof it came from, and the
/// conclusion and sign at every node of that proof.
#[derive(Clone, Debug, PartialEq)]
pub struct Argument {
    claim: Claim,
    proof: ProofTerm,
    nodes: Vec<(Formula, Sign)>,
    assumed: Vec<bool>,
}

impl Argument {
    pub(crate) fn from_parts(
        claim: Claim,
        proof: ProofTerm,
        nodes: Vec<(Formula, Sign)>,
        assumed: Vec<bool>,
    ) -> Self {
        Argument {
            claim,
            proof,
            nodes,
            assumed,
        }
    }

    pub fn claim(&self) -> &Claim {
        &self.claim
    }

    pub fn formula(&self) -> &Formula {
        &self.claim.formula
    }

    pub fn grounds(&self) -> &BTreeSet<GroundLabel> {
        &self.claim.grounds
    }

    pub fn sign(&self) -> Sign {
        self.claim.sign
    }

    pub fn proof(&self) -> &ProofTerm {
        &self.proof
    }

    /// Kernel-normal conclusion and sign of every proof node, leaves
    /// included.
    pub fn nodes(&self) -> &[(Formula, Sign)] {
        &self.nodes
    }

    /// Nodes other than hypothesis leaves: the conclusions the argument
    /// actually establishes on the way to its root.
    pub fn established_nodes(&self) -> impl Iterator<Item = &(Formula, Sign)> {
        self.nodes
            .iter()
            .zip(&self.assumed)
            .filter(|(_, assumed)| !**assumed)
            .map(|(n, _)| n)
    }

    pub fn into_claim(self) -> Claim {
        self.claim
    }
}

impl fmt::Display for Argument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.claim.fmt(f)
    }
}

/// Whether the argument's proof passes through `q`: true iff `q` is the
/// conclusion of some node, the root and the leaves included.
pub fn depends_on(arg: &Argument, q: &Formula) -> bool {
    let q = q.normalize();
    arg.nodes.iter().any(|(f, _)| *f == q)
}

/// Bounds on argument construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Maximum proof height, counted in nodes from root to leaf.
    pub max_depth: usize,
    pub max_args: usize,
    /// Report only arguments whose grounds are subset-minimal.
    pub minimal: bool,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_depth: 8,
            max_args: 1000,
            minimal: true,
        }
    }
}

impl SearchLimits {
    pub fn with_depth(mut self, depth: usize) -> Self {
        self.max_depth = depth;
        self
    }

    pub fn exhaustive(mut self) -> Self {
        self.minimal = false;
        self
    }
}
