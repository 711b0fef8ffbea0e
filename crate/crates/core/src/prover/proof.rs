use serde::{Deserialize, Serialize};

use crate::kernel::{Formula, GroundLabel};

/// Natural-deduction rules of the labelled logic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    Axiom,
    /// A leaf standing for an assumption discharged further down the tree.
    Hypothesis,
    AndIntro,
    AndElimLeft,
    AndElimRight,
    ImpIntro,
    ImpElim,
    OrIntroLeft,
    OrIntroRight,
    OrElim,
    NotIntro,
    NotElim,
}

/// A proof tree. Every node stores its conclusion.
///
/// Child order follows the rule schemas: `imp_elim` takes `[φ, φ -> ψ]`,
/// `not_elim` takes `[φ, ~φ]`, `or_elim` takes `[φ | ψ, left, right]`.
/// `label` names the ground axiom of an `axiom` leaf, or the assumption a
/// `hypothesis` leaf refers to. `discharges` lists the assumptions closed
/// by `imp_intro`, `not_intro` (one each) and `or_elim` (two).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProofTerm {
    pub rule: Rule,
    pub conclusion: Formula,
    #[serde(default)]
    pub children: Vec<ProofTerm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub discharges: Vec<String>,
}

impl ProofTerm {
    fn node(rule: Rule, conclusion: Formula, children: Vec<ProofTerm>) -> ProofTerm {
        ProofTerm {
            rule,
            conclusion,
            children,
            label: None,
            discharges: Vec::new(),
        }
    }

    pub fn axiom(label: &GroundLabel, conclusion: Formula) -> ProofTerm {
        ProofTerm {
            label: Some(label.to_string()),
            ..ProofTerm::node(Rule::Axiom, conclusion, Vec::new())
        }
    }

    pub fn hypothesis(name: &str, conclusion: Formula) -> ProofTerm {
        ProofTerm {
            label: Some(name.to_string()),
            ..ProofTerm::node(Rule::Hypothesis, conclusion, Vec::new())
        }
    }

    pub fn and_intro(left: ProofTerm, right: ProofTerm) -> ProofTerm {
        let c = Formula::and(left.conclusion.clone(), right.conclusion.clone());
        ProofTerm::node(Rule::AndIntro, c, vec![left, right])
    }

    pub fn and_elim_left(premise: ProofTerm, conclusion: Formula) -> ProofTerm {
        ProofTerm::node(Rule::AndElimLeft, conclusion, vec![premise])
    }

    pub fn and_elim_right(premise: ProofTerm, conclusion: Formula) -> ProofTerm {
        ProofTerm::node(Rule::AndElimRight, conclusion, vec![premise])
    }

    pub fn imp_intro(name: &str, conclusion: Formula, body: ProofTerm) -> ProofTerm {
        ProofTerm {
            discharges: vec![name.to_string()],
            ..ProofTerm::node(Rule::ImpIntro, conclusion, vec![body])
        }
    }

    pub fn imp_elim(minor: ProofTerm, major: ProofTerm, conclusion: Formula) -> ProofTerm {
        ProofTerm::node(Rule::ImpElim, conclusion, vec![minor, major])
    }

    pub fn or_intro_left(premise: ProofTerm, conclusion: Formula) -> ProofTerm {
        ProofTerm::node(Rule::OrIntroLeft, conclusion, vec![premise])
    }

    pub fn or_intro_right(premise: ProofTerm, conclusion: Formula) -> ProofTerm {
        ProofTerm::node(Rule::OrIntroRight, conclusion, vec![premise])
    }

    pub fn or_elim(
        disjunction: ProofTerm,
        (left_name, left): (&str, ProofTerm),
        (right_name, right): (&str, ProofTerm),
    ) -> ProofTerm {
        let c = left.conclusion.clone();
        ProofTerm {
            discharges: vec![left_name.to_string(), right_name.to_string()],
            ..ProofTerm::node(Rule::OrElim, c, vec![disjunction, left, right])
        }
    }

    pub fn not_intro(name: &str, conclusion: Formula, body: ProofTerm) -> ProofTerm {
        ProofTerm {
            discharges: vec![name.to_string()],
            ..ProofTerm::node(Rule::NotIntro, conclusion, vec![body])
        }
    }

    pub fn not_elim(positive: ProofTerm, negative: ProofTerm) -> ProofTerm {
        ProofTerm::node(Rule::NotElim, Formula::Falsum, vec![positive, negative])
    }

    /// Number of nodes on the longest root-to-leaf path.
    pub fn height(&self) -> usize {
        1 + self
            .children
            .iter()
            .map(ProofTerm::height)
            .max()
            .unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(ProofTerm::size).sum::<usize>()
    }

    /// Pre-order traversal of all nodes.
    pub fn nodes(&self) -> Vec<&ProofTerm> {
        let mut out = vec![self];
        for c in &self.children {
            out.extend(c.nodes());
        }
        out
    }

    /// Indented one-node-per-line rendering.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0);
        out
    }

    fn render_into(&self, out: &mut String, indent: usize) {
        use std::fmt::Write;
        let _ = write!(
            out,
            "{:indent$}{}  [{}",
            "",
            self.conclusion,
            rule_name(self.rule)
        );
        if let Some(l) = &self.label {
            let _ = write!(out, " {l}");
        }
        if !self.discharges.is_empty() {
            let _ = write!(out, " / {}", self.discharges.join(","));
        }
        out.push_str("]\n");
        for c in &self.children {
            c.render_into(out, indent + 2);
        }
    }
}

pub(crate) fn rule_name(rule: Rule) -> &'static str {
    match rule {
        Rule::Axiom => "axiom",
        Rule::Hypothesis => "hypothesis",
        Rule::AndIntro => "and_intro",
        Rule::AndElimLeft => "and_elim_left",
        Rule::AndElimRight => "and_elim_right",
        Rule::ImpIntro => "imp_intro",
        Rule::ImpElim => "imp_elim",
        Rule::OrIntroLeft => "or_intro_left",
        Rule::OrIntroRight => "or_intro_right",
        Rule::OrElim => "or_elim",
        Rule::NotIntro => "not_intro",
        Rule::NotElim => "not_elim",
    }
}
