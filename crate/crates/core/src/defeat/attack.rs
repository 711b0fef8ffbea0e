use crate::dictionary::Sign;
use crate::prover::{Argument, Claim};

/// Whether a con sign of strength `attacker` overcomes a pro sign `target`:
/// `--` beats every pro sign, `-` only beats `+`.
fn overcomes(attacker: Sign, target: Sign) -> bool {
    match attacker {
        Sign::DoubleMinus => target.is_positive(),
        Sign::Minus => target == Sign::Plus,
        _ => false,
    }
}

/// Rebuttal: same conclusion, sufficiently strong negative sign.
pub fn rebuts(attacker: &Claim, target: &Claim) -> bool {
    attacker.formula.normalize() == target.formula.normalize()
        && overcomes(attacker.sign, target.sign)
}

/// Discounting: the target's proof establishes the attacker's conclusion
/// at some node, and the attacker overcomes the sign at that node.
/// Hypothesis leaves are not dependencies.
pub fn discounts(attacker: &Claim, target: &Argument) -> bool {
    let q = attacker.formula.normalize();
    target
        .established_nodes()
        .any(|(f, s)| *f == q && overcomes(attacker.sign, *s))
}
