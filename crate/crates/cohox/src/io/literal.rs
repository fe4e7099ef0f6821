//! Group literals: `Z`, `Z/n`, `Z^k`, `0`, and `+`-sums thereof.

use crate::error::CohoxError;
use crate::fpgroup::FpGroup;
use num_bigint::BigInt;

/// Parse a literal such as "Z^2 + Z/4". The grammar accepts exactly
/// what `FpGroup::canonical_name` prints, so parse ∘ print = id up to
/// isomorphism.
pub fn parse_group_literal(s: &str) -> Result<FpGroup, CohoxError> {
    let bad = |detail: String| CohoxError::Validation {
        name: "group_literal",
        detail,
    };
    let s = s.trim();
    if s.is_empty() {
        return Err(bad("empty literal".into()));
    }
    if s == "0" {
        return Ok(FpGroup::from_moduli(vec![]));
    }
    let mut moduli = Vec::new();
    for term in s.split('+') {
        let term = term.trim();
        if term == "Z" {
            moduli.push(BigInt::from(0));
        } else if let Some(n) = term.strip_prefix("Z/") {
            let n: u64 = n
                .trim()
                .parse()
                .map_err(|_| bad(format!("bad torsion order in term '{term}'")))?;
            if n < 2 {
                return Err(bad(format!("torsion order must be >= 2 in term '{term}'")));
            }
            moduli.push(BigInt::from(n));
        } else if let Some(k) = term.strip_prefix("Z^") {
            let k: usize = k
                .trim()
                .parse()
                .map_err(|_| bad(format!("bad free rank in term '{term}'")))?;
            moduli.extend(std::iter::repeat(BigInt::from(0)).take(k));
        } else {
            return Err(bad(format!(
                "unrecognized term '{term}' (expected Z, Z/n, Z^k, or 0)"
            )));
        }
    }
    Ok(FpGroup::from_moduli(moduli))
}
