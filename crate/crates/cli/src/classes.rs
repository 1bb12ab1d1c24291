//! Classes in a finite ring given by a label or a linear combination of labels,
//! such as `[v]`, `2*[a*d] - 1/2*[b*c]` or `v1 + v2`.

use cdga_core::{FiniteRing, Rational};
use num_traits::{One, Zero};

use crate::ring_json::parse_rational;

fn label_index(ring: &FiniteRing, label: &str) -> Result<usize, String> {
    ring.index_of(label)
        .ok_or_else(|| format!("no basis element labelled `{label}`"))
}

/// Coordinates of `text` in the basis of `ring`.
pub fn parse_class(ring: &FiniteRing, text: &str) -> Result<Vec<Rational>, String> {
    let text = text.trim();
    if let Some(i) = ring.index_of(text) {
        return Ok(ring.basis_vector(i));
    }
    let chars: Vec<char> = text.chars().collect();
    let mut out = vec![Rational::zero(); ring.dim()];
    let mut at = 0;
    let skip = |at: &mut usize| {
        while *at < chars.len() && chars[*at].is_whitespace() {
            *at += 1;
        }
    };
    let mut first = true;
    loop {
        skip(&mut at);
        if at == chars.len() {
            if first {
                return Err("empty class".into());
            }
            return Ok(out);
        }
        let mut sign = Rational::one();
        match chars[at] {
            '+' => at += 1,
            '-' => {
                sign = -sign;
                at += 1;
            }
            _ if !first => return Err(format!("expected `+` or `-` at position {}", at + 1)),
            _ => {}
        }
        first = false;
        skip(&mut at);
        let mut coefficient = Rational::one();
        if at < chars.len() && chars[at].is_ascii_digit() {
            let start = at;
            while at < chars.len() && (chars[at].is_ascii_digit() || chars[at] == '/') {
                at += 1;
            }
            coefficient = parse_rational(&chars[start..at].iter().collect::<String>())?;
            skip(&mut at);
            if at < chars.len() && chars[at] == '*' {
                at += 1;
                skip(&mut at);
            } else {
                return Err(format!(
                    "expected `*` after the coefficient at position {}",
                    at + 1
                ));
            }
        }
        let start = at;
        if at < chars.len() && chars[at] == '[' {
            let mut depth = 0;
            while at < chars.len() {
                match chars[at] {
                    '[' => depth += 1,
                    ']' => depth -= 1,
                    _ => {}
                }
                at += 1;
                if depth == 0 {
                    break;
                }
            }
            if depth != 0 {
                return Err("unbalanced `[`".into());
            }
        } else {
            while at < chars.len() && (chars[at].is_alphanumeric() || chars[at] == '_') {
                at += 1;
            }
        }
        if start == at {
            return Err(format!("expected a label at position {}", at + 1));
        }
        let label: String = chars[start..at].iter().collect();
        let i = label_index(ring, &label)?;
        out[i] += sign * coefficient;
    }
}
