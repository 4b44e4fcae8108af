//! Models by name: `P3`, `P1xP2`, `bl-pt-P2`, `bl-pt-P3`, `bl-line-P3`,
//! `proj-bundle(P1;1,1,0)`, `bl-zero-section(P1;1,1)`. Names are
//! case-insensitive.

use super::{blow_up, linear_subspace, product, projective_bundle, projective_space, Embedding, VarietyModel};
use crate::error::{Error, Result};

fn parse_projective(s: &str) -> Option<usize> {
    s.strip_prefix('p')?.parse().ok()
}

/// The embedding behind a blow-up name such as `bl-line-P3`.
pub fn embedding(name: &str) -> Result<Embedding> {
    let lower = name.to_ascii_lowercase();
    if let Some(inner) = lower.strip_prefix("bl-zero-section(").and_then(|s| s.strip_suffix(')')) {
        let (base, twists) = bundle_args(inner)?;
        let mut twists = twists;
        twists.push(0);
        let b = projective_bundle(&base, &base.class("h")?, &twists)?;
        return b
            .zero_section
            .ok_or_else(|| Error::Unsupported(format!("no zero section for {name}")));
    }
    let rest = lower
        .strip_prefix("bl-")
        .ok_or_else(|| Error::Unsupported(format!("{name} is not a blow-up")))?;
    let (center, ambient) = rest
        .split_once('-')
        .ok_or_else(|| Error::Unsupported(format!("cannot read the blow-up {name}")))?;
    let n = parse_projective(ambient).ok_or_else(|| Error::Unsupported(format!("ambient {ambient}")))?;
    let m = match center {
        "pt" | "point" => 0,
        "line" => 1,
        "plane" => 2,
        other => return Err(Error::Unsupported(format!("center {other}"))),
    };
    linear_subspace(m, n)
}

fn bundle_args(inner: &str) -> Result<(VarietyModel, Vec<i64>)> {
    let (base, twists) = inner
        .split_once(';')
        .ok_or_else(|| Error::Parse(format!("expected (Z;d1,..,dm), got ({inner})")))?;
    let base = lookup(base.trim())?;
    let twists = twists
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| Error::Parse(format!("twist {t}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok((base, twists))
}

/// A model by catalog name.
pub fn lookup(name: &str) -> Result<VarietyModel> {
    let lower = name.trim().to_ascii_lowercase();
    if let Some(n) = parse_projective(&lower) {
        return Ok(projective_space(n));
    }
    if let Some((a, b)) = lower.split_once('x') {
        if let (Some(m), Some(n)) = (parse_projective(a), parse_projective(b)) {
            return Ok(product(&projective_space(m), &projective_space(n)).with_name(name));
        }
    }
    if let Some(inner) = lower.strip_prefix("proj-bundle(").and_then(|s| s.strip_suffix(')')) {
        let (base, twists) = bundle_args(inner)?;
        return Ok(projective_bundle(&base, &base.class("h")?, &twists)?.model.with_name(name));
    }
    if lower.starts_with("bl-") {
        return Ok(blow_up(&embedding(&lower)?)?.model.with_name(name));
    }
    Err(Error::Unsupported(format!("unknown catalog space {name}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::int;

    #[test]
    fn names() {
        let cases = [
            ("P2", 3),
            ("P1xP1", 4),
            ("bl-pt-P2", 4),
            ("bl-pt-P3", 6),
            ("bl-line-P3", 6),
            ("proj-bundle(P1;1,1,0)", 6),
            ("bl-zero-section(P1;1,1)", 8),
        ];
        for (name, e) in cases {
            let x = lookup(name).unwrap();
            assert_eq!(x.euler_number().unwrap(), int(e), "{name}");
            let rank: i64 = x.tangent_roots().unwrap().iter().map(|r| r.mult).sum();
            assert_eq!(rank, x.dim() as i64, "{name}");
        }
        assert!(lookup("K3").is_err());
        assert_eq!(embedding("bl-line-p3").unwrap().codim, 2);
    }
}
