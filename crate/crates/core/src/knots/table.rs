//! Built-in 2-bridge knots and knot specifications.

use std::collections::BTreeMap;

use super::{two_bridge_presentation, GroupPresentation, KnotError};

#[derive(Clone, Debug, PartialEq)]
pub struct KnotRecord {
    pub name: String,
    /// 2-bridge fraction `p/q`, absent for user-supplied presentations.
    pub fraction: Option<(u64, u64)>,
    pub presentation: GroupPresentation,
    pub genus: u32,
    /// Unknown for user-supplied presentations.
    pub fibered: Option<bool>,
}

const TABLE: [(&str, u64, u64, u32, bool); 6] = [
    ("3_1", 3, 1, 1, true),
    ("4_1", 5, 3, 1, true),
    ("5_2", 7, 3, 1, false),
    ("6_1", 9, 7, 1, false),
    ("6_2", 11, 3, 2, true),
    ("7_2", 11, 5, 1, false),
];

/// Names accepted by [`builtin_knot`] besides `twist(p)`.
pub fn builtin_names() -> impl Iterator<Item = &'static str> {
    TABLE.iter().map(|e| e.0)
}

/// Looks up a table knot or a twist knot `twist(p)`, `0 < |p| <= 8`.
///
/// `twist(p)` has `p` full twists and fraction `|4p+1| / 2|p|`: `twist(1)` is
/// the figure-eight, `twist(-1)` the trefoil, `twist(-2)` is 5_2.
pub fn builtin_knot(name: &str) -> Result<KnotRecord, KnotError> {
    let name = name.trim();
    if let Some(&(n, p, q, genus, fibered)) = TABLE.iter().find(|e| e.0 == name) {
        return Ok(KnotRecord {
            name: n.to_string(),
            fraction: Some((p, q)),
            presentation: two_bridge_presentation(p, q)?,
            genus,
            fibered: Some(fibered),
        });
    }
    let twists = name
        .strip_prefix("twist(")
        .and_then(|r| r.strip_suffix(')'))
        .and_then(|r| r.trim().parse::<i64>().ok())
        .filter(|&t| t != 0 && t.abs() <= 8)
        .ok_or_else(|| KnotError::UnknownKnot(name.to_string()))?;
    let p = (4 * twists + 1).unsigned_abs();
    let q = 2 * twists.unsigned_abs();
    Ok(KnotRecord {
        name: format!("twist({twists})"),
        fraction: Some((p, q)),
        presentation: two_bridge_presentation(p, q)?,
        genus: 1,
        fibered: Some(twists.abs() == 1),
    })
}

/// Resolves a knot specification: a built-in name, `2bridge:p/q`, or the
/// path of a JSON presentation file.
///
/// For `2bridge:p/q` the genus and fiberedness come from the Alexander
/// polynomial, which determines both for 2-bridge (alternating) knots.
pub fn load_knot(spec: &str) -> Result<KnotRecord, KnotError> {
    let spec = spec.trim();
    if let Some(frac) = spec.strip_prefix("2bridge:") {
        let (p, q) = frac
            .split_once('/')
            .and_then(|(p, q)| Some((p.trim().parse::<u64>().ok()?, q.trim().parse::<u64>().ok()?)))
            .ok_or_else(|| KnotError::Parse(format!("expected 2bridge:p/q, got {spec:?}")))?;
        let presentation = two_bridge_presentation(p, q)?;
        let delta = alexander_polynomial(&presentation).expect("2-bridge presentation");
        let span = delta.keys().next_back().unwrap() - delta.keys().next().unwrap();
        let monic = delta.values().next().is_some_and(|c| c.abs() == 1);
        return Ok(KnotRecord {
            name: format!("2bridge:{p}/{q}"),
            fraction: Some((p, q)),
            presentation,
            genus: (span / 2) as u32,
            fibered: Some(monic),
        });
    }
    match builtin_knot(spec) {
        Ok(k) => return Ok(k),
        Err(KnotError::UnknownKnot(_)) if std::path::Path::new(spec).is_file() => {}
        Err(e) => return Err(e),
    }
    let text = std::fs::read_to_string(spec).map_err(|e| KnotError::Io(format!("{spec}: {e}")))?;
    let (presentation, genus) = GroupPresentation::from_json(&text)?;
    Ok(KnotRecord { name: spec.to_string(), fraction: None, presentation, genus, fibered: None })
}

/// Alexander polynomial of a two-generator one-relator presentation whose
/// second generator maps to `t`: the abelianized Fox derivative of the
/// relator with respect to the first generator. Integer coefficients keyed
/// by exponent, shifted to start at `t^0`.
pub fn alexander_polynomial(p: &GroupPresentation) -> Option<BTreeMap<i64, i64>> {
    if p.generator_count() != 2 || p.relators().len() != 1 || p.abelianization()[1] != 1 {
        return None;
    }
    let mut coeffs: BTreeMap<i64, i64> = BTreeMap::new();
    let mut exponent = 0;
    for &l in p.relators()[0].letters() {
        let gen = l.unsigned_abs() as usize - 1;
        let step = l.signum() as i64 * p.abelianization()[gen];
        if gen == 0 {
            // d(x)/dx = 1 at the current prefix, d(x^-1)/dx = -x^-1.
            let (c, e) = if l > 0 { (1, exponent) } else { (-1, exponent + step) };
            *coeffs.entry(e).or_default() += c;
        }
        exponent += step;
    }
    coeffs.retain(|_, c| *c != 0);
    let lo = *coeffs.keys().next()?;
    let sign = if *coeffs.values().next_back()? < 0 { -1 } else { 1 };
    Some(coeffs.into_iter().map(|(k, c)| (k - lo, sign * c)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn delta(name: &str) -> Vec<i64> {
        let k = builtin_knot(name).unwrap();
        alexander_polynomial(&k.presentation).unwrap().into_values().collect()
    }

    #[test]
    fn table_alexander_polynomials() {
        assert_eq!(delta("3_1"), vec![1, -1, 1]);
        assert_eq!(delta("4_1"), vec![1, -3, 1]);
        assert_eq!(delta("5_2"), vec![2, -3, 2]);
        assert_eq!(delta("6_1"), vec![2, -5, 2]);
        assert_eq!(delta("6_2"), vec![1, -3, 3, -3, 1]);
        assert_eq!(delta("7_2"), vec![3, -5, 3]);
    }

    #[test]
    fn twist_family() {
        assert_eq!(delta("twist(1)"), delta("4_1"));
        assert_eq!(delta("twist(-1)"), delta("3_1"));
        assert_eq!(delta("twist(-2)"), delta("5_2"));
        assert_eq!(delta("twist(2)"), delta("6_1"));
        assert_eq!(delta("twist(-3)"), delta("7_2"));
        for p in [-8i64, -5, 3, 8] {
            let k = builtin_knot(&format!("twist({p})")).unwrap();
            assert_eq!(k.genus, 1);
            assert_eq!(k.fibered, Some(false));
            let d = delta(&k.name);
            assert_eq!(d.len(), 3);
            assert_eq!(d[0], p.abs());
        }
        assert!(builtin_knot("twist(0)").is_err());
        assert!(builtin_knot("twist(9)").is_err());
        assert!(matches!(builtin_knot("8_20"), Err(KnotError::UnknownKnot(_))));
    }

    #[test]
    fn two_bridge_spec_derives_metadata() {
        let k = load_knot("2bridge:11/3").unwrap();
        assert_eq!((k.genus, k.fibered), (2, Some(true)));
        assert!(matches!(load_knot("2bridge:4/1"), Err(KnotError::InvalidFraction { p: 4, q: 1 })));
        assert!(matches!(load_knot("no_such_file.json"), Err(KnotError::UnknownKnot(_))));
    }
}
