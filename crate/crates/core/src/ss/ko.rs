//! Height one: the integer part of `E_4` and its Hilbert function.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::bp::{deg_t, Schedule};
use super::checks::{collapse_certificate, evenness_and_torsion_check};
use crate::algebra::{verify_presentation_iso, Degree, DegreeWindow, GeneratorTable, GradedGroups, RingMap, RingPresentation};
use crate::error::Result;
use crate::exact::group::AbelianGroup;
use crate::report::Outcome;

/// `Z[Delta, m1, t1sq, t2, ..., tk]/(m1^2 - 4 t1sq)`, all in the integer part.
pub fn ko_presentation(tk: u32) -> Result<RingPresentation<BigInt>> {
    let mut gens = vec![
        ("Delta".to_string(), Degree::new(4, 0, 0)),
        ("m1".to_string(), deg_t(1)),
        ("t1sq".to_string(), deg_t(1) * 2),
    ];
    for i in 2..=tk {
        gens.push((format!("t{i}"), deg_t(i)));
    }
    let table = GeneratorTable::new(gens);
    let rel = crate::algebra::parse_poly("m1^2 - 4*t1sq", &table.names())?;
    RingPresentation::new(table, vec![rel])
}

/// `Z[b, c, t2, ..., tk]` with `|b| = 2`, `|c| = 4`, `|t_i| = 2(2^i - 1)`, graded by stem.
pub fn ko_homology_ring(tk: u32) -> Result<RingPresentation<BigInt>> {
    let mut gens = vec![("b".to_string(), Degree::new(2, 0, 0)), ("c".to_string(), Degree::new(4, 0, 0))];
    for i in 2..=tk {
        gens.push((format!("t{i}"), Degree::new(2 * ((1i64 << i) - 1), 0, 0)));
    }
    RingPresentation::free(GeneratorTable::new(gens))
}

fn tk_of(s: &Schedule) -> u32 {
    s.e2.table.gens.iter().filter(|g| g.name.starts_with('t')).count() as u32
}

/// The integer part of `E_4` for `n = 1` against the presentation, plus evenness and collapse.
pub fn ko_e4_check(max_stem: i64) -> Result<Outcome> {
    let w = DegreeWindow::integer_part(max_stem);
    let s = Schedule::new(1, &w)?;
    let claimed = ko_presentation(tk_of(&s))?;
    let mut pairs: Vec<(String, String)> = vec![
        ("Delta".into(), "(u - a^2*t1)*v1^2".into()),
        ("m1".into(), "2*t1".into()),
        ("t1sq".into(), "t1^2".into()),
    ];
    for g in claimed.table.gens.iter().skip(3) {
        pairs.push((g.name.clone(), g.name.clone()));
    }
    let refs: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let map = RingMap::from_strings(&claimed.table, &s.e2.table, &refs)?;
    let mut out = verify_presentation_iso(s.e4.as_ref(), &claimed, &map, &w)?;
    out.merge(evenness_and_torsion_check(s.e4.as_ref(), &w, true)?);
    out.merge(collapse_certificate(s.e4.as_ref(), &w, 4, 2 * max_stem + 1)?);
    Ok(out)
}

fn direct_sum(gs: impl IntoIterator<Item = AbelianGroup>) -> AbelianGroup {
    let mut out = AbelianGroup::trivial();
    for g in gs {
        out.free_rank += g.free_rank;
        out.invariant_factors.extend(g.invariant_factors);
    }
    out.invariant_factors.sort();
    out
}

/// Per-stem sums of the integer-part `E_4 = E_∞` groups against the Hilbert function of
/// `Z[b, c, t2, ...]`.
pub fn ko_hilbert_check(max_stem: i64) -> Result<Outcome> {
    let w = DegreeWindow::integer_part(max_stem);
    let s = Schedule::new(1, &w)?;
    let ring = ko_homology_ring(tk_of(&s))?;
    let groups = super::page::groups_on(s.e4.as_ref() as &dyn GradedGroups, &w)?;
    let mut by_stem: BTreeMap<i64, Vec<AbelianGroup>> = BTreeMap::new();
    for (d, g) in groups {
        by_stem.entry(d.c).or_default().push(g);
    }
    let mut out = Outcome::new();
    for c in 0..=max_stem {
        let page = direct_sum(by_stem.remove(&c).unwrap_or_default());
        let expected = ring.degreewise_group(Degree::new(c, 0, 0))?;
        out.detail(Some(Degree::new(c, 0, 0)), format!("stem {c}"), expected.to_string(), page.to_string());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_stems() {
        let o = ko_e4_check(8).unwrap();
        assert!(o.passed(), "{:?}", o.failing_details().take(3).collect::<Vec<_>>());
        let o = ko_hilbert_check(8).unwrap();
        assert!(o.passed(), "{:?}", o.failing_details().take(3).collect::<Vec<_>>());
    }
}
