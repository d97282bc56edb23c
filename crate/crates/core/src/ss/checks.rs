use rayon::prelude::*;

use crate::algebra::{Degree, DegreeWindow, GradedGroups};
use crate::error::Result;
use crate::report::Outcome;

fn collect(parts: Result<Vec<Outcome>>) -> Result<Outcome> {
    let mut out = Outcome::new();
    for p in parts? {
        out.merge(p);
    }
    Ok(out)
}

/// On the integer part every nonzero group lies in `-c ≤ s ≤ c`.
pub fn region_audit(src: &dyn GradedGroups, w: &DegreeWindow) -> Result<Outcome> {
    let degrees: Vec<Degree> = w.degrees().into_iter().filter(|d| d.w == 0).collect();
    let mut out = collect(
        degrees
            .par_iter()
            .map(|&d| {
                let mut out = Outcome::new();
                if d.s.abs() > d.c {
                    let g = src.group_at(d)?.group();
                    if !g.is_zero() {
                        out.fail(Some(d), "group outside -c <= s <= c", "0", g.to_string());
                    }
                }
                Ok(out)
            })
            .collect(),
    )?;
    out.note(format!("region audit over {} integer-part degrees", degrees.len()));
    Ok(out)
}

/// Every nonzero group of the window (integer part only, if asked) is torsion-free in an
/// even stem. All offending degrees are recorded, in degree order.
pub fn evenness_and_torsion_check(src: &dyn GradedGroups, w: &DegreeWindow, integer_part_only: bool) -> Result<Outcome> {
    let degrees: Vec<Degree> = w
        .degrees()
        .into_iter()
        .filter(|d| !integer_part_only || d.w == 0)
        .collect();
    collect(
        degrees
            .par_iter()
            .map(|&d| {
                let mut out = Outcome::new();
                let g = src.group_at(d)?.group();
                if g.is_zero() {
                    return Ok(out);
                }
                if d.c % 2 != 0 {
                    out.fail(Some(d), format!("odd stem group {:?}", g.generator_labels), "0", g.to_string());
                } else if !g.is_torsion_free() {
                    out.fail(Some(d), format!("torsion {:?}", g.generator_labels), "torsion-free", g.to_string());
                } else {
                    out.detail(Some(d), "even torsion-free group", g.to_string(), g.to_string());
                }
                Ok(out)
            })
            .collect(),
    )
}

/// `d_r` vanishes for degree reasons when the target group of every algebra generator is zero.
pub fn degree_reason_scan(src: &dyn GradedGroups, rs: &[i64]) -> Result<Outcome> {
    let table = src.table().clone();
    let mut out = Outcome::new();
    for &r in rs {
        for g in &table.gens {
            let t = g.degree + Degree::differential(r);
            let grp = src.group_at(t)?.group();
            let item = format!("target of d{r}({}) at {t}", g.name);
            if grp.is_zero() {
                out.detail(Some(g.degree), item, "0", "0");
            } else {
                out.fail(Some(g.degree), item, "0", grp.to_string());
            }
        }
    }
    Ok(out)
}

/// No `d_r` with `r_min ≤ r ≤ r_max` can connect two nonzero integer-part groups of the window.
///
/// Also requires the integer part to be concentrated in even stems, which is what makes every
/// such pair vanish (source and target stems differ by one).
pub fn collapse_certificate(src: &dyn GradedGroups, w: &DegreeWindow, r_min: i64, r_max: i64) -> Result<Outcome> {
    let iw = w.restrict_integer_part();
    let mut out = evenness_and_torsion_check(src, &iw, true)?;
    let degrees = iw.degrees();
    let pairs = collect(
        degrees
            .par_iter()
            .map(|&d| {
                let mut out = Outcome::new();
                let g = src.group_at(d)?;
                if g.is_zero() {
                    return Ok(out);
                }
                for r in r_min..=r_max {
                    let t = d + Degree::differential(r);
                    if !iw.contains(t) {
                        continue;
                    }
                    let h = src.group_at(t)?;
                    if !h.is_zero() {
                        out.fail(
                            Some(d),
                            format!("possible d{r} from {d} to {t}"),
                            "0",
                            h.group().to_string(),
                        );
                    }
                }
                Ok(out)
            })
            .collect(),
    )?;
    let n_pairs = degrees.len() as i64 * (r_max - r_min + 1);
    out.merge(pairs);
    out.note(format!(
        "collapse scan: {} integer-part degrees, d_r for {r_min} <= r <= {r_max}, {n_pairs} source/shift pairs",
        degrees.len()
    ));
    Ok(out)
}
