//! The checks run on a computed schedule, one function per reported check.

use num_bigint::BigInt;

use super::bp::{d3_table, d7_table, deg_t, Schedule};
use super::checks::{collapse_certificate, evenness_and_torsion_check, region_audit};
use super::differential::{degree_audit, DifferentialSpec};
use super::page::{d_squared_audit, Page};
use super::survival::survival_check;
use crate::algebra::{generation_check, verify_presentation_iso, Degree, DegreeGroup, DegreeWindow, GradedGroups, PolyElement};
use crate::error::Result;
use crate::report::{Assumption, Outcome};

/// `Z^2{x, y}`, or `0`.
pub fn named(g: &DegreeGroup) -> String {
    let grp = g.group();
    if grp.is_zero() {
        return "0".into();
    }
    format!("{grp}{{{}}}", g.labels.join(", "))
}

/// Every `E_4` generator must be sent to a `d_3`-cycle; a failure is reported in the degree
/// of the nonzero image.
pub fn generator_cycles(s: &Schedule) -> Result<Outcome> {
    let mut out = Outcome::new();
    let p = &s.e4_presentation;
    let names = s.e2.names();
    let shift = s.d3.differential.shift();
    for g in &p.table.gens {
        let x = s.assignment.apply(&p.var(&g.name)?);
        let dx = s.d3.d(&x);
        let t = g.degree + shift;
        let zero = dx.is_zero() || s.e2.group_at(t)?.is_zero_class(&dx) == Some(true);
        let item = format!("d3({}) for {}", x.fmt_with(&names), g.name);
        if zero {
            out.detail(Some(t), item, "0", "0");
        } else {
            out.fail(Some(t), item, "0", dx.fmt_with(&names));
        }
    }
    Ok(out)
}

/// Homology of `E_3` against the `E_4` presentation, with `m1` named `[2t1]`.
pub fn e4_page_check(s: &Schedule, w: &DegreeWindow) -> Result<Outcome> {
    let mut out = generator_cycles(s)?;
    out.merge(verify_presentation_iso(s.e4.as_ref(), &s.e4_presentation, &s.assignment, w)?);
    let d = deg_t(1);
    out.detail(Some(d), "E4 group", "Z{[2t1]}", named(s.e4.group_at(d)?.as_ref()));
    Ok(out)
}

fn audit_page(out: &mut Outcome, page: &Page, w: &DegreeWindow) -> Result<()> {
    let degrees = degree_audit(&page.differential, page.table());
    let ok = degrees.passed();
    out.merge(degrees);
    if !ok {
        return Ok(());
    }
    out.merge(d_squared_audit(page, w)?);
    out.merge(page.well_defined_audit()?);
    Ok(())
}

/// Degrees, `d∘d = 0` and compatibility with relations, for both tables.
pub fn structural_audits(s: &Schedule, w: &DegreeWindow) -> Result<Outcome> {
    let mut out = Outcome::new();
    audit_page(&mut out, &s.d3, w)?;
    audit_page(&mut out, &s.d7, w)?;
    Ok(out)
}

/// The region `|s| <= c` on `E_2`, `E_4` and `E_8`.
pub fn region_check(s: &Schedule, w: &DegreeWindow) -> Result<Outcome> {
    let mut out = Outcome::new();
    let pages: [(&str, &dyn GradedGroups); 3] = [("E2", s.e2.as_ref()), ("E4", s.e4.as_ref()), ("E8", s.e8.as_ref())];
    for (name, g) in pages {
        let o = region_audit(g, w)?;
        let n = o.witnesses.len();
        out.merge(o);
        out.detail(None, format!("{name} cells outside the region"), "0", n.to_string());
    }
    Ok(out)
}

/// Classes claimed to generate `E_8` at height two.
pub const E8_GENERATORS: [&str; 19] = [
    "a", "w", "v1", "v2", "t1sq^2", "t2^2", "t3", "t4", "w*t1sq + a^2*t2", "m1", "2*t2", "2*t1sq", "2*t1sq*t2",
    "m1*t1sq", "m1*t2", "m1*t1sq*t2", "v1*t1sq", "v1*t2", "v1*t1sq*t2",
];

pub fn default_e8_generators() -> Vec<String> {
    E8_GENERATORS.iter().map(|s| s.to_string()).collect()
}

/// Generation of `E_8` by `classes`. Classes naming generators beyond the window's table are
/// skipped.
pub fn e8_generators_check(s: &Schedule, classes: &[String], w: &DegreeWindow) -> Result<Outcome> {
    let p = &s.e4_presentation;
    let mut parsed: Vec<PolyElement<BigInt>> = Vec::new();
    let mut out = Outcome::new();
    for c in classes {
        match p.parse(c) {
            Ok(x) => parsed.push(x),
            Err(e) => out.note(format!("{c} skipped: {e}")),
        }
    }
    out.merge(generation_check(s.e8.as_ref(), &parsed, w)?);
    Ok(out)
}

/// Integer part of `E_8`: even and torsion-free, then no room for longer differentials.
pub fn even_check(s: &Schedule, w: &DegreeWindow) -> Result<Outcome> {
    let mut out = evenness_and_torsion_check(s.e8.as_ref(), &w.restrict_integer_part(), true)?;
    out.merge(collapse_certificate(s.e8.as_ref(), w, 8, 2 * w.max_abs_s + 1)?);
    Ok(out)
}

pub fn default_markers() -> Vec<Assumption> {
    let reason = "transfer class; all possible sources are permanent cycles";
    vec![
        Assumption { class: "m1".into(), reason: reason.into() },
        Assumption { class: "2".into(), reason: reason.into() },
    ]
}

pub const SURVIVAL_TARGET: &str = "a^5*w*v3";

/// Height three: the two source groups, the survival certificate for `a^5 w v3` and the odd
/// torsion it leaves in `E_8`.
pub fn survival_report(s: &Schedule, markers: &[Assumption], w: &DegreeWindow) -> Result<Outcome> {
    let mut out = Outcome::new();
    let expected = [
        (Degree::new(10, 0, -6), "Z^3{m1*t1sq*w*v1^2, t2*w*v1^2, m1^3*w*v1^2}"),
        (Degree::new(10, 0, -10), "Z^5{m1*t1sq^2, m1^3*t1sq, m1^2*t2, m1^5, t1sq*t2}"),
    ];
    for (d, e) in expected {
        let g = s.e4_presentation.group_at(d)?;
        out.detail(Some(d), "E4 group", e, named(&g));
        out.note(format!("E4 at {d} from E3 homology: {}", named(s.e4.group_at(d)?.as_ref())));
    }
    let cert = survival_check(s, SURVIVAL_TARGET, markers, 2 * w.max_abs_s + 1)?;
    out.merge(cert.outcome());
    for e in &cert.sources {
        if !e.generators.iter().all(|(g, _)| g == "0") {
            out.note(format!("d{} sources at {}: {:?}", e.r, e.degree, e.generators));
        }
    }
    let even = evenness_and_torsion_check(s.e8.as_ref(), &w.restrict_integer_part(), true)?;
    let target = Degree::new(9, 0, 5);
    let hit = even.witnesses.iter().any(|x| x.degree == Some(target));
    out.detail(Some(target), "evenness fails here", "yes", if hit { "yes" } else { "no" });
    for x in &even.witnesses {
        out.note(format!("odd or torsion class at {}: {}", x.degree.map(|d| d.to_string()).unwrap_or_default(), x.description));
    }
    Ok(out)
}

/// A `d_3` table with `d(v1) = a^3` added by hand, so that `d∘d(t1) = a^4 ≠ 0`.
pub fn broken_square(s: &Schedule) -> Result<DifferentialSpec> {
    let mut d = DifferentialSpec::from_table(&d3_table(), &s.e2.table)?;
    d.set(&s.e2.table, "v1", "a^3")?;
    Ok(d)
}

pub fn default_tables() -> [super::DifferentialTable; 2] {
    [d3_table(), d7_table()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ss::bp::ScheduleOptions;
    use crate::ss::DifferentialTable;

    fn small() -> DegreeWindow {
        DegreeWindow::new(12, 2, 8).unwrap()
    }

    #[test]
    fn e4_page_passes() {
        let w = small();
        let s = Schedule::new(2, &w).unwrap();
        let o = e4_page_check(&s, &w).unwrap();
        assert!(o.passed(), "{:?}", o.failing_details().take(3).collect::<Vec<_>>());
        assert!(structural_audits(&s, &w).unwrap().passed());
        assert!(region_check(&s, &w).unwrap().passed());
    }

    #[test]
    fn deleted_differential_is_localized() {
        let w = small();
        let opts = ScheduleOptions {
            d3: Some(DifferentialTable { r: 3, assignments: vec![("t1".into(), "a*v1".into())] }),
            ..Default::default()
        };
        let s = Schedule::with_options(2, &w, &opts).unwrap();
        let o = e4_page_check(&s, &w).unwrap();
        assert_eq!(o.first_witness(), Some(Degree::new(1, -2, 3)));
    }

    #[test]
    fn deleted_relation_is_localized() {
        let w = small();
        let opts = ScheduleOptions { drop_square_relation: true, ..Default::default() };
        let s = Schedule::with_options(2, &w, &opts).unwrap();
        let o = e4_page_check(&s, &w).unwrap();
        assert_eq!(o.first_witness(), Some(Degree::new(4, 0, -4)));
    }

    #[test]
    fn removed_generator_is_localized() {
        let w = small();
        let s = Schedule::new(2, &w).unwrap();
        let list: Vec<String> = default_e8_generators().into_iter().filter(|c| c != "m1").collect();
        let o = e8_generators_check(&s, &list, &w).unwrap();
        assert!(!o.passed());
        assert_eq!(o.first_witness(), Some(deg_t(1)));
    }

    #[test]
    fn malformed_tables_fail_audits() {
        let w = small();
        let s = Schedule::new(2, &w).unwrap();
        let mut d = DifferentialSpec::from_table(&d3_table(), &s.e2.table).unwrap();
        d.set(&s.e2.table, "t1", "v1").unwrap();
        assert!(!degree_audit(&d, &s.e2.table).passed());
        let page = Page::new("E3", s.e2.clone(), broken_square(&s).unwrap());
        let o = d_squared_audit(&page, &w).unwrap();
        assert!(!o.passed());
    }
}
