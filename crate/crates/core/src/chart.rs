//! Charts of the integer part of a page: `x = c`, `y = s`.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::algebra::{Degree, DegreeWindow, GradedGroups};
use crate::error::{Error, Result};
use crate::ss::bp::Schedule;
use crate::ss::Page;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    pub title: String,
    pub max_c: i64,
    pub max_s: i64,
    /// Nonzero cells `(c, s)` and their groups.
    pub cells: BTreeMap<(i64, i64), String>,
    /// Differentials `(r, source, target)`.
    pub arrows: Vec<(i64, (i64, i64), (i64, i64))>,
}

fn integer_degrees(w: &DegreeWindow) -> Vec<Degree> {
    w.degrees().into_iter().filter(|d| d.w == 0).collect()
}

fn supports_differential(page: &Page, d: Degree) -> Result<bool> {
    let target = page.ring.group_at(d + page.differential.shift())?;
    for m in page.ring.monomials(d).iter() {
        let x = crate::algebra::PolyElement::term(num_bigint::BigInt::from(1), m.clone());
        if target.is_zero_class(&page.d(&x)) != Some(true) {
            return Ok(true);
        }
    }
    Ok(false)
}

impl Chart {
    /// `page` is one of `E2`, `E4`, `E8`. `E2` carries the `d3` arrows, `E4` the `d7` arrows.
    pub fn of_page(s: &Schedule, page: &str, w: &DegreeWindow) -> Result<Chart> {
        let (groups, diff): (&dyn GradedGroups, Option<&Page>) = match page {
            "E2" => (s.e2.as_ref(), Some(s.d3.as_ref())),
            "E4" => (s.e4_presentation.as_ref(), Some(s.d7.as_ref())),
            "E8" => (s.e8.as_ref(), None),
            other => {
                return Err(Error::Config {
                    path: "page".into(),
                    message: format!("page must be E2, E4 or E8, got {other}"),
                })
            }
        };
        let degrees = integer_degrees(w);
        let mut chart = Chart {
            title: format!("{page}, n = {}, w = 0", s.n),
            max_c: degrees.iter().map(|d| d.c).max().unwrap_or(-1),
            max_s: degrees.iter().map(|d| d.s.abs().min(d.c)).max().unwrap_or(0),
            cells: BTreeMap::new(),
            arrows: Vec::new(),
        };
        for d in degrees {
            let g = groups.group_at(d)?.group();
            if g.is_zero() {
                continue;
            }
            chart.cells.insert((d.c, d.s), g.to_string());
            if let Some(p) = diff {
                if p.differential.images.iter().any(|x| !x.is_zero()) && supports_differential(p, d)? {
                    let t = d + p.differential.shift();
                    chart.arrows.push((p.r(), (d.c, d.s), (t.c, t.s)));
                }
            }
        }
        Ok(chart)
    }

    pub fn to_text(&self) -> String {
        let width = self.cells.values().map(|l| l.chars().count()).max().unwrap_or(1).max(2) + 1;
        let mut out = String::new();
        writeln!(out, "{}", self.title).unwrap();
        for s in (-self.max_s..=self.max_s).rev() {
            write!(out, "{s:>4} |").unwrap();
            for c in 0..=self.max_c {
                let label = self.cells.get(&(c, s)).map(String::as_str).unwrap_or(".");
                write!(out, "{label:>width$}").unwrap();
            }
            out.push('\n');
        }
        let cols = (self.max_c + 1).max(0) as usize;
        writeln!(out, "     +{}", "-".repeat(cols * width)).unwrap();
        write!(out, "      ").unwrap();
        for c in 0..=self.max_c {
            write!(out, "{c:>width$}").unwrap();
        }
        out.push('\n');
        for (r, a, b) in &self.arrows {
            writeln!(out, "d{r}: ({},{}) -> ({},{})", a.0, a.1, b.0, b.1).unwrap();
        }
        out
    }

    pub fn to_svg(&self) -> String {
        const CELL: i64 = 48;
        const MARGIN: i64 = 40;
        let cols = (self.max_c + 1).max(0);
        let rows = 2 * self.max_s + 1;
        let w = 2 * MARGIN + cols * CELL;
        let h = 2 * MARGIN + rows * CELL;
        let x = |c: i64| MARGIN + c * CELL + CELL / 2;
        let y = |s: i64| MARGIN + (self.max_s - s) * CELL + CELL / 2;
        let mut out = String::new();
        writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#).unwrap();
        writeln!(out, r#"<defs><marker id="head" markerWidth="8" markerHeight="8" refX="7" refY="4" orient="auto"><path d="M0,0 L8,4 L0,8 z"/></marker></defs>"#).unwrap();
        writeln!(out, r#"<text x="{MARGIN}" y="{}" font-family="monospace" font-size="14">{}</text>"#, MARGIN / 2, self.title).unwrap();
        for c in 0..=cols {
            let gx = MARGIN + c * CELL;
            writeln!(out, r##"<line x1="{gx}" y1="{MARGIN}" x2="{gx}" y2="{}" stroke="#ddd"/>"##, h - MARGIN).unwrap();
        }
        for r in 0..=rows {
            let gy = MARGIN + r * CELL;
            writeln!(out, r##"<line x1="{MARGIN}" y1="{gy}" x2="{}" y2="{gy}" stroke="#ddd"/>"##, w - MARGIN).unwrap();
        }
        for c in 0..cols {
            writeln!(out, r#"<text x="{}" y="{}" font-family="monospace" font-size="10" text-anchor="middle">{c}</text>"#, x(c), h - MARGIN / 2).unwrap();
        }
        for s in -self.max_s..=self.max_s {
            writeln!(out, r#"<text x="{}" y="{}" font-family="monospace" font-size="10" text-anchor="end">{s}</text>"#, MARGIN - 4, y(s) + 3).unwrap();
        }
        for ((c, s), label) in &self.cells {
            writeln!(out, r#"<text x="{}" y="{}" font-family="monospace" font-size="11" text-anchor="middle">{label}</text>"#, x(*c), y(*s) + 4).unwrap();
        }
        for (r, a, b) in &self.arrows {
            writeln!(
                out,
                r##"<line class="d{r}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#c00" marker-end="url(#head)"/>"##,
                x(a.0),
                y(a.1),
                x(b.0),
                y(b.1)
            )
            .unwrap();
        }
        out.push_str("</svg>\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn height_one_e4() {
        let w = DegreeWindow::integer_part(12);
        let s = Schedule::new(1, &w).unwrap();
        let c = Chart::of_page(&s, "E4", &w).unwrap();
        assert_eq!(c.cells.get(&(0, 0)).map(String::as_str), Some("Z"));
        assert_eq!(c.cells.get(&(2, -2)).map(String::as_str), Some("Z"));
        assert!(c.cells.keys().all(|(c, _)| c % 2 == 0));
        assert_eq!(c.to_text(), Chart::of_page(&s, "E4", &w).unwrap().to_text());
        assert!(c.to_svg().starts_with("<svg"));
        let empty = Chart::of_page(&s, "E4", &DegreeWindow::explicit(vec![])).unwrap();
        assert!(empty.cells.is_empty());
        assert!(empty.to_svg().ends_with("</svg>\n"));
    }

    #[test]
    fn height_three_torsion_cell() {
        let w = DegreeWindow::new(12, 0, 6).unwrap();
        let s = Schedule::new(3, &w).unwrap();
        let c = Chart::of_page(&s, "E8", &w).unwrap();
        assert_eq!(c.cells.get(&(9, 5)).map(String::as_str), Some("Z/2"));
    }
}
