use serde::{Deserialize, Serialize};

use super::degree::Degree;
use crate::error::{Error, Result};

/// A finite box of degrees: `0 ≤ c`, `c + w ≤ max_underlying`, `|w| ≤ max_abs_w`,
/// `|s| ≤ max_abs_s`, or an explicit list when `degrees` is set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeWindow {
    pub max_underlying: i64,
    pub max_abs_s: i64,
    pub max_abs_w: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<Degree>>,
}

impl DegreeWindow {
    pub fn new(max_underlying: i64, max_abs_w: i64, max_abs_s: i64) -> Result<Self> {
        let w = DegreeWindow {
            max_underlying,
            max_abs_s,
            max_abs_w,
            degrees: None,
        };
        w.validate()?;
        Ok(w)
    }

    /// Integer part only (`w = 0`), stems up to `max_c`, all filtrations `|s| ≤ max_c`.
    pub fn integer_part(max_c: i64) -> Self {
        DegreeWindow {
            max_underlying: max_c,
            max_abs_s: max_c,
            max_abs_w: 0,
            degrees: None,
        }
    }

    pub fn explicit(degrees: Vec<Degree>) -> Self {
        let mut degrees = degrees;
        degrees.sort();
        degrees.dedup();
        let max_underlying = degrees.iter().map(|d| d.underlying()).max().unwrap_or(0).max(0);
        let max_abs_s = degrees.iter().map(|d| d.s.abs()).max().unwrap_or(0);
        let max_abs_w = degrees.iter().map(|d| d.w.abs()).max().unwrap_or(0);
        DegreeWindow {
            max_underlying,
            max_abs_s,
            max_abs_w,
            degrees: Some(degrees),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_underlying < 0 || self.max_abs_s < 0 || self.max_abs_w < 0 {
            return Err(Error::Window(format!(
                "bounds must be non-negative, got underlying {} |w| {} |s| {}",
                self.max_underlying, self.max_abs_w, self.max_abs_s
            )));
        }
        Ok(())
    }

    pub fn contains(&self, d: Degree) -> bool {
        match &self.degrees {
            Some(list) => list.binary_search(&d).is_ok(),
            None => self.in_box(d),
        }
    }

    fn in_box(&self, d: Degree) -> bool {
        d.c >= 0
            && d.underlying() <= self.max_underlying
            && d.w.abs() <= self.max_abs_w
            && d.s.abs() <= self.max_abs_s
    }

    /// All degrees of the window in lexicographic order.
    pub fn degrees(&self) -> Vec<Degree> {
        if let Some(list) = &self.degrees {
            return list.clone();
        }
        let mut out = Vec::new();
        for c in 0..=self.max_underlying + self.max_abs_w {
            for w in -self.max_abs_w..=self.max_abs_w {
                if c + w > self.max_underlying {
                    continue;
                }
                for s in -self.max_abs_s..=self.max_abs_s {
                    out.push(Degree::new(c, w, s));
                }
            }
        }
        out
    }

    /// The window enlarged so that `d ± shift` of every degree is included.
    pub fn padded(&self, shift: Degree) -> DegreeWindow {
        match &self.degrees {
            Some(list) => {
                let mut all = list.clone();
                for d in list {
                    all.push(*d + shift);
                    all.push(*d - shift);
                }
                all.retain(|d| d.c >= 0);
                DegreeWindow::explicit(all)
            }
            None => DegreeWindow {
                max_underlying: self.max_underlying + shift.underlying().abs(),
                max_abs_s: self.max_abs_s + shift.s.abs(),
                max_abs_w: self.max_abs_w + shift.w.abs(),
                degrees: None,
            },
        }
    }

    pub fn restrict_integer_part(&self) -> DegreeWindow {
        match &self.degrees {
            Some(list) => DegreeWindow::explicit(list.iter().copied().filter(|d| d.w == 0).collect()),
            None => DegreeWindow {
                max_abs_w: 0,
                ..self.clone()
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_enumeration() {
        let w = DegreeWindow::new(2, 1, 1).unwrap();
        let ds = w.degrees();
        assert!(ds.windows(2).all(|p| p[0] < p[1]));
        assert!(ds.iter().all(|d| w.contains(*d)));
        assert!(ds.contains(&Degree::new(3, -1, 0)));
        assert!(!ds.contains(&Degree::new(2, 1, 0)));
        assert!(DegreeWindow::new(-1, 0, 0).is_err());
    }
}
