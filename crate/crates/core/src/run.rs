//! Binds check ids to the engine.

use crate::algebra::DegreeWindow;
use crate::config::{CheckParams, Config};
use crate::error::{Error, Result};
use crate::report::{CheckId, Outcome, Report};
use crate::ss::bp::{Schedule, ScheduleOptions};
use crate::ss::pipeline;
use crate::ss::{comparison_map_check, ko_e4_check, ko_hilbert_check, DifferentialTable};
use crate::weierstrass::cobar::cobar_check;
use crate::weierstrass::hurewicz::hurewicz_check;
use crate::weierstrass::{Algebroid, Comodule, Hopf};

/// Height fixed by the statement a check verifies, if any.
fn fixed_height(id: CheckId) -> Option<u32> {
    match id {
        CheckId::KoE4 | CheckId::KoHilbert => Some(1),
        CheckId::Survival => Some(3),
        _ => None,
    }
}

fn default_window(id: CheckId) -> DegreeWindow {
    let w = |d, ww, s| DegreeWindow::new(d, ww, s).expect("default window");
    match id {
        CheckId::E4Page => w(40, 4, 12),
        CheckId::E8Generators | CheckId::Even => w(32, 2, 12),
        CheckId::Survival => w(12, 2, 12),
        CheckId::Comparison => w(24, 12, 24),
        CheckId::KoE4 | CheckId::KoHilbert => DegreeWindow::integer_part(24),
        _ => w(24, 4, 12),
    }
}

fn default_degree(id: CheckId) -> i64 {
    match id {
        CheckId::HopfAxioms => 30,
        _ => 24,
    }
}

fn is_algebroid(id: CheckId) -> bool {
    matches!(
        id,
        CheckId::HopfAxioms
            | CheckId::Restrictions
            | CheckId::Module
            | CheckId::Coactions
            | CheckId::Closure
            | CheckId::Hurewicz
            | CheckId::CobarExt
    )
}

pub fn height_for(id: CheckId, cfg: &Config) -> Result<Option<u32>> {
    if is_algebroid(id) {
        return Ok(None);
    }
    match (fixed_height(id), cfg.height) {
        (Some(f), Some(n)) if f != n => Err(Error::Config {
            path: "height".into(),
            message: format!("{id} is a height {f} check, got {n}"),
        }),
        (Some(f), _) => Ok(Some(f)),
        (None, n) => Ok(Some(n.unwrap_or(2))),
    }
}

pub fn window_for(id: CheckId, cfg: &Config) -> DegreeWindow {
    match (id, &cfg.window) {
        (CheckId::KoE4 | CheckId::KoHilbert, Some(w)) => DegreeWindow::integer_part(w.max_underlying),
        (_, Some(w)) => w.clone(),
        _ => default_window(id),
    }
}

fn tables(cfg: &Config) -> ScheduleOptions {
    let table = |key: &str, r| {
        cfg.differentials.get(key).map(|m| DifferentialTable {
            r,
            assignments: m.iter().map(|(a, b)| (a.clone(), b.clone())).collect(),
        })
    };
    ScheduleOptions {
        d3: table("d3", 3),
        d7: table("d7", 7),
        drop_square_relation: cfg.drops_square_relation(),
    }
}

/// Turns a bad table entry into a configuration error naming it.
fn locate(cfg: &Config, e: Error) -> Error {
    let find = |hit: &dyn Fn(&str, &str) -> bool| {
        cfg.differentials.iter().find_map(|(k, m)| {
            m.iter()
                .find(|(g, t)| hit(g, t))
                .map(|(g, _)| format!("differentials.{k}.{g}"))
        })
    };
    let path = match &e {
        Error::UnknownGenerator(name) => find(&|g, t| g == name || t.contains(name.as_str())),
        Error::Parse { input, .. } => find(&|_, t| t == input),
        _ => None,
    };
    match path {
        Some(path) => Error::Config {
            path,
            message: e.to_string(),
        },
        None => e,
    }
}

pub fn schedule(n: u32, w: &DegreeWindow, cfg: &Config) -> Result<Schedule> {
    Schedule::with_options(n, w, &tables(cfg)).map_err(|e| locate(cfg, e))
}

fn slice_check(id: CheckId, n: u32, w: &DegreeWindow, cfg: &Config) -> Result<Outcome> {
    match id {
        CheckId::KoE4 => return ko_e4_check(w.max_underlying),
        CheckId::KoHilbert => return ko_hilbert_check(w.max_underlying),
        CheckId::Comparison => return comparison_map_check(n, w),
        _ => {}
    }
    let s = schedule(n, w, cfg)?;
    match id {
        CheckId::Audits => pipeline::structural_audits(&s, w),
        CheckId::E2Region => pipeline::region_check(&s, w),
        CheckId::E4Page => pipeline::e4_page_check(&s, w),
        CheckId::E8Generators => {
            let classes = cfg.generators.e8.clone().unwrap_or_else(pipeline::default_e8_generators);
            pipeline::e8_generators_check(&s, &classes, w)
        }
        CheckId::Even => pipeline::even_check(&s, w),
        CheckId::Survival => {
            let markers = cfg.markers.clone().unwrap_or_else(pipeline::default_markers);
            pipeline::survival_report(&s, &markers, w)
        }
        _ => unreachable!("not a slice check"),
    }
}

fn eta_r_displays(g: &Algebroid) -> Result<Outcome> {
    let mut out = Outcome::new();
    let a1 = g.parse("a1 + 2*s")?;
    let a3 = g.parse("a3 + 1/3*a1*s^2 + 1/3*a1^2*s + 2*t")?;
    out.detail(None, "η_R(a1)", g.fmt(&a1), g.fmt(&g.eta_r_a1));
    out.detail(None, "η_R(a3)", g.fmt(&a3), g.fmt(&g.eta_r_a3));
    Ok(out)
}

fn algebroid_check(id: CheckId, p: &CheckParams, deg: i64) -> Result<(Outcome, DegreeWindow)> {
    let g = Algebroid::build()?;
    let window = |d, s| DegreeWindow::new(d, 0, s);
    if id == CheckId::Hurewicz {
        return Ok((hurewicz_check(&g)?, window(0, 0)?));
    }
    let h = Hopf::new(g)?;
    if id == CheckId::HopfAxioms {
        let mut out = eta_r_displays(&h.g)?;
        out.merge(h.g.freeness_check(deg)?);
        out.merge(h.axiom_check(deg)?);
        out.merge(h.action_check(deg)?);
        return Ok((out, window(deg, 0)?));
    }
    let m = Comodule::new(&h)?;
    let out = match id {
        CheckId::Restrictions => {
            let mut out = m.restriction_check()?;
            out.merge(m.e_class_combinations()?.0);
            (out, window(12, 0)?)
        }
        CheckId::Module => (m.module_check(deg)?, window(deg, 0)?),
        CheckId::Coactions => (m.coaction_check()?, window(12, 0)?),
        CheckId::Closure => (m.closure_check(deg)?.0, window(deg, 0)?),
        CheckId::CobarExt => {
            let s_max = p.s_max.unwrap_or(3);
            let t_max = p.t_max.unwrap_or(12);
            (cobar_check(&m, s_max, t_max)?.0, window(t_max, s_max as i64)?)
        }
        _ => unreachable!("not an algebroid check"),
    };
    Ok(out)
}

/// Runs one check. Engine and configuration errors come back as `Err`.
pub fn run_check(id: CheckId, cfg: &Config) -> Result<Report> {
    cfg.validate()?;
    let height = height_for(id, cfg)?;
    if is_algebroid(id) {
        let p = cfg.params(id);
        let deg = p
            .max_degree
            .or(cfg.window.as_ref().map(|w| w.max_underlying))
            .unwrap_or_else(|| default_degree(id));
        let (out, w) = algebroid_check(id, &p, deg)?;
        return Ok(Report::new(id, None, w, out));
    }
    let w = window_for(id, cfg);
    let n = height.expect("slice checks have a height");
    let out = slice_check(id, n, &w, cfg)?;
    Ok(Report::new(id, height, w, out))
}
