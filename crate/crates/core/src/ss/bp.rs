//! The pages of the BP-based slice spectral sequence of `BP_R<n>` used by the checks.

use std::sync::Arc;

use num_bigint::BigInt;

use super::differential::{DifferentialSpec, DifferentialTable};
use super::page::{HomologyPage, Page};
use crate::algebra::{Degree, DegreeWindow, GeneratorTable, PolyElement, RingMap, RingPresentation};
use crate::error::{Error, Result};

pub fn deg_a() -> Degree {
    Degree::new(0, -1, 1)
}

pub fn deg_u() -> Degree {
    Degree::new(2, -2, 0)
}

pub fn deg_v(i: u32) -> Degree {
    let k = (1i64 << i) - 1;
    Degree::new(k, k, 0)
}

pub fn deg_t(i: u32) -> Degree {
    let k = (1i64 << i) - 1;
    Degree::new(2 * k, 0, -2 * k)
}

/// Largest λ-weight that can occur while computing homology on `w` with differentials up to `r`.
pub fn weight_bound(w: &DegreeWindow, r: i64) -> i64 {
    let max_c = match &w.degrees {
        Some(list) => list.iter().map(|d| d.c).max().unwrap_or(0),
        None => w.max_underlying + w.max_abs_w,
    };
    2 * (max_c + 1) + w.max_abs_s + r
}

/// Number of `t_i` generators whose weight fits under `bound` (at least one).
pub fn t_count(bound: i64) -> u32 {
    let mut k = 1;
    while 2 * ((1i64 << (k + 1)) - 1) <= bound {
        k += 1;
    }
    k
}

/// `Z[a, u, v1..vn, t1..tk]/(2a)`.
pub fn e2_ring(n: u32, tk: u32) -> Result<RingPresentation<BigInt>> {
    let mut gens = vec![("a".to_string(), deg_a()), ("u".to_string(), deg_u())];
    for i in 1..=n {
        gens.push((format!("v{i}"), deg_v(i)));
    }
    for i in 1..=tk {
        gens.push((format!("t{i}"), deg_t(i)));
    }
    let table = GeneratorTable::new(gens);
    let two_a = PolyElement::var(0).scale(&BigInt::from(2));
    RingPresentation::new(table, vec![two_a])
}

/// The claimed `E_4` presentation `Z[a, w, m1, v1..vn, t1sq, t2..tk]/(2a, a v1, a m1, m1^2 - 4 t1sq)`.
pub fn e4_ring(n: u32, tk: u32) -> Result<RingPresentation<BigInt>> {
    e4_ring_with(n, tk, true)
}

/// As [`e4_ring`], optionally without the relation `m1^2 - 4 t1sq`.
pub fn e4_ring_with(n: u32, tk: u32, square_relation: bool) -> Result<RingPresentation<BigInt>> {
    let mut gens = vec![
        ("a".to_string(), deg_a()),
        ("w".to_string(), deg_u()),
        ("m1".to_string(), deg_t(1)),
    ];
    for i in 1..=n {
        gens.push((format!("v{i}"), deg_v(i)));
    }
    gens.push(("t1sq".to_string(), deg_t(1) * 2));
    for i in 2..=tk {
        gens.push((format!("t{i}"), deg_t(i)));
    }
    let table = GeneratorTable::new(gens);
    let names = table.names();
    let mut rels = vec!["2*a", "a*v1", "a*m1"];
    if square_relation {
        rels.push("m1^2 - 4*t1sq");
    }
    let rels: Result<Vec<PolyElement<BigInt>>> = rels
        .iter()
        .map(|r| crate::algebra::parse_poly(r, &names))
        .collect();
    RingPresentation::new(table, rels?)
}

pub fn d3_table() -> DifferentialTable {
    DifferentialTable {
        r: 3,
        assignments: vec![
            ("u".into(), "a^3*v1".into()),
            ("t1".into(), "a*v1".into()),
        ],
    }
}

pub fn d7_table() -> DifferentialTable {
    DifferentialTable {
        r: 7,
        assignments: vec![
            ("t1sq".into(), "a^3*v2".into()),
            ("t2".into(), "a*w*v2".into()),
        ],
    }
}

/// Images of the `E_4` generators as `E_2` cycles.
pub fn e4_assignment(e4: &GeneratorTable, e2: &GeneratorTable) -> Result<RingMap<BigInt>> {
    let mut pairs: Vec<(String, String)> = vec![
        ("a".into(), "a".into()),
        ("w".into(), "u - a^2*t1".into()),
        ("m1".into(), "2*t1".into()),
        ("t1sq".into(), "t1^2".into()),
    ];
    for g in &e4.gens {
        if g.name.starts_with('v') || (g.name.starts_with('t') && g.name != "t1sq") {
            pairs.push((g.name.clone(), g.name.clone()));
        }
    }
    let refs: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    RingMap::from_strings(e4, e2, &refs)
}

/// Everything computed for one height: `E_2` with `d_3`, its homology, the `E_4` presentation
/// with `d_7`, and the homology of that.
#[derive(Debug)]
pub struct Schedule {
    pub n: u32,
    pub e2: Arc<RingPresentation<BigInt>>,
    pub d3: Arc<Page>,
    pub e4: Arc<HomologyPage>,
    pub e4_presentation: Arc<RingPresentation<BigInt>>,
    pub d7: Arc<Page>,
    pub e8: Arc<HomologyPage>,
    pub assignment: RingMap<BigInt>,
}

#[derive(Clone, Debug, Default)]
pub struct ScheduleOptions {
    pub d3: Option<DifferentialTable>,
    pub d7: Option<DifferentialTable>,
    pub drop_square_relation: bool,
}

impl Schedule {
    pub fn new(n: u32, w: &DegreeWindow) -> Result<Schedule> {
        Self::with_options(n, w, &ScheduleOptions::default())
    }

    pub fn with_options(n: u32, w: &DegreeWindow, opts: &ScheduleOptions) -> Result<Schedule> {
        if !(1..=3).contains(&n) {
            return Err(Error::Config {
                path: "height".into(),
                message: format!("height must be 1, 2 or 3, got {n}"),
            });
        }
        w.validate()?;
        let tk = t_count(weight_bound(w, 7));
        let e2 = Arc::new(e2_ring(n, tk)?);
        let d3 = DifferentialSpec::from_table(opts.d3.as_ref().unwrap_or(&d3_table()), &e2.table)?;
        let d3 = Arc::new(Page::new("E3", e2.clone(), d3));
        let e4 = Arc::new(HomologyPage::new("E4", d3.clone()));
        let p = Arc::new(e4_ring_with(n, tk, !opts.drop_square_relation)?);
        let d7 = if n >= 2 {
            DifferentialSpec::from_table(opts.d7.as_ref().unwrap_or(&d7_table()), &p.table)?
        } else {
            DifferentialSpec::zero(7, &p.table)
        };
        let d7 = Arc::new(Page::new("E7", p.clone(), d7));
        let e8 = Arc::new(HomologyPage::new("E8", d7.clone()));
        let assignment = e4_assignment(&p.table, &e2.table)?;
        Ok(Schedule {
            n,
            e2,
            d3,
            e4,
            e4_presentation: p,
            d7,
            e8,
            assignment,
        })
    }
}
