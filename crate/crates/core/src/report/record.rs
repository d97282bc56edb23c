use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::outcome::{Assumption, Detail, Outcome, Status, Witness};
use crate::algebra::{Degree, DegreeWindow};
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CheckId {
    #[serde(rename = "audits")]
    Audits,
    #[serde(rename = "e2-region")]
    E2Region,
    #[serde(rename = "e4-page")]
    E4Page,
    #[serde(rename = "ko-e4")]
    KoE4,
    #[serde(rename = "ko-hilbert")]
    KoHilbert,
    #[serde(rename = "e8-generators")]
    E8Generators,
    #[serde(rename = "prop4.5-even")]
    Even,
    #[serde(rename = "prop4.6-survival")]
    Survival,
    #[serde(rename = "prop2.4-comparison")]
    Comparison,
    #[serde(rename = "hopf-axioms")]
    HopfAxioms,
    #[serde(rename = "thm5.9-restrictions")]
    Restrictions,
    #[serde(rename = "thm5.9-module")]
    Module,
    #[serde(rename = "thm5.9-coactions")]
    Coactions,
    #[serde(rename = "thm5.9-closure")]
    Closure,
    #[serde(rename = "prop5.6-hurewicz")]
    Hurewicz,
    #[serde(rename = "cobar-ext")]
    CobarExt,
}

impl CheckId {
    pub const ALL: [CheckId; 16] = [
        CheckId::Audits,
        CheckId::E2Region,
        CheckId::E4Page,
        CheckId::KoE4,
        CheckId::KoHilbert,
        CheckId::E8Generators,
        CheckId::Even,
        CheckId::Survival,
        CheckId::Comparison,
        CheckId::HopfAxioms,
        CheckId::Restrictions,
        CheckId::Module,
        CheckId::Coactions,
        CheckId::Closure,
        CheckId::Hurewicz,
        CheckId::CobarExt,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::Audits => "audits",
            CheckId::E2Region => "e2-region",
            CheckId::E4Page => "e4-page",
            CheckId::KoE4 => "ko-e4",
            CheckId::KoHilbert => "ko-hilbert",
            CheckId::E8Generators => "e8-generators",
            CheckId::Even => "prop4.5-even",
            CheckId::Survival => "prop4.6-survival",
            CheckId::Comparison => "prop2.4-comparison",
            CheckId::HopfAxioms => "hopf-axioms",
            CheckId::Restrictions => "thm5.9-restrictions",
            CheckId::Module => "thm5.9-module",
            CheckId::Coactions => "thm5.9-coactions",
            CheckId::Closure => "thm5.9-closure",
            CheckId::Hurewicz => "prop5.6-hurewicz",
            CheckId::CobarExt => "cobar-ext",
        }
    }

    /// One line for `list-checks`.
    pub fn summary(self) -> &'static str {
        match self {
            CheckId::Audits => "degree, d∘d and relation audits of the d3 and d7 tables",
            CheckId::E2Region => "E2, E4, E8 vanish outside |s| <= c",
            CheckId::E4Page => "E4 against Z[a, w, m1, v_i, t1sq, t_i]/(2a, a v1, a m1, m1^2 - 4 t1sq)",
            CheckId::KoE4 => "n = 1 integer part of E4, evenness and collapse",
            CheckId::KoHilbert => "n = 1 E4 stems against Z[b, c, t2, ...]",
            CheckId::E8Generators => "n = 2 E8 generated by the listed classes",
            CheckId::Even => "n = 2 integer part of E8 even and torsion-free",
            CheckId::Survival => "n = 3 sources of a differential hitting a^5 w v3",
            CheckId::Comparison => "comparison map injective on the a-ideal",
            CheckId::HopfAxioms => "Hopf algebroid axioms of the Weierstrass algebroid",
            CheckId::Restrictions => "res tr of s^2, s^3, t, st, s^2t, s^3t",
            CheckId::Module => "A-module structure of M = A{1, e4, ..., e12}",
            CheckId::Coactions => "coaction on e4, ..., e12",
            CheckId::Closure => "M closed under products",
            CheckId::Hurewicz => "mod 2 composite of the cusp and (s, t) isomorphisms",
            CheckId::CobarExt => "Ext of M from the cobar complex",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

/// One JSON line per check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub check: CheckId,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub height: Option<u32>,
    pub window: DegreeWindow,
    pub details: Vec<Detail>,
    pub witnesses: Vec<Witness>,
    pub assumptions: Vec<Assumption>,
    pub notes: Vec<String>,
    /// Wall time in milliseconds, only when asked for.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn new(check: CheckId, height: Option<u32>, window: DegreeWindow, out: Outcome) -> Report {
        Report {
            check,
            status: out.status(),
            height,
            window,
            details: out.details,
            witnesses: out.witnesses,
            assumptions: out.assumptions,
            notes: out.notes,
            timing_ms: None,
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Report> {
        serde_json::from_str(s)
    }

    pub fn first_witness(&self) -> Option<Degree> {
        self.witnesses.iter().find_map(|w| w.degree)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &Detail> {
        self.details.iter().filter(|d| !d.matches())
    }
}
