use serde::{Deserialize, Serialize};

use crate::algebra::Degree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Unresolved,
    Fail,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail | Status::Unresolved => 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Unresolved => "unresolved",
        }
    }
}

/// One compared quantity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Detail {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<Degree>,
    pub item: String,
    pub expected: String,
    pub computed: String,
}

impl Detail {
    pub fn new(degree: Option<Degree>, item: impl Into<String>, expected: impl Into<String>, computed: impl Into<String>) -> Self {
        Detail {
            degree,
            item: item.into(),
            expected: expected.into(),
            computed: computed.into(),
        }
    }

    pub fn matches(&self) -> bool {
        self.expected == self.computed
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<Degree>,
    pub description: String,
}

/// A class asserted to be a permanent cycle, with the reason given for it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assumption {
    pub class: String,
    pub reason: String,
}

/// Result of one engine check before it is wrapped into a report.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Outcome {
    pub details: Vec<Detail>,
    pub witnesses: Vec<Witness>,
    pub assumptions: Vec<Assumption>,
    pub notes: Vec<String>,
    #[serde(default)]
    pub unresolved: bool,
}

impl Outcome {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn status(&self) -> Status {
        if self.details.iter().any(|d| !d.matches()) {
            Status::Fail
        } else if self.unresolved {
            Status::Unresolved
        } else {
            Status::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.status() == Status::Pass
    }

    pub fn detail(&mut self, degree: Option<Degree>, item: impl Into<String>, expected: impl Into<String>, computed: impl Into<String>) {
        self.details.push(Detail::new(degree, item, expected, computed));
    }

    /// Records a failed comparison together with a witness.
    pub fn fail(&mut self, degree: Option<Degree>, item: impl Into<String>, expected: impl Into<String>, computed: impl Into<String>) {
        let item = item.into();
        let d = Detail::new(degree, item.clone(), expected, computed);
        debug_assert!(!d.matches(), "failure detail must differ: {item}");
        self.details.push(d);
        self.witnesses.push(Witness {
            degree,
            description: item,
        });
    }

    pub fn witness(&mut self, degree: Option<Degree>, description: impl Into<String>) {
        self.witnesses.push(Witness {
            degree,
            description: description.into(),
        });
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn merge(&mut self, other: Outcome) {
        self.details.extend(other.details);
        self.witnesses.extend(other.witnesses);
        self.assumptions.extend(other.assumptions);
        self.notes.extend(other.notes);
        self.unresolved |= other.unresolved;
    }

    /// First witness degree, in the order recorded.
    pub fn first_witness(&self) -> Option<Degree> {
        self.witnesses.iter().find_map(|w| w.degree)
    }

    pub fn failing_details(&self) -> impl Iterator<Item = &Detail> {
        self.details.iter().filter(|d| !d.matches())
    }
}
