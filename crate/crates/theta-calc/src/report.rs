//! Run configuration and report shapes shared by the suites and the
//! command-line tool. Reports embed the window and bounds used, since most
//! verdicts are window-relative, and serialize deterministically.

use serde::{Deserialize, Serialize};

use crate::families::FamilyBounds;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunConfig {
    pub n: u32,
    pub degree_bound: usize,
    pub window_degree: usize,
    pub seed: u64,
    pub count: usize,
    pub bounds: FamilyBounds,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n: 1,
            degree_bound: 2,
            window_degree: 2,
            seed: 0,
            count: 20,
            bounds: FamilyBounds::default(),
        }
    }
}

/// One failed case, with enough JSON to replay it.
#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub case: usize,
    pub description: String,
    pub replay: serde_json::Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub config: RunConfig,
    pub cases: usize,
    pub passed: usize,
    pub pass: bool,
    pub notes: Vec<String>,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    pub fn new(suite: &str, config: &RunConfig) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            config: config.clone(),
            cases: 0,
            passed: 0,
            pass: true,
            notes: Vec::new(),
            failures: Vec::new(),
        }
    }

    pub fn record(&mut self, ok: bool, description: impl FnOnce() -> (String, serde_json::Value)) {
        self.cases += 1;
        if ok {
            self.passed += 1;
        } else {
            self.pass = false;
            let (description, replay) = description();
            self.failures.push(Failure { case: self.cases - 1, description, replay });
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => serde_json::to_string_pretty(self).expect("report serializes"),
            OutputFormat::Csv => {
                let mut out = String::from("suite,cases,passed,pass\n");
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    self.suite, self.cases, self.passed, self.pass
                ));
                out
            }
            OutputFormat::Text => {
                let mut out = format!(
                    "suite {}: {}/{} cases passed: {}\n",
                    self.suite,
                    self.passed,
                    self.cases,
                    if self.pass { "PASS" } else { "FAIL" }
                );
                for n in &self.notes {
                    out.push_str(&format!("  note: {n}\n"));
                }
                for f in &self.failures {
                    out.push_str(&format!("  case {}: {}\n", f.case, f.description));
                }
                out
            }
        }
    }
}
