use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StageStatus {
    Ok,
    Skipped,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct StageResult {
    pub stage: String,
    pub status: StageStatus,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub data: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// One claimed property and whether the computation confirmed it.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub stage: String,
    pub claim: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

/// The JSON document every command emits. Timings are wall-clock
/// microseconds per stage and are left out under `--no-timings`, which makes
/// the report a deterministic function of the inputs.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, u64>>,
    pub results: Vec<StageResult>,
    pub verdicts: Vec<Verdict>,
    pub passed: bool,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn stage(&self, name: &str) -> Option<&StageResult> {
        self.results.iter().find(|r| r.stage == name)
    }
}

/// Builds a [`RunReport`] stage by stage.
pub struct Recorder {
    report: RunReport,
    progress: bool,
    aborted: bool,
}

impl Recorder {
    pub fn new(command: &str, timings: bool, progress: bool) -> Self {
        Recorder {
            report: RunReport {
                schema_version: SCHEMA_VERSION,
                command: command.to_string(),
                inputs: BTreeMap::new(),
                timings: timings.then(BTreeMap::new),
                results: Vec::new(),
                verdicts: Vec::new(),
                passed: false,
            },
            progress,
            aborted: false,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("input serializes");
        self.report.inputs.insert(key.to_string(), v);
    }

    pub fn progress(&self) -> bool {
        self.progress
    }

    /// Runs one stage. The closure returns the value later stages need and
    /// the JSON subtree to record. An error records the stage as failed, adds
    /// a failing verdict naming it, and aborts the remaining stages.
    pub fn run<T>(
        &mut self,
        name: &str,
        f: impl FnOnce() -> Result<(T, Value), String>,
    ) -> Option<T> {
        if self.aborted {
            return None;
        }
        if self.progress {
            eprintln!("[cdv] stage {name}: started");
        }
        let start = Instant::now();
        let outcome = f();
        let micros = u64::try_from(start.elapsed().as_micros()).unwrap_or(u64::MAX);
        if let Some(t) = self.report.timings.as_mut() {
            t.insert(name.to_string(), micros);
        }
        if self.progress {
            eprintln!(
                "[cdv] stage {name}: finished in {:.3} s",
                micros as f64 / 1e6
            );
        }
        match outcome {
            Ok((value, data)) => {
                self.report.results.push(StageResult {
                    stage: name.to_string(),
                    status: StageStatus::Ok,
                    data,
                    error: None,
                });
                Some(value)
            }
            Err(message) => {
                self.report.results.push(StageResult {
                    stage: name.to_string(),
                    status: StageStatus::Error,
                    data: Value::Null,
                    error: Some(message.clone()),
                });
                self.verdict(name, "stage completes", "ok", &format!("error: {message}"));
                self.aborted = true;
                None
            }
        }
    }

    pub fn skip(&mut self, name: &str, reason: &str) {
        self.report.results.push(StageResult {
            stage: name.to_string(),
            status: StageStatus::Skipped,
            data: serde_json::json!({ "reason": reason }),
            error: None,
        });
    }

    /// Records a claim; it passes when the rendered values agree.
    pub fn verdict(&mut self, stage: &str, claim: &str, expected: &str, actual: &str) {
        assert!(
            self.report.stage(stage).is_some(),
            "verdict {claim:?} refers to unrecorded stage {stage}"
        );
        self.report.verdicts.push(Verdict {
            stage: stage.to_string(),
            claim: claim.to_string(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            pass: expected == actual,
        });
    }

    pub fn check(
        &mut self,
        stage: &str,
        claim: &str,
        expected: impl ToString,
        actual: impl ToString,
    ) {
        self.verdict(stage, claim, &expected.to_string(), &actual.to_string());
    }

    pub fn finish(mut self) -> RunReport {
        let r = &mut self.report;
        r.passed = !r.verdicts.is_empty() && r.verdicts.iter().all(|v| v.pass);
        self.report
    }
}
