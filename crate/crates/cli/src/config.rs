//! Application configuration, loaded from one TOML file.
//!
//! ```toml
//! snapshot = "corpus.snap"
//! listen = "127.0.0.1:8080"
//! log = "warn"
//! # static_dir = "webapp/dist"
//!
//! [build]
//! cohort_criterion = "last_school"
//! min_cohort_size = 50
//!
//! [eval]
//! completeness_threshold = 0.2
//!
//! [match]
//! k = 3
//! s_min = 5
//! ```
//!
//! Every key is optional; command-line flags override file values.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use profilelint_core::corpus::{BuildConfig, CohortCriterion};
use profilelint_core::evaluator::EvalConfig;
use profilelint_core::matcher::MatchParams;
use profilelint_core::profile::SectionKind;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AppConfig {
    pub snapshot: PathBuf,
    pub listen: String,
    /// A tracing filter directive such as `info` or `profilelint=debug`.
    pub log: String,
    /// Directory of static web assets served under `/` by `serve`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub static_dir: Option<PathBuf>,
    pub build: BuildConfig,
    pub eval: EvalSection,
    #[serde(rename = "match")]
    pub match_params: MatchParams,
}

impl Default for AppConfig {
    fn default() -> Self {
        AppConfig {
            snapshot: PathBuf::from("profilelint.snap"),
            listen: "127.0.0.1:8080".into(),
            log: "warn".into(),
            static_dir: None,
            build: BuildConfig::default(),
            eval: EvalSection::default(),
            match_params: MatchParams::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvalSection {
    pub completeness_threshold: f64,
    /// Unset means the criterion the snapshot was built with.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cohort_criterion: Option<CohortCriterion>,
    pub checked_sections: BTreeSet<SectionKind>,
}

impl Default for EvalSection {
    fn default() -> Self {
        let d = EvalConfig::default();
        EvalSection {
            completeness_threshold: d.completeness_threshold,
            cohort_criterion: d.cohort_criterion,
            checked_sections: d.checked_sections,
        }
    }
}

impl AppConfig {
    pub fn load(path: &Path) -> Result<AppConfig, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
        AppConfig::from_toml(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }

    pub fn from_toml(text: &str) -> Result<AppConfig, String> {
        let cfg: AppConfig = toml::from_str(text).map_err(|e| e.to_string())?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), String> {
        self.build.validate()?;
        self.eval_config().validate()
    }

    pub fn eval_config(&self) -> EvalConfig {
        EvalConfig {
            completeness_threshold: self.eval.completeness_threshold,
            cohort_criterion: self.eval.cohort_criterion,
            checked_sections: self.eval.checked_sections.clone(),
            match_params: self.match_params.clone(),
        }
    }
}
