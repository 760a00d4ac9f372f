//! Suite dispatch, certificates and their text rendering.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;
use verifier_core::certificate::{all_passed, Check, Provenance};
use verifier_core::ff_geometry::field::is_prime;
use verifier_core::ff_geometry::GeometryError;
use verifier_core::suites::{
    geometry_sampling_suite, hilbert_suite, lattice_suite, mukai_suite, residuation_suite, scroll_suite,
    DEFAULT_ENUMERATION_PRIME, DEFAULT_SAMPLING_PRIME, MAX_ENUMERATION_PRIME,
};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const DEFAULT_RETRIES: usize = 5;
/// Interpolating cubics needs comfortably more than 56 distinct points.
pub const MIN_PRIME: u64 = 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Lattice,
    Mukai,
    Hilbert,
    Scroll,
    Geometry,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["lattice", "mukai", "hilbert", "scroll", "geometry", "all"];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lattice => "lattice",
            Suite::Mukai => "mukai",
            Suite::Hilbert => "hilbert",
            Suite::Scroll => "scroll",
            Suite::Geometry => "geometry",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        Ok(match s {
            "lattice" => Suite::Lattice,
            "mukai" => Suite::Mukai,
            "hilbert" => Suite::Hilbert,
            "scroll" => Suite::Scroll,
            "geometry" => Suite::Geometry,
            "all" => Suite::All,
            other => return Err(ConfigError::UnknownSuite(other.to_string())),
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("unknown suite {0:?}; expected one of lattice, mukai, hilbert, scroll, geometry, all")]
    UnknownSuite(String),
    #[error("{0} is not a prime below 2^31")]
    CompositePrime(u64),
    #[error("prime {0} is below the minimum {MIN_PRIME}")]
    PrimeTooSmall(u64),
    #[error("could not build a thread pool: {0}")]
    ThreadPool(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub prime: Option<u64>,
    pub seed: u64,
    /// 0 lets rayon decide.
    pub threads: usize,
    pub retries: usize,
    pub out: Option<PathBuf>,
}

impl SuiteConfig {
    pub fn new(suite: Suite) -> Self {
        SuiteConfig {
            suite,
            prime: None,
            seed: 0,
            threads: 0,
            retries: DEFAULT_RETRIES,
            out: None,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if let Some(p) = self.prime {
            if !is_prime(p) || p >= 1 << 31 {
                return Err(ConfigError::CompositePrime(p));
            }
            if p < MIN_PRIME {
                return Err(ConfigError::PrimeTooSmall(p));
            }
        }
        Ok(())
    }

    pub fn sampling_prime(&self) -> u64 {
        self.prime.unwrap_or(DEFAULT_SAMPLING_PRIME)
    }

    pub fn enumeration_prime(&self) -> u64 {
        match self.prime {
            Some(p) if p <= MAX_ENUMERATION_PRIME => p,
            _ => DEFAULT_ENUMERATION_PRIME,
        }
    }
}

/// The part of the configuration that determines the checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfigEcho {
    pub suite: Suite,
    pub seed: u64,
    pub retries: usize,
    pub sampling_prime: Option<u64>,
    pub enumeration_prime: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub suite: String,
    pub tool_version: String,
    pub config: ConfigEcho,
    pub checks: Vec<Check>,
    /// Wall-clock milliseconds per suite.
    pub timings: BTreeMap<String, u64>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        all_passed(&self.checks)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    /// The JSON document with the timings block removed.
    pub fn stable_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("certificate serializes");
        v.as_object_mut().expect("object").remove("timings");
        serde_json::to_string_pretty(&v).expect("value serializes")
    }
}

fn geometry_error_check(name: &str, e: &GeometryError) -> Check {
    Check::predicate(name, "suite completes", e.to_string(), false, Provenance::Invented, "invented")
}

fn timed(timings: &mut BTreeMap<String, u64>, key: &str, f: impl FnOnce() -> Vec<Check>) -> Vec<Check> {
    let start = Instant::now();
    let out = f();
    timings.insert(key.to_string(), start.elapsed().as_millis() as u64);
    out
}

fn run_checks(config: &SuiteConfig, timings: &mut BTreeMap<String, u64>) -> Vec<Check> {
    let parts: &[Suite] = match config.suite {
        Suite::All => &[Suite::Lattice, Suite::Mukai, Suite::Hilbert, Suite::Scroll, Suite::Geometry],
        ref s => std::slice::from_ref(s),
    };
    let mut checks = Vec::new();
    for part in parts {
        match part {
            Suite::Lattice => checks.extend(timed(timings, "lattice", lattice_suite)),
            Suite::Mukai => checks.extend(timed(timings, "mukai", || mukai_suite(config.seed))),
            Suite::Hilbert => checks.extend(timed(timings, "hilbert", hilbert_suite)),
            Suite::Scroll => checks.extend(timed(timings, "scroll", scroll_suite)),
            Suite::Geometry => {
                checks.extend(timed(timings, "geometry_sampling", || {
                    geometry_sampling_suite(config.sampling_prime(), config.seed, config.retries)
                        .unwrap_or_else(|e| vec![geometry_error_check("geometry_sampling", &e)])
                }));
                checks.extend(timed(timings, "residuation", || {
                    residuation_suite(config.enumeration_prime(), config.seed, config.retries)
                        .unwrap_or_else(|e| vec![geometry_error_check("residuation", &e)])
                }));
            }
            Suite::All => unreachable!(),
        }
    }
    checks
}

/// Runs the configured suites on a pool of `config.threads` workers.
pub fn run(config: &SuiteConfig) -> Result<Certificate, ConfigError> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| ConfigError::ThreadPool(e.to_string()))?;
    let geometric = matches!(config.suite, Suite::Geometry | Suite::All);
    let mut timings = BTreeMap::new();
    let checks = pool.install(|| run_checks(config, &mut timings));
    Ok(Certificate {
        suite: config.suite.name().to_string(),
        tool_version: TOOL_VERSION.to_string(),
        config: ConfigEcho {
            suite: config.suite,
            seed: config.seed,
            retries: config.retries,
            sampling_prime: geometric.then(|| config.sampling_prime()),
            enumeration_prime: geometric.then(|| config.enumeration_prime()),
        },
        checks,
        timings,
    })
}

/// One line per check: status, name, expected vs actual, anchor.
pub fn render(cert: &Certificate) -> String {
    let mut out = format!("suite {} (verifier {})\n", cert.suite, cert.tool_version);
    for c in &cert.checks {
        out.push_str(&format!(
            "{}  {}: expected {} | actual {} [{}]\n",
            c.status.label(),
            c.name,
            c.expected,
            c.actual,
            c.paper_ref
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use verifier_core::certificate::Status;

    fn cert(checks: Vec<Check>) -> Certificate {
        Certificate {
            suite: "lattice".into(),
            tool_version: TOOL_VERSION.into(),
            config: ConfigEcho {
                suite: Suite::Lattice,
                seed: 0,
                retries: 5,
                sampling_prime: None,
                enumeration_prime: None,
            },
            checks,
            timings: BTreeMap::new(),
        }
    }

    #[test]
    fn render_empty_is_header_only() {
        assert_eq!(render(&cert(vec![])).lines().count(), 1);
    }

    #[test]
    fn render_pass_and_flag() {
        let c = cert(vec![
            Check::predicate("a", "1", "1", true, Provenance::Trivial, "invented"),
            Check::flagged("b", "1", "2", Provenance::Derived, "invented"),
        ]);
        let text = render(&c);
        let lines: Vec<&str> = text.lines().skip(1).collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with("PASS"));
        assert!(lines[1].starts_with("FLAG"));
        assert_eq!(c.exit_code(), 0);
    }

    #[test]
    fn fail_sets_exit_code_but_not_render() {
        let ok = Check::predicate("a", "1", "1", true, Provenance::Trivial, "invented");
        let bad = Check::predicate("b", "1", "2", false, Provenance::Trivial, "invented");
        let c = cert(vec![ok.clone(), bad]);
        assert_eq!(c.exit_code(), 1);
        assert!(render(&c).lines().nth(2).unwrap().starts_with("FAIL"));
        assert_eq!(c.checks[1].status, Status::Fail);
    }

    #[test]
    fn config_errors() {
        assert_eq!("nope".parse::<Suite>(), Err(ConfigError::UnknownSuite("nope".into())));
        let mut c = SuiteConfig::new(Suite::Geometry);
        c.prime = Some(6);
        assert_eq!(run(&c), Err(ConfigError::CompositePrime(6)));
        c.prime = Some(7);
        assert_eq!(run(&c), Err(ConfigError::PrimeTooSmall(7)));
    }

    #[test]
    fn enumeration_prime_choice() {
        let mut c = SuiteConfig::new(Suite::Geometry);
        assert_eq!((c.sampling_prime(), c.enumeration_prime()), (10007, 31));
        c.prime = Some(37);
        assert_eq!((c.sampling_prime(), c.enumeration_prime()), (37, 37));
        c.prime = Some(101);
        assert_eq!((c.sampling_prime(), c.enumeration_prime()), (101, 31));
    }

    #[test]
    fn json_keys_are_snake_case() {
        let v: serde_json::Value = serde_json::from_str(&run(&SuiteConfig::new(Suite::Hilbert)).unwrap().to_json()).unwrap();
        for key in ["suite", "tool_version", "config", "checks", "timings"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["checks"][0]["status"], "pass");
        assert!(v["checks"][0].get("paper_ref").is_some());
    }
}
