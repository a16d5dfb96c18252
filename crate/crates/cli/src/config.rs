//! TOML run configuration and algebra construction.
//!
//! ```toml
//! suites = ["hopf_axioms", "ybe"]   # omit for every suite
//! output = "report.json"
//! stream_threshold = 100000
//! jobs = 4
//!
//! [algebra]
//! family = "group"                  # group | dual_group | truncated_poly | explicit
//! ring = "Q"                        # Q | Fp:<p>
//! orders = [2, 2]
//! ```
//!
//! `truncated_poly` takes `p`, `k`, `vars` and defaults `ring` to `Fp:<p>`.
//! `explicit` reads `mu.tensor`, `unit.tensor`, `delta.tensor`,
//! `counit.tensor` and `antipode.tensor` from `tables` (relative to the
//! config file) and checks the axioms at load time when `check_axioms` is set.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use bfl_core::hopf::{build_dual_group_algebra, build_group_algebra, build_truncated_polynomial};
use bfl_core::tensor::parse_tensor_text;
use bfl_core::{Family, HopfAlgebra, HopfParts, Ring};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    HopfAxioms,
    Integrals,
    Switchback,
    Tsd,
    Braiding,
    Ybe,
    Passcup,
    Frobenius,
    BraidedFrobenius,
    Twist,
    Tortile,
    Observational,
}

impl Suite {
    /// Every suite in execution order.
    pub const ALL: [Suite; 12] = [
        Suite::HopfAxioms,
        Suite::Integrals,
        Suite::Switchback,
        Suite::Tsd,
        Suite::Braiding,
        Suite::Ybe,
        Suite::Passcup,
        Suite::Frobenius,
        Suite::BraidedFrobenius,
        Suite::Twist,
        Suite::Tortile,
        Suite::Observational,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::HopfAxioms => "hopf_axioms",
            Suite::Integrals => "integrals",
            Suite::Switchback => "switchback",
            Suite::Tsd => "tsd",
            Suite::Braiding => "braiding",
            Suite::Ybe => "ybe",
            Suite::Passcup => "passcup",
            Suite::Frobenius => "frobenius",
            Suite::BraidedFrobenius => "braided_frobenius",
            Suite::Twist => "twist",
            Suite::Tortile => "tortile",
            Suite::Observational => "observational",
        }
    }

    /// Direct prerequisites.
    pub fn requires(self) -> &'static [Suite] {
        match self {
            Suite::HopfAxioms => &[],
            Suite::Integrals | Suite::Tsd => &[Suite::HopfAxioms],
            Suite::Switchback => &[Suite::Integrals],
            Suite::Braiding => &[Suite::Tsd],
            Suite::Ybe => &[Suite::Braiding],
            Suite::Passcup => &[Suite::Switchback, Suite::Braiding],
            Suite::Frobenius => &[Suite::Switchback],
            Suite::BraidedFrobenius => &[Suite::Frobenius, Suite::Braiding],
            Suite::Twist => &[Suite::Switchback, Suite::Braiding],
            Suite::Tortile => &[Suite::Twist],
            Suite::Observational => &[Suite::Switchback, Suite::Braiding],
        }
    }

    /// Prerequisites, transitively.
    pub fn ancestors(self) -> Vec<Suite> {
        let mut out: Vec<Suite> = Vec::new();
        let mut stack = self.requires().to_vec();
        while let Some(s) = stack.pop() {
            if !out.contains(&s) {
                out.push(s);
                stack.extend_from_slice(s.requires());
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orders: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vars: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tables: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check_axioms: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    pub algebra: AlgebraSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suites: Option<Vec<Suite>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stream_threshold: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jobs: Option<usize>,
}

impl SuiteConfig {
    pub fn parse(text: &str) -> CliResult<SuiteConfig> {
        let cfg: SuiteConfig = toml::from_str(text).map_err(|e| CliError::Config(format!("config: {e}")))?;
        if cfg.suites.as_ref().is_some_and(Vec::is_empty) {
            return Err(CliError::Config("config: at least one suite must be selected".into()));
        }
        if cfg.jobs == Some(0) {
            return Err(CliError::Config("config: jobs must be positive".into()));
        }
        Ok(cfg)
    }

    /// Selected suites, deduplicated, in execution order.
    pub fn selected(&self) -> Vec<Suite> {
        match &self.suites {
            None => Suite::ALL.to_vec(),
            Some(list) => Suite::ALL.into_iter().filter(|s| list.contains(s)).collect(),
        }
    }
}

/// A parsed config plus the directory relative paths resolve against.
#[derive(Debug, Clone)]
pub struct LoadedConfig {
    pub config: SuiteConfig,
    pub base: PathBuf,
}

impl LoadedConfig {
    pub fn load(path: &Path) -> CliResult<LoadedConfig> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Ok(LoadedConfig {
            config: SuiteConfig::parse(&text)?,
            base: path.parent().map(Path::to_path_buf).unwrap_or_default(),
        })
    }

    pub fn build_algebra(&self) -> CliResult<HopfAlgebra> {
        build_algebra(&self.config.algebra, &self.base)
    }
}

fn missing(family: &str, field: &str) -> CliError {
    CliError::Config(format!("config: family {family:?} requires `{field}`"))
}

fn parse_ring(spec: &AlgebraSpec) -> CliResult<Option<Ring>> {
    Ok(match &spec.ring {
        Some(r) => Some(r.parse::<Ring>()?),
        None => None,
    })
}

/// Builds the algebra a spec describes. Relative table paths resolve against `base`.
pub fn build_algebra(spec: &AlgebraSpec, base: &Path) -> CliResult<HopfAlgebra> {
    let ring = parse_ring(spec)?;
    let family = spec.family.as_str();
    let h = match family {
        "group" | "dual_group" => {
            let orders = spec.orders.as_ref().ok_or_else(|| missing(family, "orders"))?;
            let ring = ring.ok_or_else(|| missing(family, "ring"))?;
            if family == "group" {
                build_group_algebra(ring, orders)?
            } else {
                build_dual_group_algebra(ring, orders)?
            }
        }
        "truncated_poly" => {
            let p = spec.p.ok_or_else(|| missing(family, "p"))?;
            let k = spec.k.ok_or_else(|| missing(family, "k"))?;
            let vars = spec.vars.unwrap_or(1);
            let ring = match ring {
                Some(r) => r,
                None => Ring::prime_field(p)?,
            };
            build_truncated_polynomial(ring, p, k, vars)?
        }
        "explicit" => load_explicit(spec, ring.ok_or_else(|| missing(family, "ring"))?, base)?,
        other => {
            return Err(CliError::Config(format!(
                "config: unknown family {other:?}; expected group, dual_group, truncated_poly or explicit"
            )))
        }
    };
    if let Some(labels) = &spec.labels {
        if family != "explicit" {
            return Err(CliError::Config("config: `labels` only applies to explicit algebras".into()));
        }
        if labels.len() != h.n() {
            return Err(CliError::Config(format!("config: {} labels for rank {}", labels.len(), h.n())));
        }
    }
    Ok(h)
}

/// Names of the structure tables an explicit algebra is read from.
pub const TABLES: [(&str, usize, usize); 5] = [
    ("mu", 2, 1),
    ("unit", 0, 1),
    ("delta", 1, 2),
    ("counit", 1, 0),
    ("antipode", 1, 1),
];

fn load_explicit(spec: &AlgebraSpec, ring: Ring, base: &Path) -> CliResult<HopfAlgebra> {
    let dir = base.join(spec.tables.as_ref().ok_or_else(|| missing("explicit", "tables"))?);
    let mut maps = BTreeMap::new();
    for (name, a, b) in TABLES {
        let path = dir.join(format!("{name}.tensor"));
        let text = std::fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
        let shape = spec.rank.map(|n| (ring, n, a, b));
        let map = parse_tensor_text(&text, shape)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        if map.ring() != ring || map.in_arity() != a || map.out_arity() != b {
            return Err(CliError::Config(format!("{}: expected a {a} -> {b} map over {ring}", path.display())));
        }
        maps.insert(name, map);
    }
    let mut take = |name: &str| maps.remove(name).expect("every table was loaded");
    let parts = HopfParts {
        mu: take("mu"),
        unit: take("unit"),
        delta: take("delta"),
        counit: take("counit"),
        antipode: take("antipode"),
    };
    let n = parts.mu.n();
    let labels = spec
        .labels
        .clone()
        .unwrap_or_else(|| (0..n).map(|i| format!("b{i}")).collect());
    Ok(HopfAlgebra::from_parts(parts, labels, Family::Explicit, spec.check_axioms.unwrap_or(false))?)
}
