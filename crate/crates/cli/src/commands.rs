//! The `verify`, `diagram` and `export` commands.

use std::io::Write as _;
use std::path::{Path, PathBuf};

use bfl_core::diagram::{self, check_equation, Context, Evaluator, Expectation, Move, Pos};
use bfl_core::tensor::{set_stream_threshold, write_tensor_text, TensorMap};
use bfl_core::HopfAlgebra;
use serde::Serialize;

use crate::config::{AlgebraSpec, LoadedConfig, SuiteConfig};
use crate::error::{CliError, CliResult};
use crate::report::{sha256_hex, AlgebraFingerprint, CheckRecord, Report, Status};
use crate::suites::{run_suites, Structures};

const STREAM_ENV: &str = "BFL_STREAM_THRESHOLD";

/// The environment variable wins over the config value.
fn apply_threshold(config: &SuiteConfig) {
    if std::env::var_os(STREAM_ENV).is_none() {
        if let Some(t) = config.stream_threshold {
            set_stream_threshold(t);
        }
    }
}

fn thread_pool(jobs: Option<usize>) -> CliResult<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j);
    }
    builder.build().map_err(|e| CliError::Internal(e.to_string()))
}

/// Writes `contents` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, contents: &[u8]) -> CliResult<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    std::fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(|e| CliError::io(&dir, e))?;
    tmp.write_all(contents).map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

#[derive(Debug, Clone, Default)]
pub struct VerifyArgs {
    pub config: PathBuf,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
}

/// Runs every selected suite and writes the JSON report when an output path is known.
pub fn verify(args: &VerifyArgs) -> CliResult<Report> {
    let loaded = LoadedConfig::load(&args.config)?;
    let config = &loaded.config;
    apply_threshold(config);
    let h = loaded.build_algebra()?;
    let pool = thread_pool(args.jobs.or(config.jobs))?;
    let selected = config.selected();
    let structures = Structures::new(h);
    let records = run_suites(&structures, &selected, &pool);
    let report = Report::new(
        "verify",
        AlgebraFingerprint::of(&structures.h),
        selected.iter().map(|s| s.name().to_string()).collect(),
        records,
    );
    let out = args.out.clone().or_else(|| config.output.as_ref().map(|o| loaded.base.join(o)));
    if let Some(out) = out {
        write_atomic(&out, report.to_json().as_bytes())?;
    }
    Ok(report)
}

#[derive(Debug, Clone, Default)]
pub struct DiagramArgs {
    pub config: PathBuf,
    /// Move names; `all` selects every move.
    pub eq: Vec<String>,
    pub inline: Option<String>,
    pub moves: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

fn select_moves(args: &DiagramArgs) -> CliResult<Vec<Move>> {
    let mut known = match &args.moves {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            diagram::parse_equation_file(&text)?
        }
        None => Vec::new(),
    };
    for m in diagram::library() {
        if !known.iter().any(|k| k.name == m.name) {
            known.push(m);
        }
    }
    let mut chosen = Vec::new();
    if let Some(text) = &args.inline {
        let (lhs, rhs) = diagram::parse_equation(text, Pos { line: 1, column: 1 })?;
        chosen.push(Move {
            name: "inline".into(),
            lhs,
            rhs,
            expectation: Expectation::Asserted,
        });
    }
    for name in &args.eq {
        if name == "all" {
            chosen.extend(known.iter().cloned());
            continue;
        }
        let m = known
            .iter()
            .find(|m| &m.name == name)
            .ok_or_else(|| CliError::Config(format!("unknown move {name:?}")))?;
        chosen.push(m.clone());
    }
    if chosen.is_empty() {
        return Err(CliError::Config("give --eq NAME or --inline \"LHS == RHS\"".into()));
    }
    Ok(chosen)
}

/// Evaluates diagram equations against the algebra's structures.
pub fn diagram(args: &DiagramArgs) -> CliResult<Report> {
    let moves = select_moves(args)?;
    let loaded = LoadedConfig::load(&args.config)?;
    apply_threshold(&loaded.config);
    let structures = Structures::new(loaded.build_algebra()?);
    let f = structures.frobenius()?;
    let ctx = Context::from_frobenius(f, structures.twist().ok())?;
    let ev = Evaluator::new(ctx);
    let records = moves
        .iter()
        .map(|m| {
            let asserted = m.expectation == Expectation::Asserted;
            let start = std::time::Instant::now();
            let outcome = check_equation(&m.lhs, &m.rhs, &ev);
            let wall_time_ms = (start.elapsed().as_secs_f64() * 1e6).round() / 1e3;
            let mut record = CheckRecord {
                name: format!("diagram.{}", m.name),
                suite: "diagram".into(),
                status: Status::Error,
                asserted,
                wall_time_ms,
                dimensions: None,
                witnesses: None,
                detail: Some(format!("{} == {}", m.lhs, m.rhs)),
            };
            match outcome {
                Ok(o) => {
                    record.status = Status::from_outcome(asserted, o.equal);
                    let n = structures.h.n() as u64;
                    record.dimensions = Some(crate::report::Dimensions {
                        in_dim: n.pow(o.in_arity as u32),
                        out_dim: n.pow(o.out_arity as u32),
                        mode: "dense".into(),
                    });
                    if !o.equal {
                        record.witnesses = Some(o.witnesses.iter().map(Into::into).collect());
                    }
                }
                Err(e) => record.detail = Some(e.to_string()),
            }
            record
        })
        .collect();
    let report = Report::new("diagram", AlgebraFingerprint::of(&structures.h), vec!["diagram".into()], records);
    if let Some(out) = &args.out {
        write_atomic(out, report.to_json().as_bytes())?;
    }
    Ok(report)
}

#[derive(Serialize)]
struct Manifest<'a> {
    tool: &'static str,
    version: &'static str,
    source: &'a AlgebraFingerprint,
    files: std::collections::BTreeMap<String, String>,
}

/// Every file an export writes, rendered in memory.
pub fn export_files(h: &HopfAlgebra) -> CliResult<Vec<(String, String)>> {
    let s = Structures::new(h.clone());
    let (cc, pair) = s.cupcap()?;
    let b = s.braid()?;
    let t = s.twist()?;
    let maps: [(&str, &TensorMap); 12] = [
        ("mu", h.mu()),
        ("unit", h.unit()),
        ("delta", h.delta()),
        ("counit", h.counit()),
        ("antipode", h.antipode()),
        ("integral_element", &pair.element),
        ("integral_functional", &pair.functional),
        ("cup", &cc.cup),
        ("cap", &cc.cap),
        ("beta", &b.beta),
        ("theta", &t.theta),
        ("Theta", &t.big_theta),
    ];
    let mut files: Vec<(String, String)> = maps
        .iter()
        .map(|(name, map)| (format!("{name}.tensor"), write_tensor_text(map)))
        .collect();
    let config = SuiteConfig {
        algebra: AlgebraSpec {
            family: "explicit".into(),
            ring: Some(h.ring().to_string()),
            orders: None,
            p: None,
            k: None,
            vars: None,
            rank: Some(h.n()),
            tables: Some(PathBuf::from(".")),
            labels: Some(h.labels().to_vec()),
            check_axioms: Some(true),
        },
        suites: None,
        output: None,
        stream_threshold: None,
        jobs: None,
    };
    let toml = toml::to_string(&config).map_err(|e| CliError::Internal(e.to_string()))?;
    files.push(("algebra.toml".into(), toml));
    let fingerprint = AlgebraFingerprint::of(h);
    let manifest = Manifest {
        tool: crate::report::TOOL,
        version: crate::report::VERSION,
        source: &fingerprint,
        files: files.iter().map(|(n, c)| (n.clone(), sha256_hex(c.as_bytes()))).collect(),
    };
    let mut json = serde_json::to_string_pretty(&manifest).map_err(|e| CliError::Internal(e.to_string()))?;
    json.push('\n');
    files.push(("manifest.json".into(), json));
    Ok(files)
}

/// Writes the export into `out`, replacing it only once every file is on disk.
pub fn export(config: &Path, out: &Path) -> CliResult<Vec<PathBuf>> {
    let loaded = LoadedConfig::load(config)?;
    let h = loaded.build_algebra()?;
    let files = export_files(&h)?;
    let parent = match out.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    std::fs::create_dir_all(&parent).map_err(|e| CliError::io(&parent, e))?;
    let staging = tempfile::Builder::new()
        .prefix(".bfl-export-")
        .tempdir_in(&parent)
        .map_err(|e| CliError::io(&parent, e))?;
    for (name, contents) in &files {
        let path = staging.path().join(name);
        std::fs::write(&path, contents).map_err(|e| CliError::io(&path, e))?;
    }
    let graveyard = tempfile::Builder::new()
        .prefix(".bfl-old-")
        .tempdir_in(&parent)
        .map_err(|e| CliError::io(&parent, e))?;
    if out.exists() {
        let old = graveyard.path().join("previous");
        std::fs::rename(out, &old).map_err(|e| CliError::io(out, e))?;
    }
    let staged = staging.keep();
    std::fs::rename(&staged, out).map_err(|e| CliError::io(out, e))?;
    Ok(files.iter().map(|(n, _)| out.join(n)).collect())
}

/// Loads an algebra previously written by [`export`].
pub fn import(dir: &Path) -> CliResult<HopfAlgebra> {
    LoadedConfig::load(&dir.join("algebra.toml"))?.build_algebra()
}
