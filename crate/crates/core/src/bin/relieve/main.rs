//! `relieve` command-line entry point.

mod args;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;
use serde_json::json;

use relieve_core::datamodel::{parse_dataset, SchemaHint};
use relieve_core::double::ProgressiveSchedule;
use relieve_core::evalharness::{criteria, curve_csv, cv_curve, CriteriaReport};
use relieve_core::probstats::EmpiricalPDM;
use relieve_core::redundancy::{redundancy_level, Optimum, RedundancyOptions, RedundancyResult};
use relieve_core::relief::DiffMetric;
use relieve_core::synthgen::{self, GroundTruth, Monk};
use relieve_core::weighting::{weigh, Algorithm, WeighParams};
use relieve_core::{Dataset, Error, FeatureWeights, Result};

use args::{Cli, Command, Generator, RedundancyArgs, WeighArgs};
use output::{emit, sidecar, to_json, write_atomic, RunManifest};

const CACHE_ENV: &str = "RELIEVE_CACHE_DIR";

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.quiet { "off" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("relieve: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io(_) => 3,
        Error::Internal(_) => 4,
        _ => 2,
    }
}

fn run(cli: &Cli) -> Result<()> {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Gen { generator } => cmd_gen(generator, cli.seed, out),
        Command::Weigh(a) => cmd_weigh(a, cli.seed, out),
        Command::Eval { weights, truth } => cmd_eval(weights, truth, cli.seed, out),
        Command::KnnCurve {
            data,
            weights,
            folds,
            schema,
        } => cmd_curve(data, weights, *folds, schema.as_deref(), cli.seed, out),
        Command::Redundancy(a) => cmd_redundancy(a, cli.seed, out),
    }
}

/// Resolves `uci:<name>` to `<cache>/<name>.csv`.
fn resolve_data(spec: &str) -> Result<PathBuf> {
    let Some(name) = spec.strip_prefix("uci:") else {
        return Ok(PathBuf::from(spec));
    };
    let dir = std::env::var_os(CACHE_ENV).ok_or_else(|| {
        Error::Usage(format!("`{spec}` needs {CACHE_ENV} pointing at fetched UCI data"))
    })?;
    let path = Path::new(&dir).join(format!("{name}.csv"));
    if !path.exists() {
        return Err(Error::Io(std::io::Error::new(
            std::io::ErrorKind::NotFound,
            format!("{} not found; run scripts/fetch_uci.sh first", path.display()),
        )));
    }
    Ok(path)
}

fn read_file(path: impl AsRef<Path>) -> Result<Vec<u8>> {
    let path = path.as_ref();
    std::fs::read(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

struct Loaded {
    data: Dataset,
    bytes: Vec<u8>,
}

fn load(spec: &str, schema: Option<&Path>) -> Result<Loaded> {
    let path = resolve_data(spec)?;
    let bytes = read_file(&path)?;
    let hint_path = match schema {
        Some(p) => Some(p.to_path_buf()),
        None => Some(sidecar(&path, "schema.json")).filter(|p| p.exists()),
    };
    let hint: Option<SchemaHint> = match hint_path {
        Some(p) => Some(serde_json::from_slice(&read_file(p)?)?),
        None => None,
    };
    let text = String::from_utf8(bytes.clone())
        .map_err(|e| Error::Parse { line: 0, message: format!("not UTF-8: {e}") })?;
    let name = path
        .file_stem()
        .map_or_else(|| "dataset".to_string(), |s| s.to_string_lossy().into_owned());
    let data = parse_dataset(&text, hint.as_ref())?.with_name(name);
    Ok(Loaded { data, bytes })
}

#[derive(Serialize)]
struct TruthFile<'a> {
    #[serde(flatten)]
    truth: &'a GroundTruth,
    manifest: RunManifest,
}

fn cmd_gen(g: &Generator, seed: u64, out: Option<&Path>) -> Result<()> {
    let out = out.ok_or_else(|| Error::Usage("gen needs --out <file.csv>".into()))?;
    let (name, params, (data, truth)) = match *g {
        Generator::Modulo {
            p,
            important,
            random,
            n,
        } => (
            "modulo",
            json!({"p": p, "important": important, "random": random, "n": n}),
            synthgen::gen_modulo(p, important, random, n, seed)?,
        ),
        Generator::Corral { n, exhaustive } => (
            "corral",
            json!({"n": n, "exhaustive": exhaustive}),
            match n {
                Some(n) if !exhaustive => synthgen::gen_corral(n, seed)?,
                _ => synthgen::corral_exhaustive()?,
            },
        ),
        Generator::Led {
            n,
            irrelevant,
            noise,
        } => (
            "led",
            json!({"n": n, "irrelevant": irrelevant, "noise": noise}),
            synthgen::gen_led(n, irrelevant, noise, seed)?,
        ),
        Generator::Monk {
            which,
            n,
            exhaustive,
            noise,
        } => {
            let monk = Monk::from_number(which)?;
            let noise = noise.unwrap_or(monk.default_noise());
            let generated = match n {
                Some(n) if !exhaustive => synthgen::gen_monk(monk, n, noise, seed)?,
                _ => synthgen::monk_exhaustive(monk, noise, seed)?,
            };
            (
                "monk",
                json!({"which": which, "n": n, "exhaustive": exhaustive, "noise": noise}),
                generated,
            )
        }
    };
    let csv = data.to_csv();
    let manifest = RunManifest::new(&format!("gen {name}"), params, csv.as_bytes(), seed);
    write_atomic(out, csv.as_bytes())?;
    write_atomic(
        &sidecar(out, "schema.json"),
        to_json(&data.schema_hint())?.as_bytes(),
    )?;
    write_atomic(
        &sidecar(out, "truth.json"),
        to_json(&TruthFile {
            truth: &truth,
            manifest,
        })?
        .as_bytes(),
    )?;
    log::info!("wrote {} instances to {}", data.n_instances(), out.display());
    Ok(())
}

#[derive(Serialize)]
struct WeightsFile<'a> {
    #[serde(flatten)]
    weights: &'a FeatureWeights,
    manifest: RunManifest,
}

fn cmd_weigh(a: &WeighArgs, seed: u64, out: Option<&Path>) -> Result<()> {
    let algorithm: Algorithm = a.algorithm.parse()?;
    let loaded = load(&a.data, a.schema.as_deref())?;
    let schedule = match a.t {
        Some(t) => ProgressiveSchedule::fixed(t)?,
        None => ProgressiveSchedule::auto(),
    };
    let params = WeighParams {
        k: a.k,
        m: a.m,
        seed,
        diff: if a.relief_d {
            DiffMetric::relief_d(a.laplace)
        } else {
            DiffMetric::heom()
        },
        schedule,
        positive: a.positive.clone(),
        class: a.class.clone(),
        vdm_classic: a.vdm_classic,
    };
    let w = weigh(&loaded.data, algorithm, &params)?;
    let manifest = RunManifest::new(
        "weigh",
        json!({"algorithm": algorithm.name(), "settings": serde_json::to_value(&params)?}),
        &loaded.bytes,
        seed,
    );
    emit(out, &to_json(&WeightsFile { weights: &w, manifest })?)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<(T, Vec<u8>)> {
    let bytes = read_file(path)?;
    Ok((serde_json::from_slice(&bytes)?, bytes))
}

#[derive(Serialize)]
struct CriteriaFile {
    #[serde(flatten)]
    report: CriteriaReport,
    manifest: RunManifest,
}

fn cmd_eval(weights: &Path, truth: &Path, seed: u64, out: Option<&Path>) -> Result<()> {
    if !truth.exists() {
        return Err(Error::Usage(format!("truth file {} does not exist", truth.display())));
    }
    let (w, mut bytes): (FeatureWeights, _) = read_json(weights)?;
    let (t, truth_bytes): (GroundTruth, _) = read_json(truth)?;
    bytes.extend(truth_bytes);
    let report = criteria(&w, &t)?;
    let manifest = RunManifest::new(
        "eval",
        json!({"weights": weights.display().to_string(), "truth": truth.display().to_string()}),
        &bytes,
        seed,
    );
    emit(out, &to_json(&CriteriaFile { report, manifest })?)
}

fn cmd_curve(
    data: &str,
    weights: &Path,
    folds: usize,
    schema: Option<&Path>,
    seed: u64,
    out: Option<&Path>,
) -> Result<()> {
    let loaded = load(data, schema)?;
    let (w, _): (FeatureWeights, _) = read_json(weights)?;
    let curve = cv_curve(&loaded.data, &w, folds, seed)?;
    emit(out, &curve_csv(&curve))?;
    if let Some(path) = out {
        let manifest = RunManifest::new(
            "knn-curve",
            json!({"folds": folds, "weights": weights.display().to_string()}),
            &loaded.bytes,
            seed,
        );
        write_atomic(&sidecar(path, "manifest.json"), to_json(&manifest)?.as_bytes())?;
    }
    Ok(())
}

#[derive(Serialize)]
struct RedundancyFile {
    #[serde(flatten)]
    result: RedundancyResult,
    manifest: RunManifest,
}

fn cmd_redundancy(a: &RedundancyArgs, seed: u64, out: Option<&Path>) -> Result<()> {
    let loaded = load(&a.data, a.schema.as_deref())?;
    let d = &loaded.data;
    let mut vars: Vec<&str> = d.feature_names().collect();
    vars.push(d.class_name());
    let pdm = EmpiricalPDM::from_dataset(d, &vars)?;
    let universe: Option<Vec<&str>> = a
        .universe
        .as_ref()
        .map(|u| u.iter().map(String::as_str).collect());
    let opts = RedundancyOptions {
        optimum: if a.as_printed {
            Optimum::AsPrinted
        } else {
            Optimum::Min
        },
        tolerance: a.tolerance,
        cap: a.cap,
        force: a.force,
    };
    let result = redundancy_level(&pdm, &a.feature, universe.as_deref(), &opts)?;
    let manifest = RunManifest::new(
        "redundancy",
        json!({"feature": a.feature, "universe": a.universe, "options": serde_json::to_value(opts)?}),
        &loaded.bytes,
        seed,
    );
    emit(out, &to_json(&RedundancyFile { result, manifest })?)
}
