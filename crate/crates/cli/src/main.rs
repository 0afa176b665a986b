use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use diffuse_core::ags::{read_group, read_set, serialize_group};
use diffuse_core::catalog::{classify_catalog, Catalog, ClassifyOptions};
use diffuse_core::holonomy::{bieberbach_holonomy, validate_with_bound, DEFAULT_MAX_ORDER};
use diffuse_core::hw::{hw_search, HwOutcome, DEFAULT_EXPLORE_BOUND};
use diffuse_core::witness::{ball, extremal_points, peel, verify_no_extremal_certificate, DEFAULT_BALL_CAP};
use diffuse_core::{decide, is_solvable, kernel_group, shortcut_verdict, sylow_all_cyclic, AffineElement, Error};

/// Diffuseness of Bieberbach groups given as AGS files.
#[derive(Parser)]
#[command(name = "diffuse", version)]
struct Cli {
    /// Print conjugators, reductions and certificates in full.
    #[arg(long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a file describes a Bieberbach group.
    Validate { file: PathBuf },
    /// Dimension, first Betti number and holonomy data.
    Info { file: PathBuf },
    /// Decide diffuseness and print the certificate chain.
    Decide { file: PathBuf },
    /// One Calabi reduction step; writes the kernel group.
    Reduce {
        file: PathBuf,
        /// Write the kernel here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a Hantzsche-Wendt subgroup.
    HwCheck {
        file: PathBuf,
        /// Offset instantiations tried per feasible relator system.
        #[arg(long, default_value_t = DEFAULT_EXPLORE_BOUND)]
        explore_bound: usize,
    },
    /// Check a set without extremal points; without a set, peel a ball instead.
    WitnessCheck {
        group: PathBuf,
        set: Option<PathBuf>,
        /// Ball radius used when no set is given.
        #[arg(long, default_value_t = 2)]
        radius: usize,
        /// Largest ball allowed.
        #[arg(long, default_value_t = DEFAULT_BALL_CAP)]
        max_size: usize,
    },
    /// Classify every group file below the given paths.
    Classify {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Add a column with the Hantzsche-Wendt search result.
        #[arg(long)]
        hw: bool,
        #[arg(long, default_value_t = DEFAULT_EXPLORE_BOUND)]
        explore_bound: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
    Table,
}

enum Failure {
    Validation(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) | Error::Linalg(_) => Failure::Internal(e.to_string()),
            _ => Failure::Validation(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn load(path: &Path) -> Result<diffuse_core::GroupSpec, Failure> {
    read_group(path).map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))
}

fn element_lines(label: &str, g: &AffineElement) -> String {
    g.to_string().lines().map(|row| format!("{label}={row}\n")).collect()
}

fn validate(file: &Path) -> Outcome {
    let spec = load(file)?;
    let (r, _) = validate_with_bound(&spec, DEFAULT_MAX_ORDER);
    let mut out = format!(
        "valid={}\nholonomy_finite={}\nholonomy_order={}\nlattice_standard={}\ntorsion_free={}\n",
        r.is_bieberbach(),
        r.holonomy_finite,
        r.holonomy_order,
        r.lattice_standard,
        r.torsion_free
    );
    for f in &r.failures {
        out.push_str(&format!("failure={f}\n"));
    }
    if r.is_bieberbach() {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Validation(r.failures.join("; ")))
    }
}

fn info(file: &Path) -> Outcome {
    let spec = load(file)?;
    let h = bieberbach_holonomy(&spec)?;
    let shortcut = match shortcut_verdict(&h) {
        diffuse_core::Shortcut::Diffuse => "diffuse",
        diffuse_core::Shortcut::NonDiffuse => "non-diffuse",
        diffuse_core::Shortcut::Inconclusive => "inconclusive",
    };
    Ok(format!(
        "name={}\ndimension={}\nbetti={}\nholonomy_order={}\nsolvable={}\nsylow_cyclic={}\nshortcut={shortcut}\n",
        spec.name().unwrap_or(""),
        spec.dimension(),
        h.fixed_space_rank(),
        h.order(),
        is_solvable(&h),
        sylow_all_cyclic(&h)
    ))
}

fn decide_cmd(file: &Path, verbose: bool) -> Outcome {
    let spec = load(file)?;
    let v = decide(&spec)?;
    let mut out = format!("verdict={}\nchain={}\n", v.outcome, v.chain);
    if verbose {
        for (i, r) in v.reductions.iter().enumerate() {
            out.push_str(&format!("reduction={}\nk={}\n", i + 1, r.k));
            out.push_str(&element_lines("conjugator", &r.q));
            for line in serialize_group(&r.kernel).lines() {
                out.push_str(&format!("kernel={line}\n"));
            }
        }
    }
    Ok(out)
}

fn reduce(file: &Path, out_path: Option<&Path>, verbose: bool) -> Outcome {
    let spec = load(file)?;
    let r = kernel_group(&spec)?;
    let kernel_text = serialize_group(&r.kernel);
    let mut out = format!("k={}\nkernel_dimension={}\nimage_rank={}\n", r.k, r.kernel.dimension(), r.image_rank);
    if verbose {
        out.push_str(&element_lines("conjugator", &r.q));
    }
    match out_path {
        Some(p) => {
            fs::write(p, kernel_text).map_err(|e| Failure::Validation(format!("{}: {e}", p.display())))?;
            out.push_str(&format!("kernel_file={}\n", p.display()));
        }
        None => out.push_str(&kernel_text),
    }
    Ok(out)
}

fn hw_check(file: &Path, explore_bound: usize, verbose: bool) -> Outcome {
    let spec = load(file)?;
    let report = hw_search(&spec, explore_bound)?;
    let mut out = format!("hw={}\ncandidate_pairs={}\n", report.label(), report.candidate_pairs);
    match &report.outcome {
        HwOutcome::Contained { alpha, beta, .. } => {
            out.push_str(&element_lines("alpha", alpha));
            out.push_str(&element_lines("beta", beta));
        }
        HwOutcome::NotContained { systems } => {
            out.push_str(&format!("infeasible_systems={}\n", systems.len()));
            if verbose {
                for s in systems {
                    out.push_str(&format!("witness={}\n", s.witness));
                }
            }
        }
        HwOutcome::Undetermined { feasible_but_unverified } => {
            out.push_str(&format!("feasible_but_unverified={feasible_but_unverified}\n"));
        }
    }
    Ok(out)
}

fn witness_check(group: &Path, set: Option<&Path>, radius: usize, max_size: usize) -> Outcome {
    let spec = load(group)?;
    bieberbach_holonomy(&spec)?;
    match set {
        Some(p) => {
            let set = read_set(p).map_err(|e| Failure::Validation(format!("{}: {e}", p.display())))?;
            let certificate = verify_no_extremal_certificate(&spec, &set)?;
            let extremal = if set.is_empty() { 0 } else { extremal_points(&set)?.len() };
            Ok(format!("set_size={}\nextremal_points={extremal}\ncertificate={certificate}\n", set.len()))
        }
        None => {
            let b = ball(&spec, radius, max_size)?;
            let rest = peel(&b);
            let certificate = !rest.is_empty() && verify_no_extremal_certificate(&spec, &rest)?;
            let mut out = format!("ball_size={}\npeeled_size={}\ncertificate={certificate}\n", b.len(), rest.len());
            if certificate {
                out.push_str(&diffuse_core::ags::serialize_set(&rest));
            }
            Ok(out)
        }
    }
}

fn classify(paths: &[PathBuf], jobs: usize, format: Format, hw: bool, explore_bound: usize) -> Outcome {
    let catalog = Catalog::load(paths)?;
    let options = ClassifyOptions { jobs, hw_explore_bound: hw.then_some(explore_bound) };
    let table = classify_catalog(&catalog, &options)?;
    let out = match format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
        Format::Table => table.summary_table(),
    };
    if table.invalid.is_empty() {
        Ok(out)
    } else {
        print!("{out}");
        let names: Vec<String> = table.invalid.iter().map(|i| format!("{}: {}", i.name, i.reason)).collect();
        Err(Failure::Validation(format!("invalid entries excluded: {}", names.join("; "))))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let v = cli.verbose;
    let result = match &cli.command {
        Command::Validate { file } => validate(file),
        Command::Info { file } => info(file),
        Command::Decide { file } => decide_cmd(file, v),
        Command::Reduce { file, out } => reduce(file, out.as_deref(), v),
        Command::HwCheck { file, explore_bound } => hw_check(file, *explore_bound, v),
        Command::WitnessCheck { group, set, radius, max_size } => {
            witness_check(group, set.as_deref(), *radius, *max_size)
        }
        Command::Classify { paths, jobs, format, hw, explore_bound } => {
            classify(paths, *jobs, *format, *hw, *explore_bound)
        }
    };
    match result {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(3);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}
