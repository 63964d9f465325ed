//! Pipeline driver: load a model, rank link vulnerabilities, synthesize a
//! minimal destabilizing perturbation, realize it, verify, and simulate.
//!
//! Exit codes: 1 malformed config or bad usage, 2 model not asymptotically
//! stable, 3 synthesis infeasible.

mod config;
mod output;
mod report;

use clap::{Parser, Subcommand, ValueEnum};
use netvuln::dsf;
use netvuln::hinf::StabilityVerdict;
use netvuln::netmodel::{validate_model, LinearModel};
use netvuln::perturb::{self, LinkCandidate, LinkPerturbation, PerturbMode};
use netvuln::ratfun::{parse_rational, TransferMatrix};
use netvuln::realize::{self, AugmentedRealization, InstabilityReport};
use netvuln::simulate;
use netvuln::Error;
use num::rational::BigRational;
use report::{fmt_complex, sig6};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_CONFIG: u8 = 1;
const EXIT_UNSTABLE: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;

#[derive(Parser)]
#[command(name = "netvuln", version, about = "Vulnerability analysis and destabilization of linear network models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Existing,
    Created,
}

impl From<Mode> for PerturbMode {
    fn from(m: Mode) -> PerturbMode {
        match m {
            Mode::Existing => PerturbMode::Existing,
            Mode::Created => PerturbMode::Created,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Svg,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Rank link vulnerabilities for a stable model.
    Analyze {
        config: PathBuf,
        #[arg(long, value_enum, default_value = "existing")]
        mode: Mode,
        /// Write the report here instead of printing a table.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Also write the loaded model back out in normalized (A, b) form.
        #[arg(long = "export-config")]
        export_config: Option<PathBuf>,
    },
    /// Synthesize and realize a minimal destabilizing perturbation.
    Destabilize {
        config: PathBuf,
        #[arg(long, value_enum, default_value = "existing")]
        mode: Mode,
        /// Target link as "i,j" (1-based source,target); default: top-ranked.
        #[arg(long)]
        link: Option<String>,
        /// Inflation factor above the small-gain threshold.
        #[arg(long, default_value = "0.001")]
        epsilon: String,
        /// Pole of the all-pass template (must be > 0).
        #[arg(long = "allpass-pole", default_value = "1")]
        allpass_pole: String,
        /// Output directory for report.json and augmented.csv.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Integrate the model (optionally with a perturbation applied).
    Simulate {
        config: PathBuf,
        /// Apply the synthesized perturbation before integrating.
        #[arg(long)]
        perturbed: bool,
        #[arg(long, value_enum, default_value = "existing")]
        mode: Mode,
        #[arg(long)]
        link: Option<String>,
        #[arg(long, default_value = "0.001")]
        epsilon: String,
        #[arg(long = "allpass-pole", default_value = "1")]
        allpass_pole: String,
        /// Initial state, comma-separated (default: all zeros).
        #[arg(long)]
        x0: Option<String>,
        #[arg(long = "t-final", default_value_t = 100.0)]
        t_final: f64,
        #[arg(long, default_value_t = 0.01)]
        dt: f64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Check that the realized perturbation removes stability.
    Verify {
        config: PathBuf,
        #[arg(long, value_enum, default_value = "existing")]
        mode: Mode,
        #[arg(long)]
        link: Option<String>,
        #[arg(long, default_value = "0.001")]
        epsilon: String,
        #[arg(long = "allpass-pole", default_value = "1")]
        allpass_pole: String,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn config(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_CONFIG,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match &e {
            Error::UnstableModel { .. } => EXIT_UNSTABLE,
            Error::SynthesisInfeasible { .. } => EXIT_INFEASIBLE,
            _ => EXIT_CONFIG,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn parse_exact(text: &str, what: &str) -> Result<BigRational, Failure> {
    parse_rational(text).ok_or_else(|| Failure::config(format!("invalid {what}: {text:?}")))
}

fn parse_link(text: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::config(format!("invalid --link {text:?}; expected \"i,j\" (1-based)"));
    let (i, j) = text.split_once(',').ok_or_else(bad)?;
    let i: usize = i.trim().parse().map_err(|_| bad())?;
    let j: usize = j.trim().parse().map_err(|_| bad())?;
    if i == 0 || j == 0 {
        return Err(bad());
    }
    Ok((i - 1, j - 1))
}

struct Pipeline {
    model: LinearModel,
    dsf: dsf::DsfPair,
    h: TransferMatrix,
    candidates: Vec<LinkCandidate>,
}

fn analyze_pipeline(config: &Path, mode: PerturbMode) -> Result<Pipeline, Failure> {
    let (_, model) = config::load(config).map_err(Failure::config)?;
    let pair = dsf::compute_dsf(&dsf::partition(&model)?)?;
    let h = dsf::h_matrix(&pair)?;
    let candidates = perturb::vulnerability_map(&h, &model, mode)?;
    Ok(Pipeline {
        model,
        dsf: pair,
        h,
        candidates,
    })
}

fn choose_candidate<'a>(
    pipe: &'a Pipeline,
    link: &Option<String>,
) -> Result<&'a LinkCandidate, Failure> {
    match link {
        None => pipe
            .candidates
            .first()
            .ok_or_else(|| Failure::config("no admissible links in this mode")),
        Some(text) => {
            let (i, j) = parse_link(text)?;
            pipe.candidates
                .iter()
                .find(|c| c.source_state == i && c.target_state == j)
                .ok_or_else(|| {
                    Failure::config(format!(
                        "link {},{} is not admissible in this mode",
                        i + 1,
                        j + 1
                    ))
                })
        }
    }
}

fn synthesize(
    pipe: &Pipeline,
    link: &Option<String>,
    epsilon: &str,
    allpass_pole: &str,
) -> Result<(LinkPerturbation, AugmentedRealization, InstabilityReport), Failure> {
    let cand = choose_candidate(pipe, link)?;
    let eps = parse_exact(epsilon, "--epsilon")?;
    let pole = parse_exact(allpass_pole, "--allpass-pole")?;
    let pert = perturb::synthesize_delta(
        cand,
        pipe.h.get(cand.source_pos, cand.target_pos),
        eps,
        pole,
        2,
    )?;
    let aug = realize::unwind(&pipe.model, &pipe.dsf, &pert)?;
    let rep = realize::verify_instability(&aug);
    Ok((pert, aug, rep))
}

fn stability_section(model: &LinearModel) -> Result<report::StabilitySection, Failure> {
    let diag = validate_model(model);
    if diag.verdict != StabilityVerdict::Stable {
        return Err(Failure {
            code: EXIT_UNSTABLE,
            message: format!("model is {}", diag.verdict),
        });
    }
    Ok(report::StabilitySection {
        verdict: diag.verdict.to_string(),
        spectrum: diag.spectrum.iter().map(|&z| fmt_complex(z)).collect(),
    })
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Existing => "existing",
        Mode::Created => "created",
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents)
        .map_err(|e| Failure::config(format!("cannot write {}: {e}", path.display())))
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Analyze {
            config,
            mode,
            out,
            format,
            export_config,
        } => {
            let pipe = analyze_pipeline(&config, mode.into())?;
            if let Some(path) = &export_config {
                let doc = config::export(&pipe.model);
                let mut text = serde_json::to_string_pretty(&doc).expect("config serializes");
                text.push('\n');
                write_file(path, &text)?;
            }
            let stability = stability_section(&pipe.model)?;
            let rows = report::vulnerability_rows(&pipe.candidates, pipe.model.labels());
            let rep = report::AnalysisReport {
                states: pipe.model.labels().to_vec(),
                exposed: pipe.dsf.exposed_labels.clone(),
                stability,
                mode: mode_name(mode).into(),
                vulnerabilities: rows,
                perturbation: None,
                augmented: None,
            };
            match out {
                Some(path) => {
                    if format != Format::Json {
                        return Err(Failure::config("analyze reports support --format json only"));
                    }
                    write_file(&path, &report::to_json(&rep))?;
                    println!("report written to {}", path.display());
                }
                None => report::print_table(&rep.vulnerabilities),
            }
            Ok(())
        }
        Command::Destabilize {
            config,
            mode,
            link,
            epsilon,
            allpass_pole,
            out,
        } => {
            let pipe = analyze_pipeline(&config, mode.into())?;
            let stability = stability_section(&pipe.model)?;
            let (pert, aug, rep) = synthesize(&pipe, &link, &epsilon, &allpass_pole)?;
            println!(
                "link ({}, {}): Delta(s) = {}",
                pert.source_state + 1,
                pert.target_state + 1,
                pert.entry
            );
            println!(
                "leading eigenvalue {} -> {}",
                fmt_complex(rep.leading_eigenvalue),
                rep.verdict
            );
            let full = report::AnalysisReport {
                states: pipe.model.labels().to_vec(),
                exposed: pipe.dsf.exposed_labels.clone(),
                stability,
                mode: mode_name(mode).into(),
                vulnerabilities: report::vulnerability_rows(&pipe.candidates, pipe.model.labels()),
                perturbation: Some(report::perturbation_section(&pert)),
                augmented: Some(report::augmented_section(&aug, &rep)),
            };
            std::fs::create_dir_all(&out)
                .map_err(|e| Failure::config(format!("cannot create {}: {e}", out.display())))?;
            let report_path = out.join("report.json");
            let csv_path = out.join("augmented.csv");
            write_file(&report_path, &report::to_json(&full))?;
            write_file(&csv_path, &output::augmented_csv(&aug))?;
            println!(
                "wrote {} and {}",
                report_path.display(),
                csv_path.display()
            );
            Ok(())
        }
        Command::Simulate {
            config,
            perturbed,
            mode,
            link,
            epsilon,
            allpass_pole,
            x0,
            t_final,
            dt,
            out,
            format,
        } => {
            let (a, b, labels) = if perturbed {
                let pipe = analyze_pipeline(&config, mode.into())?;
                stability_section(&pipe.model)?;
                let (_, aug, _) = synthesize(&pipe, &link, &epsilon, &allpass_pole)?;
                (aug.a_tilde, aug.b_tilde, aug.labels)
            } else {
                let (_, model) = config::load(&config).map_err(Failure::config)?;
                (model.a_f64(), model.b_f64(), model.labels().to_vec())
            };
            let dim = a.len();
            let mut state0 = match &x0 {
                None => vec![0.0; dim],
                Some(text) => {
                    let parsed: Result<Vec<f64>, _> =
                        text.split(',').map(|p| p.trim().parse::<f64>()).collect();
                    parsed.map_err(|_| Failure::config(format!("invalid --x0 {text:?}")))?
                }
            };
            // Convolution states appended by the perturbation start at zero.
            if state0.len() < dim {
                state0.resize(dim, 0.0);
            }
            let traj = simulate::simulate(&a, &b, &state0, t_final, dt, labels)?;
            if let Some(t) = traj.truncated_at {
                eprintln!("warning: state overflowed; trajectory truncated at t = {}", sig6(t));
            }
            let rendered = match format {
                Format::Csv => output::trajectory_csv(&traj),
                Format::Svg => output::trajectory_svg(&traj),
                Format::Json => return Err(Failure::config("simulate emits csv or svg")),
            };
            match out {
                Some(path) => {
                    write_file(&path, &rendered)?;
                    println!("trajectory written to {}", path.display());
                }
                None => print!("{rendered}"),
            }
            Ok(())
        }
        Command::Verify {
            config,
            mode,
            link,
            epsilon,
            allpass_pole,
        } => {
            let pipe = analyze_pipeline(&config, mode.into())?;
            stability_section(&pipe.model)?;
            let (pert, aug, rep) = synthesize(&pipe, &link, &epsilon, &allpass_pole)?;
            println!(
                "link ({}, {}), epsilon = {}",
                pert.source_state + 1,
                pert.target_state + 1,
                epsilon
            );
            println!("augmented spectrum:");
            for z in &rep.spectrum {
                println!("  {}", fmt_complex(*z));
            }
            println!("leading eigenvalue: {}", fmt_complex(rep.leading_eigenvalue));
            println!("verdict: {}", rep.verdict);
            let _ = aug;
            Ok(())
        }
    }
}
