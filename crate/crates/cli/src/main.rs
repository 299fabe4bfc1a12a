use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use partree::spectral::{
    count_unit_modulus, eigenvalues_dense_oracle, match_spectra, spectral_measure, ultimate_rank, Complex64,
};
use partree::statistics::{
    convergence_experiment, sample_batch, verify_suite, write_convergence_csv, ExperimentConfig,
    DEFAULT_EXHAUSTIVE_CAP,
};
use partree::tree_action::action_matrix;
use partree::wreath::{
    count_elements, enumerate_with_cap, Sampler, SamplingMode, WreathElement, DEFAULT_ENUMERATION_CAP,
    DEFAULT_EXACT_SAMPLING_CAP,
};
use serde_json::{json, Value};

/// Largest level `count` prints without `--max-n`.
const COUNT_CAP: u32 = 20;

#[derive(Parser, Debug)]
#[command(name = "partree", version, about = "Partial automorphisms of the binary rooted tree")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the number of elements of level n.
    Count {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = COUNT_CAP)]
        max_n: u32,
    },
    /// List every element of level n in canonical order.
    Enumerate {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Override the enumeration cap.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw uniformly random elements.
    Sample {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        count: u64,
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Action matrix and spectrum of a single element.
    Spectrum {
        #[command(flatten)]
        source: ElementSource,
        #[arg(long, value_enum, default_value_t = SpectrumMode::Exact)]
        mode: SpectrumMode,
        /// Include the full 0/1 matrix and the explicit eigenvalue list.
        #[arg(long)]
        dense: bool,
        /// Include the explicit eigenvalue list.
        #[arg(long)]
        eigenvalues: bool,
    },
    /// Check the counting and rank identities exhaustively; exits nonzero on failure.
    Verify {
        #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_CAP)]
        n_cap: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo decay of the spectral measure towards the point mass at zero.
    Converge {
        #[arg(long)]
        n_min: u32,
        #[arg(long)]
        n_max: u32,
        #[arg(long)]
        samples: u64,
        #[command(flatten)]
        seed: SeedArgs,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args, Debug)]
struct SeedArgs {
    #[arg(long, default_value_t = 0, conflicts_with = "entropy")]
    seed: u64,
    /// Draw the seed from system entropy (it is still reported).
    #[arg(long)]
    entropy: bool,
}

impl SeedArgs {
    fn resolve(&self) -> u64 {
        if self.entropy {
            rand::random()
        } else {
            self.seed
        }
    }
}

#[derive(clap::Args, Debug)]
struct SamplingArgs {
    /// Worker threads; results do not depend on this value.
    #[arg(long)]
    workers: Option<usize>,
    /// Use floating-point label weights, allowing levels above the exact cap.
    #[arg(long)]
    approximate: bool,
    #[arg(long, default_value_t = DEFAULT_EXACT_SAMPLING_CAP)]
    exact_cap: u32,
}

impl SamplingArgs {
    fn mode(&self) -> SamplingMode {
        if self.approximate {
            eprintln!("warning: approximate sampling is not exactly uniform");
            SamplingMode::Approximate
        } else {
            SamplingMode::Exact
        }
    }
}

#[derive(clap::Args, Debug)]
struct ElementSource {
    /// Element in the JSON element format.
    #[arg(long, required_unless_present = "file", conflicts_with = "file")]
    element: Option<String>,
    /// File holding an element in the JSON element format.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Level of the element, needed only when its top label is empty.
    #[arg(long)]
    n: Option<u32>,
}

impl ElementSource {
    fn load(&self) -> anyhow::Result<WreathElement> {
        let text = match (&self.element, &self.file) {
            (Some(inline), _) => inline.clone(),
            (None, Some(path)) => std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?,
            (None, None) => bail!("one of --element or --file is required"),
        };
        Ok(WreathElement::from_json_str(&text, self.n)?)
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum SpectrumMode {
    Exact,
    Oracle,
}

fn open_output(out: &Option<PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn csv_quote(field: &str) -> String {
    format!("\"{}\"", field.replace('"', "\"\""))
}

/// `[re, im]` rounded to 12 decimals, with negative zero cleared.
fn complex_pair(z: Complex64) -> Value {
    let clean = |v: f64| {
        let r = (v * 1e12).round() / 1e12;
        if r == 0.0 {
            0.0
        } else {
            r
        }
    };
    json!([clean(z.re), clean(z.im)])
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Count { n, max_n } => {
            if n == 0 {
                bail!("level must be at least 1");
            }
            if n > max_n {
                bail!("count at level {n} refused: cap is {max_n} (raise it with --max-n)");
            }
            println!("{}", count_elements(n));
        }
        Command::Enumerate { n, format, cap, out } => {
            let elements = enumerate_with_cap(n, cap)?;
            let mut w = open_output(&out)?;
            match format {
                Format::Json => {
                    for x in elements {
                        writeln!(w, "{x}")?;
                    }
                }
                Format::Csv => {
                    writeln!(w, "index,rank,ultimate_rank,element")?;
                    for (i, x) in elements.enumerate() {
                        writeln!(w, "{},{},{},{}", i, x.rank_leaf(), ultimate_rank(&x), csv_quote(&x.to_json_string()))?;
                    }
                }
            }
            w.flush()?;
        }
        Command::Sample { n, count, seed, format, sampling, out } => {
            let seed = seed.resolve();
            let sampler = Sampler::new(n, sampling.mode(), sampling.exact_cap)?;
            let elements = sample_batch(&sampler, n, count, seed, sampling.workers)?;
            let mut w = open_output(&out)?;
            match format {
                Format::Json => {
                    let doc = json!({ "n": n, "seed": seed, "count": count, "elements": elements });
                    writeln!(w, "{doc}")?;
                }
                Format::Csv => {
                    eprintln!("sample n={n} count={count} seed={seed}");
                    writeln!(w, "index,element")?;
                    for (i, x) in elements.iter().enumerate() {
                        writeln!(w, "{},{}", i, csv_quote(&x.to_json_string()))?;
                    }
                }
            }
            w.flush()?;
        }
        Command::Spectrum { source, mode, dense, eigenvalues } => {
            let x = source.load()?;
            let matrix = action_matrix(&x);
            let measure = spectral_measure(&x);
            let mut doc = json!({
                "n": x.level(),
                "element": x,
                "rank": x.rank_leaf(),
                "ultimate_rank": measure.ultimate_rank(),
                "matrix": matrix,
                "spectrum": measure,
            });
            if dense {
                doc["dense"] = matrix
                    .to_dense()
                    .iter()
                    .map(|row| row.iter().map(u8::to_string).collect::<Vec<_>>().join(" "))
                    .collect();
            }
            if dense || eigenvalues {
                doc["eigenvalues"] = measure.eigenvalues().into_iter().map(complex_pair).collect();
            }
            if mode == SpectrumMode::Oracle {
                let numeric = eigenvalues_dense_oracle(&x)?;
                doc["oracle"] = json!({
                    "eigenvalues": numeric.iter().copied().map(complex_pair).collect::<Vec<_>>(),
                    "unit_modulus_count": count_unit_modulus(&numeric),
                    "max_deviation": match_spectra(&measure.eigenvalues(), &numeric),
                });
            }
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
        Command::Verify { n_cap, out } => {
            let report = verify_suite(n_cap)?;
            let mut w = open_output(&out)?;
            writeln!(w, "{}", serde_json::to_string_pretty(&report)?)?;
            w.flush()?;
            for c in report.claims.iter().filter(|c| !c.pass) {
                eprintln!("FAILED {}: expected {}, computed {}", c.claim, c.expected, c.computed);
            }
            if !report.all_passed {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Converge { n_min, n_max, samples, seed, sampling, format, out } => {
            let seed = seed.resolve();
            eprintln!("converge n={n_min}..={n_max} samples={samples} seed={seed}");
            let config = ExperimentConfig {
                workers: sampling.workers,
                mode: sampling.mode(),
                exact_cap: sampling.exact_cap,
                ..ExperimentConfig::new(n_min, n_max, samples, seed)
            };
            let rows = convergence_experiment(&config)?;
            let mut w = open_output(&out)?;
            match format {
                Format::Csv => write_convergence_csv(&rows, &mut w)?,
                Format::Json => {
                    let doc = json!({ "seed": seed, "samples": samples, "rows": rows });
                    writeln!(w, "{doc}")?;
                }
            }
            w.flush()?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
