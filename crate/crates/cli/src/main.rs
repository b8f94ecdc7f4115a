use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use orthoinv::invariants::emit_generators;
use orthoinv::oracle::{graph_demo, invariance_sweep, random_point, separation_experiment, trial_rng, SWEEP_LIMIT};
use orthoinv::pipeline::{equivalent, fingerprint_form, PipelineConfig, DEFAULT_ATOL, DEFAULT_RTOL};
use orthoinv::text::{parse_form, write_form, AnyForm};
use orthoinv::{Error, InvariantVariant, ScalarMode, Shape, SliceBasis};

/// Rational O(n) invariants of even-degree forms.
#[derive(Parser, Debug)]
#[command(name = "orthoinv", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalOpts {
    /// Scalar route; by default exact whenever the input allows it.
    #[arg(long, global = true, value_enum)]
    mode: Option<Mode>,
    /// Invariant variant: repaired (default), paper-literal, paper-u, paper-d.
    #[arg(long, global = true, default_value = "repaired")]
    variant: InvariantVariant,
    #[arg(long, global = true, env = "ORTHOINV_ATOL", default_value_t = DEFAULT_ATOL)]
    atol: f64,
    #[arg(long, global = true, env = "ORTHOINV_RTOL", default_value_t = DEFAULT_RTOL)]
    rtol: f64,
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Suppress warnings and counts on stderr.
    #[arg(long, short, global = true)]
    quiet: bool,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fingerprint the form in a file.
    Fingerprint { file: PathBuf },
    /// Generic equivalence verdict for two forms.
    Equivalent { first: PathBuf, second: PathBuf },
    /// Slice basis in form-file format.
    Basis {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        degree: u32,
    },
    /// Generating invariants as polynomials in slice coordinates.
    Generators {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        degree: u32,
    },
    /// Brute-force invariance and separation checks over random points.
    Oracle {
        #[arg(long, required_unless_present = "graph_demo")]
        n: Option<usize>,
        #[arg(long, required_unless_present = "graph_demo")]
        degree: Option<u32>,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        /// Also run the two-graph demo (6 variables, degree 4, W1 block only).
        #[arg(long)]
        graph_demo: bool,
    },
}

impl GlobalOpts {
    fn pipeline(&self) -> Result<PipelineConfig> {
        for (name, v) in [("atol", self.atol), ("rtol", self.rtol)] {
            if !(v > 0.0 && v.is_finite()) {
                bail!(Error::Parse { line: 0, message: format!("{name} must be positive, got {v}") });
            }
        }
        Ok(PipelineConfig {
            mode: self.mode.map(|m| match m {
                Mode::Exact => ScalarMode::Exact,
                Mode::Float => ScalarMode::Float,
            }),
            variant: self.variant,
            atol: self.atol,
            rtol: self.rtol,
        })
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    fn emit_json(&self, doc: &Value) -> Result<()> {
        self.emit(&(serde_json::to_string_pretty(doc)? + "\n"))
    }

    fn note(&self, msg: &str) {
        if !self.quiet {
            eprintln!("{msg}");
        }
    }
}

fn read_form(path: &Path) -> Result<AnyForm> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_form(&text).with_context(|| format!("in {}", path.display()))
}

fn basis_text(shape: Shape) -> String {
    let basis = SliceBasis::cached(shape);
    let layout = basis.layout();
    let mut out = format!("# slice basis for {shape}: {} elements\n", basis.len());
    for (i, f) in basis.point_elements().iter().enumerate() {
        out += &write_form(f, &[format!("point {}", i + 1)]);
    }
    for ((i, j), f) in layout.pairs().iter().zip(basis.pair_elements()) {
        out += &write_form(f, &[format!("pair {},{}", i + 1, j + 1)]);
    }
    for (mu, f) in layout.mu_indices().iter().zip(basis.mu_elements()) {
        out += &write_form(f, &[format!("mu {mu}")]);
    }
    out
}

fn oracle(opts: &GlobalOpts, n: Option<usize>, degree: Option<u32>, trials: u64, demo: bool) -> Result<ExitCode> {
    let mut doc = json!({ "seed": opts.seed, "variant": opts.variant.tag() });
    let mut violations = 0usize;
    if let (Some(n), Some(degree)) = (n, degree) {
        let shape = Shape::new(n, degree)?;
        if n > SWEEP_LIMIT {
            bail!(Error::GroupTooLarge { n, limit: SWEEP_LIMIT });
        }
        let points: Vec<_> = (0..trials).map(|k| random_point(shape, &mut trial_rng(opts.seed, k))).collect();
        let invariance = invariance_sweep(&points, opts.variant, Some(opts.seed))?;
        let separation = separation_experiment(shape, trials, opts.seed, opts.variant)?;
        violations += invariance.violations.len() + separation.failures.len();
        opts.note(&format!(
            "{shape}: {} invariance pairs, {} violations; {} off-orbit pairs, {} distinguished, {} separation failures",
            invariance.pairs_checked,
            invariance.violations.len(),
            separation.off_orbit,
            separation.distinguished,
            separation.failures.len()
        ));
        if separation.flagged_points > 0 {
            opts.note(&format!(
                "warning: {} of {} sampled points are non-generic (singular blocks: {})",
                separation.flagged_points,
                2 * separation.trials,
                separation.singular_blocks.join(", ")
            ));
        }
        doc["n"] = json!(n);
        doc["degree"] = json!(degree);
        doc["trials"] = json!(trials);
        doc["invariance"] = serde_json::to_value(&invariance)?;
        doc["separation"] = serde_json::to_value(&separation)?;
    }
    if demo {
        let report = graph_demo()?;
        if !report.w1_values_equal || report.isomorphic {
            violations += 1;
        }
        opts.note(&report.summary);
        doc["graph_demo"] = serde_json::to_value(&report)?;
    }
    doc["violations"] = json!(violations);
    opts.emit_json(&doc)?;
    Ok(if violations == 0 { ExitCode::SUCCESS } else { ExitCode::from(4) })
}

fn run(cli: Cli) -> Result<ExitCode> {
    let opts = &cli.global;
    let config = opts.pipeline()?;
    match cli.command {
        Command::Fingerprint { file } => {
            let run = fingerprint_form(&read_form(&file)?, &config)?;
            for w in run.warnings() {
                opts.note(&format!("warning: {w}"));
            }
            opts.emit_json(&run.to_json())?;
        }
        Command::Equivalent { first, second } => {
            let eq = equivalent(&read_form(&first)?, &read_form(&second)?, &config)?;
            for w in eq.first.warnings().into_iter().chain(eq.second.warnings()) {
                opts.note(&format!("warning: {w}"));
            }
            opts.note(eq.verdict.as_str());
            opts.emit_json(&eq.to_json())?;
        }
        Command::Basis { n, degree } => {
            let shape = Shape::new(n, degree)?;
            opts.emit(&basis_text(shape))?;
            opts.note(&format!("{} basis elements", shape.slice_dim()));
        }
        Command::Generators { n, degree } => {
            let gens = emit_generators(Shape::new(n, degree)?, opts.variant);
            for flag in &gens.structural_flags {
                opts.note(&format!("warning: {flag}"));
            }
            opts.emit(&gens.to_text())?;
            opts.note(&gens.count_note());
        }
        Command::Oracle { n, degree, trials, graph_demo } => return oracle(opts, n, degree, trials, graph_demo),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            let guard = e.chain().any(|c| c.downcast_ref::<Error>().is_some_and(Error::is_guard));
            ExitCode::from(if guard { 3 } else { 2 })
        }
    }
}
