//! Run configuration and its command-line syntax.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

/// The operation a run performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Volume,
    Section,
    ConeVolume,
    BallBody,
    IntersectionBody,
    CiBody,
    Check,
    Experiment,
    Corpus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Everything a run depends on. It is echoed into every report, so two runs
/// with equal configs produce equal report bodies.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    /// Check or experiment name.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Builtin body name or path to a JSON body spec.
    pub body: String,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    pub dirs: usize,
    pub trials: usize,
    pub seed: u64,
    /// Stopping tolerance of the CI minimization.
    pub tol: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cone: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offset: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corpus: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub only: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    pub format: Format,
    pub jobs: usize,
}

impl RunConfig {
    /// Defaults: simplex in dimension 3, 20 directions, 10 trials, seed 1,
    /// tolerance `1e-8`, one job.
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            name: None,
            body: "simplex".into(),
            n: 3,
            k: None,
            p: None,
            l: None,
            dirs: 20,
            trials: 10,
            seed: 1,
            tol: 1e-8,
            points: None,
            samples: None,
            cone: None,
            kind: None,
            offset: None,
            corpus: None,
            only: Vec::new(),
            output: None,
            format: Format::Json,
            jobs: 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "conesec", version, about = "Sections of convex bodies by subspaces and cones")]
pub struct Cli {
    /// Write the report here instead of standard output.
    #[arg(long = "out", global = true)]
    pub out: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Worker threads for batch runs.
    #[arg(long, default_value_t = 1, global = true)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Debug, Args)]
pub struct BodyArgs {
    /// simplex, cube, cross, ball, pyramid, random, or a JSON file.
    #[arg(long, default_value = "simplex")]
    pub body: String,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Number of random points for `--body random` (default 2n+4).
    #[arg(long)]
    pub points: Option<usize>,
}

#[derive(Debug, Args)]
pub struct Params {
    /// Codimension of the flat.
    #[arg(long)]
    pub k: Option<usize>,
    /// Cone dimension or moment order.
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub l: Option<usize>,
    #[arg(long, default_value_t = 20)]
    pub dirs: usize,
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Cone spec JSON file.
    #[arg(long)]
    pub cone: Option<String>,
    /// ray, orthant or simplicial.
    #[arg(long)]
    pub kind: Option<String>,
    /// Offset of the section, comma separated, in flat-normal coordinates.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub offset: Option<Vec<f64>>,
    /// Monte Carlo samples.
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Exact volume and centroid, optionally with a Monte Carlo estimate.
    Volume(Plain),
    /// Volume of a section by a seeded or given flat.
    Section(Plain),
    /// |K ∩ (F + C)| by both routes.
    ConeVolume(Plain),
    /// Radial function of L_p(f) for a section function f.
    BallBody(Plain),
    /// Radial function of the intersection body.
    IntersectionBody(Plain),
    /// Convex intersection body next to the intersection body.
    CiBody(Plain),
    /// Run one named check.
    Check(Named),
    /// Run one named experiment.
    Experiment(Named),
    /// Run the check suite over a corpus manifest.
    Corpus(CorpusArgs),
}

#[derive(Debug, Args)]
pub struct Plain {
    #[command(flatten)]
    pub body: BodyArgs,
    #[command(flatten)]
    pub params: Params,
}

#[derive(Debug, Args)]
pub struct Named {
    pub name: String,
    #[command(flatten)]
    pub body: BodyArgs,
    #[command(flatten)]
    pub params: Params,
}

#[derive(Debug, Args)]
pub struct CorpusArgs {
    /// Manifest path; defaults to $CONESEC_CORPUS, then the built-in corpus.
    #[arg(long)]
    pub corpus: Option<String>,
    /// Comma separated check groups.
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<String>,
}

impl Cli {
    pub fn into_config(self) -> RunConfig {
        let (command, name, body, params) = match self.command {
            Sub::Volume(a) => (Command::Volume, None, Some(a.body), Some(a.params)),
            Sub::Section(a) => (Command::Section, None, Some(a.body), Some(a.params)),
            Sub::ConeVolume(a) => (Command::ConeVolume, None, Some(a.body), Some(a.params)),
            Sub::BallBody(a) => (Command::BallBody, None, Some(a.body), Some(a.params)),
            Sub::IntersectionBody(a) => (Command::IntersectionBody, None, Some(a.body), Some(a.params)),
            Sub::CiBody(a) => (Command::CiBody, None, Some(a.body), Some(a.params)),
            Sub::Check(a) => (Command::Check, Some(a.name), Some(a.body), Some(a.params)),
            Sub::Experiment(a) => (Command::Experiment, Some(a.name), Some(a.body), Some(a.params)),
            Sub::Corpus(a) => {
                let mut cfg = RunConfig::new(Command::Corpus);
                cfg.corpus = a.corpus;
                cfg.only = a.only;
                return finish(cfg, self.out, self.format, self.jobs);
            }
        };
        let mut cfg = RunConfig::new(command);
        cfg.name = name;
        if let Some(b) = body {
            cfg.body = b.body;
            cfg.n = b.n;
            cfg.seed = b.seed;
            cfg.points = b.points;
        }
        if let Some(p) = params {
            cfg.k = p.k;
            cfg.p = p.p;
            cfg.l = p.l;
            cfg.dirs = p.dirs;
            cfg.trials = p.trials;
            cfg.tol = p.tol;
            cfg.cone = p.cone;
            cfg.kind = p.kind;
            cfg.offset = p.offset;
            cfg.samples = p.samples;
        }
        finish(cfg, self.out, self.format, self.jobs)
    }
}

fn finish(mut cfg: RunConfig, out: Option<String>, format: Format, jobs: usize) -> RunConfig {
    cfg.output = out;
    cfg.format = format;
    cfg.jobs = jobs.max(1);
    cfg
}
