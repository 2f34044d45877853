use std::io::Read;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hsing_core::mpoly::{identifiers, DEFAULT_PRECISION};
use hsing_core::{parse_poly, FieldSpec, Frame, Poly};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "hsing", version, about = "Local invariants of hypersurface singularities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Multiplicity of f at the origin.
    Order(Input),
    /// Lowest-degree homogeneous part of f.
    InitialForm(Input),
    /// Directrix and ridge of the tangent cone.
    Directrix(Input),
    /// Hironaka polyhedron of f in the frame.
    Polyhedron(Input),
    /// δ of the polyhedron after dissolving solvable vertices.
    Delta(Input),
    /// The full preparation trace.
    Prepare(Input),
    /// ν̄ of a parameter.
    Nubar(NubarArgs),
    /// Samuel slope.
    Slope(Input),
    /// Refined Samuel slope, realized by a generic linear cut.
    RefinedSlope(Input),
    /// Hord, with the elimination order in characteristic 0.
    Hord(Input),
    /// ν̄-lin of a linear cut, or a certified generic cut.
    Cut(CutArgs),
    /// Runs the built-in corpus and compares against expected slopes.
    Suite(Common),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Q, Fp:<p> (or F<p>), Fq:<p>^<e>, Fpt:<p>.
    #[arg(long, default_value = "Q")]
    pub field: String,
    /// Truncation degree for series computations.
    #[arg(long, env = "HSING_PRECISION", default_value_t = DEFAULT_PRECISION)]
    pub precision: u32,
    /// Seed for every random choice.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct Input {
    #[command(flatten)]
    pub common: Common,
    /// "u1,u2|y1,y2", a plain list, or "auto". Frames without `|` are
    /// normalized so that the y-block carries the directrix.
    #[arg(long, default_value = "auto")]
    pub vars: String,
    /// Polynomial text; read from stdin when absent or `-`.
    pub poly: Option<String>,
    /// Read the polynomial from a file.
    #[arg(long, conflicts_with = "poly")]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NubarMethod {
    Hickel,
    Resultant,
    LowerBound,
}

#[derive(Debug, Clone, Args)]
pub struct NubarArgs {
    #[command(flatten)]
    pub input: Input,
    /// The parameter; defaults to the single y-variable.
    #[arg(long)]
    pub theta: Option<String>,
    #[arg(long, value_enum, default_value_t = NubarMethod::Hickel)]
    pub method: NubarMethod,
}

#[derive(Debug, Clone, Args)]
pub struct CutArgs {
    #[command(flatten)]
    pub input: Input,
    /// Comma-separated coefficients a_2..a_r of the cut y_j = a_j y_1.
    /// Without it a generic cut is searched for.
    #[arg(long)]
    pub point: Option<String>,
    /// Attempts per field before escalating.
    #[arg(long, default_value_t = hsing_core::cuts::ATTEMPTS_PER_FIELD)]
    pub attempts: usize,
}

/// What the report echoes back about the request.
#[derive(Debug, Clone, Serialize)]
pub struct Echo {
    pub field: String,
    pub vars: String,
    pub precision: u32,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<String>,
}

impl Input {
    pub fn text(&self) -> Result<String> {
        if let Some(path) = &self.file {
            return std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()));
        }
        match self.poly.as_deref() {
            Some(t) if t != "-" => Ok(t.to_string()),
            _ => {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
                Ok(s)
            }
        }
    }

    pub fn echo(&self, text: Option<&str>) -> Echo {
        Echo {
            field: self.common.field.clone(),
            vars: self.vars.clone(),
            precision: self.common.precision,
            seed: self.common.seed,
            polynomial: text.map(|t| t.trim().to_string()),
        }
    }
}

/// A parsed polynomial with its frame.
pub struct Parsed {
    pub f: Poly,
    pub frame: Frame,
}

pub fn parse_input(input: &Input, text: &str) -> hsing_core::Result<Parsed> {
    let field: FieldSpec = input.common.field.parse()?;
    let frame = if input.vars.trim() == "auto" {
        Frame::parse(&identifiers(text, &field)?.join(","))?
    } else {
        Frame::parse(&input.vars)?
    };
    let frame = frame.with_precision(input.common.precision);
    let f = parse_poly(text, frame.names(), &field)?;
    Ok(Parsed { f, frame })
}

/// Parses an expression that may only use frame variables.
pub fn parse_in(text: &str, frame: &Frame, field: &FieldSpec) -> hsing_core::Result<Poly> {
    parse_poly(text, frame.names(), field)
}
