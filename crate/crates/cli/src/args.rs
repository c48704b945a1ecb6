//! Command-line flags and their translation into a [`RunConfig`].

use std::path::PathBuf;

use clap::{ArgAction, Args, Parser, Subcommand};
use tiltstab::rational::parse_rational;
use tiltstab::{parse_divisor_list, DivisorData, Geometry, NumericalClass, TiltPoint, Q};

use crate::config::{Command, OutputMode, PlotFamily, ReiderMode, RunConfig, Target};
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "tiltstab",
    version,
    about = "Exact tilt-stability walls, destabilizers and Reider-type checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Debug, Args)]
pub struct GeometryArgs {
    /// H^n, the top self-intersection of the polarization.
    #[arg(long)]
    pub hn: i64,
    #[arg(long, default_value_t = 2)]
    pub dim: u8,
    /// Pic(S) = ZH.
    #[arg(long, default_value_t = true, action = ArgAction::Set)]
    pub pic1: bool,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
    #[arg(long)]
    pub csv: bool,
    /// Print the equivalent batch config instead of running.
    #[arg(long)]
    pub print_config: bool,
}

impl OutputArgs {
    fn mode(&self) -> OutputMode {
        if self.json {
            OutputMode::Json
        } else if self.csv {
            OutputMode::Csv
        } else {
            OutputMode::Human
        }
    }
}

#[derive(Debug, Args)]
pub struct PointArgs {
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub s: Q,
    /// t² as a rational.
    #[arg(
        long = "t2",
        value_parser = parse_rational,
        required_unless_present = "t",
        conflicts_with = "t",
        allow_hyphen_values = true
    )]
    pub t2: Option<Q>,
    /// t as a rational; squared before use.
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub t: Option<Q>,
}

impl PointArgs {
    fn point(&self) -> Result<TiltPoint, CliError> {
        Ok(match (&self.t2, &self.t) {
            (Some(tau), _) => TiltPoint::new(self.s.clone(), tau.clone())?,
            (None, Some(t)) => TiltPoint::from_t(self.s.clone(), t.clone())?,
            (None, None) => unreachable!("clap requires --t2 or --t"),
        })
    }
}

#[derive(Debug, Args)]
pub struct Common {
    #[command(flatten)]
    pub geometry: GeometryArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Tilted rank, degree and slope of a class.
    Slope {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        class: NumericalClass,
        #[command(flatten)]
        point: PointArgs,
    },
    /// Central charge of a class.
    Charge {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        class: NumericalClass,
        #[command(flatten)]
        point: PointArgs,
    },
    /// Numerical wall between two classes.
    Wall {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        a: NumericalClass,
        #[arg(long, allow_hyphen_values = true)]
        b: NumericalClass,
    },
    /// Rank-one walls of (0, H, H²/2) on s = 1/2.
    Ladder {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        dmax: u32,
    },
    /// Numerical destabilizers of a target at a tilt point.
    Destab {
        #[command(flatten)]
        common: Common,
        /// `r,c1H,ch2H` or o_shift, l_ideal:d, ideal_dual_shift:d, thaddeus, line_bundle:k.
        #[arg(long, allow_hyphen_values = true)]
        target: Target,
        #[command(flatten)]
        point: PointArgs,
        #[arg(long)]
        rank_max: Option<u32>,
        #[arg(long)]
        include_shifted: bool,
        #[arg(long)]
        include_torsion: bool,
    },
    /// Reider-type vanishing criteria.
    Reider {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        d: u32,
        #[arg(long, value_enum, default_value = "classical")]
        mode: ReiderMode,
        /// Divisor classes known not to be effective: "cH,c2;cH,c2".
        #[arg(long, value_parser = parse_exclusions, allow_hyphen_values = true)]
        exclude: Option<Exclusions>,
    },
    /// SVG plot of wall families in the (s, t) strip.
    Plot {
        #[command(flatten)]
        common: Common,
        #[arg(long = "family", value_enum, default_values = ["thaddeus"])]
        families: Vec<PlotFamily>,
        #[arg(long, default_value_t = 0)]
        dmin: u32,
        #[arg(long)]
        dmax: u32,
        /// Output file; the SVG goes to stdout when absent.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Run a JSON batch config.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
}

/// A parsed `--exclude` list, kept whole so clap does not treat it as
/// repeated values.
#[derive(Clone, Debug)]
pub struct Exclusions(pub Vec<DivisorData>);

fn parse_exclusions(input: &str) -> Result<Exclusions, tiltstab::ParseError> {
    parse_divisor_list(input).map(Exclusions)
}

/// What the binary should do after parsing.
pub enum Action {
    Execute(RunConfig),
    PrintConfig(RunConfig),
}

impl Common {
    fn geometry(&self) -> Result<Geometry, CliError> {
        let g = &self.geometry;
        Ok(Geometry::new(g.hn, g.dim, g.pic1)?)
    }
}

pub fn resolve(sub: Sub) -> Result<Action, CliError> {
    let (common, command) = match sub {
        Sub::Run { config } => {
            let text = std::fs::read_to_string(&config).map_err(|source| CliError::Io {
                path: config.clone(),
                source,
            })?;
            return Ok(Action::Execute(RunConfig::from_json(&text)?));
        }
        Sub::Slope {
            common,
            class,
            point,
        } => {
            let point = point.point()?;
            (common, Command::Slope { class, point })
        }
        Sub::Charge {
            common,
            class,
            point,
        } => {
            let point = point.point()?;
            (common, Command::Charge { class, point })
        }
        Sub::Wall { common, a, b } => (common, Command::Wall { a, b }),
        Sub::Ladder { common, dmax } => (common, Command::Ladder { dmax }),
        Sub::Destab {
            common,
            target,
            point,
            rank_max,
            include_shifted,
            include_torsion,
        } => {
            let point = point.point()?;
            (
                common,
                Command::Destab {
                    target,
                    point,
                    rank_max,
                    include_shifted,
                    include_torsion,
                },
            )
        }
        Sub::Reider {
            common,
            d,
            mode,
            exclude,
        } => (
            common,
            Command::Reider {
                d,
                mode,
                exclude: exclude.map(|e| e.0).unwrap_or_default(),
            },
        ),
        Sub::Plot {
            common,
            families,
            dmin,
            dmax,
            svg,
        } => (
            common,
            Command::Plot {
                families,
                dmin,
                dmax,
                out: svg,
            },
        ),
    };
    let cfg = RunConfig {
        geometry: common.geometry()?,
        command,
        output: common.output.mode(),
    };
    Ok(if common.output.print_config {
        Action::PrintConfig(cfg)
    } else {
        Action::Execute(cfg)
    })
}
